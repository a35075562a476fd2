#pragma once

#include <cstdint>
#include <vector>

#include "flowsched/network.hpp"
#include "flowsched/rng.hpp"
#include "flowsched/weights.hpp"

namespace flowsched {

using ActivationVector = std::vector<std::uint8_t>;  // by link, values in {0,1}

// Weights with the g* floor that keeps activation probabilities bounded away
// from degenerate values when queues are empty:
//   g*(t) = (eps / 4N^3) g(q_max),  g~(q) = max{g(q), g*},
//   w~^(d)_{ij} = g~(q_i^(d)) - g~(q_j^(d)).
struct ModifiedWeights {
  double g_star = 0.0;
  std::vector<double> w;                 // by link, max over carried destinations
  std::vector<DestId> best_dest;         // argmax destination per link
  std::vector<std::vector<double>> w_d;  // [dest_index][link]
};

ModifiedWeights modified_weights(const WeightFn& fn, const Network& net, const QueueView& q,
                                 double epsilon, Rng& rng);

// Logistic activation probability p = e^w / (1 + e^w), overflow-safe.
double activation_probability(double w_tilde);

// One single-site Glauber update: a uniformly chosen link re-randomizes if its
// conflict neighborhood was silent, everything else keeps its previous state.
ActivationVector basic_csma_step(Rng& rng, const ConflictGraph& graph,
                                 const ActivationVector& prev,
                                 const std::vector<double>& link_probs);

// Q-CSMA per-node protocol state.
struct CsmaNodeState {
  std::vector<std::uint8_t> as;   // in m(t) as sender
  std::vector<std::uint8_t> ar;   // in m(t) as receiver
  std::vector<int> id;            // paired peer, -1 when none
  std::vector<std::uint8_t> ns;   // sensed data activity last data slot
  std::vector<std::uint8_t> nr;   // sensed ACK activity last data slot

  explicit CsmaNodeState(int node_count = 0)
      : as(static_cast<std::size_t>(node_count), 0),
        ar(static_cast<std::size_t>(node_count), 0),
        id(static_cast<std::size_t>(node_count), -1),
        ns(static_cast<std::size_t>(node_count), 0),
        nr(static_cast<std::size_t>(node_count), 0) {}
};

// Raw coin flips of control mini-slot 1, drawn before any delivery logic so
// the outcome cannot depend on node processing order.
struct RtdDraws {
  std::vector<std::uint8_t> transmits;   // by node
  std::vector<int> target;               // chosen neighbor, -1 when silent
};

RtdDraws draw_rtd(Rng& rng, const Topology& topo, const std::vector<double>& beta);

// Pure function of the draws; `node_order` only permutes the iteration and
// must not change the result (asserted by a property test).
std::vector<LinkId> compute_decision_set(const Topology& topo, const RtdDraws& draws,
                                         const std::vector<int>& node_order);

// Algorithm-1 control slot: RTD/CTD exchange producing a conflict-free
// decision set m(t); updates AS/AR/ID memories.
std::vector<LinkId> decision_schedule(Rng& rng, const Topology& topo,
                                      const std::vector<double>& beta, CsmaNodeState& state);

// Algorithm-2 data slot: links in m(t) re-randomize when their conflict set
// was silent, judged only from (x_{ij}(t-1), NR_i(t-1), NS_j(t-1)).
ActivationVector data_schedule(Rng& rng, const Topology& topo, const std::vector<LinkId>& decision,
                               const ActivationVector& prev, const CsmaNodeState& state,
                               const std::vector<double>& link_probs);

// Post-slot carrier sensing: NS marks nodes with an active sender in their
// neighborhood (or themselves sending), NR likewise for receivers.
void carrier_sense_update(const Topology& topo, const ActivationVector& x, CsmaNodeState& state);

}  // namespace flowsched
