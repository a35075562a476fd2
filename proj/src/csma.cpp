#include "flowsched/csma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace flowsched {

ModifiedWeights modified_weights(const WeightFn& fn, const Network& net, const QueueView& q,
                                 double epsilon, Rng& rng) {
  require(epsilon > 0.0, Err::ConfigError, "epsilon must be positive");
  const int n = net.node_count();
  const int m = net.link_count();

  double q_max = 0.0;
  for (const auto& row : q)
    for (double v : row) q_max = std::max(q_max, v);

  ModifiedWeights out;
  out.g_star = epsilon / (4.0 * n * n * n) * fn.g(q_max);
  out.w.assign(static_cast<std::size_t>(m), 0.0);
  out.best_dest.assign(static_cast<std::size_t>(m), -1);
  out.w_d.assign(static_cast<std::size_t>(net.dest_count()),
                 std::vector<double>(static_cast<std::size_t>(m), 0.0));

  auto g_floor = [&](double v) { return std::max(fn.g(v), out.g_star); };

  for (LinkId l = 0; l < m; ++l) {
    const NodeId i = net.topo().link(l).from;
    const NodeId j = net.topo().link(l).to;
    double best = 0.0;
    DestId best_d = -1;
    int tie_count = 0;
    for (DestId d : net.carried_destinations(l)) {
      const int di = net.dest_index(d);
      const double wd = g_floor(q[static_cast<std::size_t>(i)][static_cast<std::size_t>(di)]) -
                        g_floor(q[static_cast<std::size_t>(j)][static_cast<std::size_t>(di)]);
      out.w_d[static_cast<std::size_t>(di)][static_cast<std::size_t>(l)] = wd;
      if (best_d < 0 || wd > best) {
        best = wd;
        best_d = d;
        tie_count = 1;
      } else if (wd == best) {
        ++tie_count;
        if (rng.index(static_cast<std::size_t>(tie_count)) == 0) best_d = d;
      }
    }
    out.w[static_cast<std::size_t>(l)] = best;
    out.best_dest[static_cast<std::size_t>(l)] = best_d;
  }
  return out;
}

double activation_probability(double w_tilde) {
  if (w_tilde > 30.0) return 1.0 - std::exp(-w_tilde);
  if (w_tilde < -30.0) return std::exp(w_tilde);
  const double e = std::exp(w_tilde);
  return e / (1.0 + e);
}

ActivationVector basic_csma_step(Rng& rng, const ConflictGraph& graph,
                                 const ActivationVector& prev,
                                 const std::vector<double>& link_probs) {
  const std::size_t m = static_cast<std::size_t>(graph.vertex_count());
  ActivationVector next = prev;
  const LinkId chosen = static_cast<LinkId>(rng.index(m));

  bool blocked = false;
  for (LinkId u : graph.neighbors(chosen))
    if (prev[static_cast<std::size_t>(u)]) {
      blocked = true;
      break;
    }
  if (blocked)
    next[static_cast<std::size_t>(chosen)] = 0;
  else
    next[static_cast<std::size_t>(chosen)] =
        rng.bernoulli(link_probs[static_cast<std::size_t>(chosen)]) ? 1 : 0;
  return next;
}

RtdDraws draw_rtd(Rng& rng, const Topology& topo, const std::vector<double>& beta) {
  require(beta.size() == static_cast<std::size_t>(topo.node_count()), Err::DimensionMismatch,
          "beta size vs node count");
  RtdDraws draws;
  draws.transmits.assign(static_cast<std::size_t>(topo.node_count()), 0);
  draws.target.assign(static_cast<std::size_t>(topo.node_count()), -1);
  for (NodeId i = 0; i < topo.node_count(); ++i) {
    const auto& nbrs = topo.out_neighbors(i);
    if (nbrs.empty()) continue;
    if (rng.bernoulli(beta[static_cast<std::size_t>(i)])) {
      draws.transmits[static_cast<std::size_t>(i)] = 1;
      draws.target[static_cast<std::size_t>(i)] = nbrs[rng.index(nbrs.size())];
    }
  }
  return draws;
}

std::vector<LinkId> compute_decision_set(const Topology& topo, const RtdDraws& draws,
                                         const std::vector<int>& node_order) {
  const int n = topo.node_count();

  // Mini-slot 1: an RTD reaches j iff j is silent and exactly one of its
  // radio neighbors transmits, and that transmission is addressed to j.
  std::vector<int> rtd_from(static_cast<std::size_t>(n), -1);
  for (int idx : node_order) {
    const NodeId j = idx;
    if (draws.transmits[static_cast<std::size_t>(j)]) continue;
    int sender = -1;
    int transmitting_nbrs = 0;
    for (NodeId k : topo.radio_neighbors(j)) {
      if (!draws.transmits[static_cast<std::size_t>(k)]) continue;
      ++transmitting_nbrs;
      if (draws.target[static_cast<std::size_t>(k)] == j) sender = k;
    }
    if (transmitting_nbrs == 1 && sender >= 0) rtd_from[static_cast<std::size_t>(j)] = sender;
  }

  // Mini-slot 2: every successful RTD receiver replies with a CTD; the CTD
  // reaches the original sender iff no other CTD sender is in its
  // neighborhood.
  std::vector<LinkId> decision;
  for (int idx : node_order) {
    const NodeId i = idx;
    if (!draws.transmits[static_cast<std::size_t>(i)]) continue;
    const NodeId j = draws.target[static_cast<std::size_t>(i)];
    if (rtd_from[static_cast<std::size_t>(j)] != i) continue;
    bool collision = false;
    for (NodeId k : topo.radio_neighbors(i)) {
      if (k == j) continue;
      if (rtd_from[static_cast<std::size_t>(k)] >= 0) {
        collision = true;
        break;
      }
    }
    if (!collision) decision.push_back(topo.link_id(i, j));
  }
  std::sort(decision.begin(), decision.end());
  return decision;
}

std::vector<LinkId> decision_schedule(Rng& rng, const Topology& topo,
                                      const std::vector<double>& beta, CsmaNodeState& state) {
  const RtdDraws draws = draw_rtd(rng, topo, beta);
  std::vector<int> order(static_cast<std::size_t>(topo.node_count()));
  std::iota(order.begin(), order.end(), 0);
  const std::vector<LinkId> decision = compute_decision_set(topo, draws, order);

  std::fill(state.as.begin(), state.as.end(), 0);
  std::fill(state.ar.begin(), state.ar.end(), 0);
  std::fill(state.id.begin(), state.id.end(), -1);
  for (LinkId l : decision) {
    const NodeId i = topo.link(l).from;
    const NodeId j = topo.link(l).to;
    state.as[static_cast<std::size_t>(i)] = 1;
    state.id[static_cast<std::size_t>(i)] = j;
    state.ar[static_cast<std::size_t>(j)] = 1;
    state.id[static_cast<std::size_t>(j)] = i;
  }
  return decision;
}

ActivationVector data_schedule(Rng& rng, const Topology& topo, const std::vector<LinkId>& decision,
                               const ActivationVector& prev, const CsmaNodeState& state,
                               const std::vector<double>& link_probs) {
  ActivationVector next = prev;
  for (LinkId l : decision) {
    const NodeId i = topo.link(l).from;
    const NodeId j = topo.link(l).to;
    const bool silent = prev[static_cast<std::size_t>(l)] == 1 ||
                        (state.nr[static_cast<std::size_t>(i)] == 0 &&
                         state.ns[static_cast<std::size_t>(j)] == 0);
    if (silent)
      next[static_cast<std::size_t>(l)] =
          rng.bernoulli(link_probs[static_cast<std::size_t>(l)]) ? 1 : 0;
    else
      next[static_cast<std::size_t>(l)] = 0;
  }
  return next;
}

void carrier_sense_update(const Topology& topo, const ActivationVector& x, CsmaNodeState& state) {
  std::fill(state.ns.begin(), state.ns.end(), 0);
  std::fill(state.nr.begin(), state.nr.end(), 0);
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (!x[static_cast<std::size_t>(l)]) continue;
    const NodeId sender = topo.link(l).from;
    const NodeId receiver = topo.link(l).to;
    state.ns[static_cast<std::size_t>(sender)] = 1;
    state.nr[static_cast<std::size_t>(receiver)] = 1;
    for (NodeId k : topo.radio_neighbors(sender)) state.ns[static_cast<std::size_t>(k)] = 1;
    for (NodeId k : topo.radio_neighbors(receiver)) state.nr[static_cast<std::size_t>(k)] = 1;
  }
}

}  // namespace flowsched
