#pragma once

#include <cstdint>
#include <vector>

#include "flowsched/network.hpp"
#include "flowsched/rng.hpp"

namespace flowsched {

enum class HChoice { One, LogLog, LogTheta };

// g(x) = log(1+x) / h(x) with h one of:
//   One:      h(x) = 1
//   LogLog:   h(x) = log(e + log(1+x))
//   LogTheta: h(x) = log^theta(e + x), 0 < theta < 1
// g is increasing and concave with g(0) = 0; construction spot-checks both on
// a grid and rejects parameterizations that break them.
class WeightFn {
 public:
  explicit WeightFn(HChoice h = HChoice::LogLog, double theta = 0.5);

  double g(double x) const;
  double g_prime(double x) const;       // clamped to g'(0) for x < 0
  double g_inverse(double y) const;     // y >= 0, bisection
  double big_g(double u) const;         // G(u) = integral_0^u g; closed form for h = One
  double h0() const { return h0_; }
  HChoice h_choice() const { return h_; }
  double theta() const { return theta_; }

 private:
  double h(double x) const;
  double h_prime(double x) const;

  HChoice h_;
  double theta_;
  double h0_;
};

// MAC-queue link weights, Eqs. w^(d)_{ij} = g(q_i^(d)) - g(q_j^(d)),
// w_{ij} = max over carried d.
struct LinkWeights {
  std::vector<double> w;                       // by link
  std::vector<DestId> best_dest;               // argmax destination per link
  std::vector<std::uint8_t> tie;               // 1 if the argmax was tied
  std::vector<std::vector<double>> w_d;        // [dest_index][link]; 0 where not routed
};

// Queue accessor: q(node, dest_index) -> nonnegative queue value.
using QueueView = std::vector<std::vector<double>>;  // [node][dest_index]

LinkWeights compute_link_weights(const WeightFn& fn, const Network& net, const QueueView& q,
                                 Rng& rng);

// Same structure computed from expected total backlogs Q-bar; diagnostic only.
LinkWeights compute_state_weights(const WeightFn& fn, const Network& net, const QueueView& qbar,
                                  Rng& rng);

struct MaxWeightResult {
  int schedule_id = -1;
  std::uint64_t mask = 0;
  double total_weight = 0.0;
  std::vector<std::uint8_t> active;            // by link
  std::vector<DestId> dest;                    // by link, -1 when inactive
};

// Exact maximizer of sum_{l in s} w_l over the enumerated schedule set; ties
// broken uniformly at random.
MaxWeightResult max_weight_schedule(const ScheduleSet& schedules, const LinkWeights& weights,
                                    Rng& rng);

}  // namespace flowsched
