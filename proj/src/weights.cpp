#include "flowsched/weights.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace flowsched {

WeightFn::WeightFn(HChoice h, double theta) : h_(h), theta_(theta) {
  if (h_ == HChoice::LogTheta)
    require(theta_ > 0.0 && theta_ < 1.0, Err::ConfigError,
            "logtheta weight function needs theta in (0,1)");
  h0_ = this->h(0.0);

  // Spot-check that the parameterization yields an increasing concave g.
  double x_prev = 0.0, g_prev = g(0.0), slope_prev = -1.0;
  for (double x = 0.25; x <= 4096.0; x *= 2.0) {
    const double g_cur = g(x);
    require(g_cur > g_prev, Err::ConfigError, "weight function g is not increasing");
    const double slope = (g_cur - g_prev) / (x - x_prev);
    if (slope_prev >= 0.0)
      require(slope <= slope_prev * (1.0 + 1e-9), Err::ConfigError,
              "weight function g is not concave");
    x_prev = x;
    g_prev = g_cur;
    slope_prev = slope;
  }
}

double WeightFn::h(double x) const {
  switch (h_) {
    case HChoice::One: return 1.0;
    case HChoice::LogLog: return std::log(std::exp(1.0) + std::log1p(x));
    case HChoice::LogTheta: return std::pow(std::log(std::exp(1.0) + x), theta_);
  }
  return 1.0;
}

double WeightFn::h_prime(double x) const {
  switch (h_) {
    case HChoice::One: return 0.0;
    case HChoice::LogLog: return 1.0 / ((1.0 + x) * (std::exp(1.0) + std::log1p(x)));
    case HChoice::LogTheta: {
      const double l = std::log(std::exp(1.0) + x);
      return theta_ * std::pow(l, theta_ - 1.0) / (std::exp(1.0) + x);
    }
  }
  return 0.0;
}

double WeightFn::g(double x) const {
  require(x >= 0.0, Err::NegativeInput, "g evaluated at x < 0");
  return std::log1p(x) / h(x);
}

double WeightFn::g_prime(double x) const {
  if (x < 0.0) x = 0.0;
  const double hx = h(x);
  return 1.0 / ((1.0 + x) * hx) - std::log1p(x) * h_prime(x) / (hx * hx);
}

double WeightFn::g_inverse(double y) const {
  require(y >= 0.0, Err::NegativeInput, "g_inverse of y < 0");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  while (g(hi) < y) {
    hi *= 2.0;
    require(hi < 1e300, Err::ConvergenceFailure, "g_inverse target unreachable");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Adaptive Simpson quadrature; g is smooth and concave so this converges fast.
double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const WeightFn& fn, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = fn.g(lm), frm = fn.g(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(fn, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive(fn, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double WeightFn::big_g(double u) const {
  require(u >= 0.0, Err::NegativeInput, "G evaluated at u < 0");
  if (u == 0.0) return 0.0;
  if (h_ == HChoice::One) return (1.0 + u) * std::log1p(u) - u;
  const double fa = g(0.0), fb = g(u), fm = g(0.5 * u);
  const double whole = simpson(0.0, u, fa, fm, fb);
  return adaptive(*this, 0.0, u, fa, fm, fb, whole, 1e-10 * (1.0 + u), 40);
}

namespace {

LinkWeights weights_from_values(const WeightFn& fn, const Network& net, const QueueView& values,
                                Rng& rng) {
  const int m = net.link_count();
  LinkWeights out;
  out.w.assign(static_cast<std::size_t>(m), 0.0);
  out.best_dest.assign(static_cast<std::size_t>(m), -1);
  out.tie.assign(static_cast<std::size_t>(m), 0);
  out.w_d.assign(static_cast<std::size_t>(net.dest_count()),
                 std::vector<double>(static_cast<std::size_t>(m), 0.0));

  for (LinkId l = 0; l < m; ++l) {
    const NodeId i = net.topo().link(l).from;
    const NodeId j = net.topo().link(l).to;
    double best = 0.0;
    DestId best_d = -1;
    int tie_count = 0;
    for (DestId d : net.carried_destinations(l)) {
      const int di = net.dest_index(d);
      const double wd = fn.g(values[static_cast<std::size_t>(i)][static_cast<std::size_t>(di)]) -
                        fn.g(values[static_cast<std::size_t>(j)][static_cast<std::size_t>(di)]);
      out.w_d[static_cast<std::size_t>(di)][static_cast<std::size_t>(l)] = wd;
      if (best_d < 0 || wd > best) {
        best = wd;
        best_d = d;
        tie_count = 1;
      } else if (wd == best) {
        // Uniform tie-break via reservoir sampling over tied destinations.
        ++tie_count;
        if (rng.index(static_cast<std::size_t>(tie_count)) == 0) best_d = d;
      }
    }
    out.w[static_cast<std::size_t>(l)] = best;
    out.best_dest[static_cast<std::size_t>(l)] = best_d;
    out.tie[static_cast<std::size_t>(l)] = tie_count > 1 ? 1 : 0;
  }
  return out;
}

}  // namespace

LinkWeights compute_link_weights(const WeightFn& fn, const Network& net, const QueueView& q,
                                 Rng& rng) {
  return weights_from_values(fn, net, q, rng);
}

LinkWeights compute_state_weights(const WeightFn& fn, const Network& net, const QueueView& qbar,
                                  Rng& rng) {
  return weights_from_values(fn, net, qbar, rng);
}

MaxWeightResult max_weight_schedule(const ScheduleSet& schedules, const LinkWeights& weights,
                                    Rng& rng) {
  require(schedules.size() > 0, Err::EmptyScheduleSet, "schedule set is empty");

  double best = 0.0;
  int best_id = -1;
  int tie_count = 0;
  for (int s = 0; s < schedules.size(); ++s) {
    double total = 0.0;
    std::uint64_t mask = schedules.mask(s);
    while (mask) {
      total += weights.w[static_cast<std::size_t>(std::countr_zero(mask))];
      mask &= mask - 1;
    }
    if (best_id < 0 || total > best) {
      best = total;
      best_id = s;
      tie_count = 1;
    } else if (total == best) {
      ++tie_count;
      if (rng.index(static_cast<std::size_t>(tie_count)) == 0) best_id = s;
    }
  }

  MaxWeightResult res;
  res.schedule_id = best_id;
  res.mask = schedules.mask(best_id);
  res.total_weight = best;
  res.active = schedules.activation(best_id);
  res.dest.assign(res.active.size(), -1);
  for (std::size_t l = 0; l < res.active.size(); ++l)
    if (res.active[l]) res.dest[l] = weights.best_dest[l];
  return res;
}

}  // namespace flowsched
