#include "flowsched/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

namespace flowsched {

namespace {

std::string link_str(NodeId i, NodeId j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Network::Network(const NetworkSpec& spec) : topo_(spec.node_count, spec.links) {
  const int n = topo_.node_count();

  source_dest_.assign(static_cast<std::size_t>(n), -1);
  std::set<DestId> dest_set;
  for (const SourceSpec& s : spec.sources) {
    require(s.node >= 0 && s.node < n && s.dest >= 0 && s.dest < n, Err::ConfigError,
            "source/destination out of range");
    require(s.dest != s.node, Err::ConfigError,
            "source " + std::to_string(s.node) + " equals its destination");
    require(source_dest_[static_cast<std::size_t>(s.node)] < 0, Err::ConfigError,
            "node " + std::to_string(s.node) + " declared as source twice");
    source_dest_[static_cast<std::size_t>(s.node)] = s.dest;
    dest_set.insert(s.dest);
    sources_.push_back(s);
  }
  dests_.assign(dest_set.begin(), dest_set.end());
  for (const auto& [d, hops] : spec.routes) {
    (void)hops;
    require(dest_set.count(d) > 0, Err::ConfigError,
            "route table for " + std::to_string(d) + " which is not a destination");
  }

  next_hop_.assign(dests_.size(), std::vector<int>(static_cast<std::size_t>(n), -1));
  carried_.assign(static_cast<std::size_t>(topo_.link_count()), {});
  for (std::size_t di = 0; di < dests_.size(); ++di) {
    const DestId d = dests_[di];
    auto it = spec.routes.find(d);
    require(it != spec.routes.end(), Err::ConfigError,
            "missing route table for destination " + std::to_string(d));
    for (const auto& [node, next] : it->second) {
      require(node >= 0 && node < n, Err::ConfigError, "routed node out of range");
      require(node != d, Err::ConfigError,
              "destination " + std::to_string(d) + " must not have an outgoing route");
      require(next_hop_[di][static_cast<std::size_t>(node)] < 0, Err::ConfigError,
              "node " + std::to_string(node) + " routed twice for destination " +
                  std::to_string(d));
      auto l = topo_.find_link(node, next);
      require(l.has_value(), Err::DanglingRoute,
              "route " + link_str(node, next) + " uses a link absent from the network");
      next_hop_[di][static_cast<std::size_t>(node)] = *l;
      carried_[static_cast<std::size_t>(*l)].push_back(d);
    }

    // Acyclicity, checked as (R^(d))^N = 0 by walking next hops.
    for (NodeId start = 0; start < n; ++start) {
      NodeId cur = start;
      for (int step = 0; step <= n; ++step) {
        const int l = next_hop_[di][static_cast<std::size_t>(cur)];
        if (l < 0) break;
        cur = topo_.link(l).to;
        require(step < n, Err::CyclicRoute,
                "routing for destination " + std::to_string(d) + " cycles from node " +
                    std::to_string(start));
      }
    }

    // Every source chain must terminate at the destination, or its packets
    // would be stranded at a route dead end.
    for (const SourceSpec& s : sources_) {
      if (s.dest != d) continue;
      NodeId cur = s.node;
      while (cur != d) {
        const int l = next_hop_[di][static_cast<std::size_t>(cur)];
        require(l >= 0, Err::RouteDeadEnd,
                "route of source " + std::to_string(s.node) + " stops at node " +
                    std::to_string(cur) + " before destination " + std::to_string(d));
        cur = topo_.link(l).to;
      }
    }
  }

  for (LinkId l = 0; l < topo_.link_count(); ++l) {
    std::sort(carried_[static_cast<std::size_t>(l)].begin(),
              carried_[static_cast<std::size_t>(l)].end());
    require(!carried_[static_cast<std::size_t>(l)].empty(), Err::UnusedLink,
            "link " + link_str(topo_.link(l).from, topo_.link(l).to) +
                " carries no destination");
  }

  conflict_ = ConflictGraph(topo_);
}

int Network::dest_index(DestId d) const {
  auto it = std::lower_bound(dests_.begin(), dests_.end(), d);
  require(it != dests_.end() && *it == d, Err::ConfigError,
          "unknown destination " + std::to_string(d));
  return static_cast<int>(it - dests_.begin());
}

std::optional<LinkId> Network::next_hop(NodeId node, DestId d) const {
  const int l = next_hop_[static_cast<std::size_t>(dest_index(d))][static_cast<std::size_t>(node)];
  if (l < 0) return std::nullopt;
  return l;
}

Network build_network(const NetworkSpec& spec) { return Network(spec); }

CapacityPoint make_capacity_point(const Network& net, const ScheduleSet& schedules,
                                  const std::vector<double>& mix,
                                  const std::vector<std::vector<LinkSplit>>& split, double theta) {
  const int m = net.link_count();
  require(static_cast<int>(mix.size()) == schedules.size(), Err::DimensionMismatch,
          "mix size vs schedule count");
  require(static_cast<int>(split.size()) == m, Err::DimensionMismatch, "split size vs links");
  require(theta >= 0.0 && theta < 1.0, Err::ConfigError, "headroom theta must lie in [0,1)");

  constexpr double kTol = 1e-12;
  double mix_sum = 0.0;
  for (double w : mix) {
    require(w >= 0.0, Err::ConfigError, "negative mix weight");
    mix_sum += w;
  }
  require(std::abs(mix_sum - 1.0) <= 1e-9, Err::ConfigError, "mix weights must sum to 1");

  CapacityPoint point;
  point.theta = theta;
  point.mix = mix;
  point.mu.assign(static_cast<std::size_t>(m), 0.0);
  for (int s = 0; s < schedules.size(); ++s) {
    std::uint64_t mask = schedules.mask(s);
    while (mask) {
      const int l = std::countr_zero(mask);
      mask &= mask - 1;
      point.mu[static_cast<std::size_t>(l)] += mix[static_cast<std::size_t>(s)];
    }
  }

  point.mu_d.assign(static_cast<std::size_t>(net.dest_count()),
                    std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (LinkId l = 0; l < m; ++l) {
    double total_fraction = 0.0;
    for (const LinkSplit& ls : split[static_cast<std::size_t>(l)]) {
      require(ls.fraction >= 0.0, Err::InfeasibleSplit, "negative split fraction");
      const auto& carried = net.carried_destinations(l);
      require(std::find(carried.begin(), carried.end(), ls.dest) != carried.end(),
              Err::InfeasibleSplit,
              "split assigns destination " + std::to_string(ls.dest) +
                  " to a link that does not carry it");
      point.mu_d[static_cast<std::size_t>(net.dest_index(ls.dest))][static_cast<std::size_t>(l)] +=
          ls.fraction * point.mu[static_cast<std::size_t>(l)];
      total_fraction += ls.fraction;
    }
    require(total_fraction <= 1.0 + kTol, Err::InfeasibleSplit,
            "split fractions exceed 1 on link " + std::to_string(l));
  }

  // Net outflow minus inflow of d-flow at each node; positive at a source is
  // the rate it can sustain, negative anywhere means conservation is violated.
  std::vector<std::vector<double>> slack(static_cast<std::size_t>(net.dest_count()),
                                         std::vector<double>(
                                             static_cast<std::size_t>(net.node_count()), 0.0));
  for (int di = 0; di < net.dest_count(); ++di) {
    for (LinkId l = 0; l < m; ++l) {
      const DestId d = net.destinations()[static_cast<std::size_t>(di)];
      // Only flow on routed links counts; the routing matrix gates the
      // capacity inequalities.
      const auto hop = net.next_hop(net.topo().link(l).from, d);
      if (!hop.has_value() || *hop != l) continue;
      const double f = point.mu_d[static_cast<std::size_t>(di)][static_cast<std::size_t>(l)];
      slack[static_cast<std::size_t>(di)][static_cast<std::size_t>(net.topo().link(l).from)] += f;
      slack[static_cast<std::size_t>(di)][static_cast<std::size_t>(net.topo().link(l).to)] -= f;
    }
  }

  double min_positive_flow = 0.0;
  for (const SourceSpec& s : net.sources()) {
    const double out_minus_in =
        slack[static_cast<std::size_t>(net.dest_index(s.dest))][static_cast<std::size_t>(s.node)];
    require(out_minus_in >= -kTol, Err::NegativeLoad,
            "source " + std::to_string(s.node) + " has negative supportable load");
    if (out_minus_in > kTol)
      min_positive_flow = (min_positive_flow == 0.0) ? out_minus_in
                                                     : std::min(min_positive_flow, out_minus_in);
    point.rho.push_back(theta * std::max(0.0, out_minus_in));
  }

  for (int di = 0; di < net.dest_count(); ++di) {
    const DestId d = net.destinations()[static_cast<std::size_t>(di)];
    for (NodeId node = 0; node < net.node_count(); ++node) {
      if (node == d) continue;
      require(slack[static_cast<std::size_t>(di)][static_cast<std::size_t>(node)] >= -kTol,
              Err::NegativeLoad,
              "flow of destination " + std::to_string(d) + " accumulates at node " +
                  std::to_string(node));
    }
  }

  // Family 3: sum_d mu^(d)_{ij} <= mu_{ij}.
  for (LinkId l = 0; l < m; ++l) {
    double used = 0.0;
    for (int di = 0; di < net.dest_count(); ++di)
      used += point.mu_d[static_cast<std::size_t>(di)][static_cast<std::size_t>(l)];
    require(used <= point.mu[static_cast<std::size_t>(l)] + kTol, Err::InfeasibleSplit,
            "per-destination flows exceed link share on link " + std::to_string(l));
  }

  // Family 2 with the scaled loads keeps strict slack (1 - theta) * flow at
  // every source.
  for (std::size_t si = 0; si < net.sources().size(); ++si) {
    const SourceSpec& s = net.sources()[si];
    const double out_minus_in =
        slack[static_cast<std::size_t>(net.dest_index(s.dest))][static_cast<std::size_t>(s.node)];
    const double residual = out_minus_in - point.rho[si];
    require(residual + kTol >= (1.0 - theta) * std::min(out_minus_in, min_positive_flow),
            Err::NegativeLoad, "headroom slack check failed");
  }

  return point;
}

}  // namespace flowsched
