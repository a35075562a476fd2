#pragma once

#include <map>
#include <optional>
#include <vector>

#include "flowsched/topology.hpp"

namespace flowsched {

struct SourceSpec {
  NodeId node = -1;
  DestId dest = -1;
};

struct NetworkSpec {
  int node_count = 0;
  std::vector<Link> links;
  std::vector<SourceSpec> sources;
  // Per destination: next hop of each node, as (node, next_node) pairs.
  // Nodes absent from the table have no route for that destination.
  std::map<DestId, std::vector<std::pair<NodeId, NodeId>>> routes;
};

// Validated network: topology, per-destination next-hop routing, conflict
// graph. Immutable after construction and safe to share across replicas.
class Network {
 public:
  explicit Network(const NetworkSpec& spec);

  const Topology& topo() const { return topo_; }
  const ConflictGraph& conflict_graph() const { return conflict_; }
  int node_count() const { return topo_.node_count(); }
  int link_count() const { return topo_.link_count(); }

  const std::vector<SourceSpec>& sources() const { return sources_; }
  // Destination ids in ascending order; `dest_index` is the dense index used
  // for per-destination queue arrays.
  const std::vector<DestId>& destinations() const { return dests_; }
  int dest_count() const { return static_cast<int>(dests_.size()); }
  int dest_index(DestId d) const;

  // Next-hop link of `node` toward destination `d`, if routed.
  std::optional<LinkId> next_hop(NodeId node, DestId d) const;
  // Destinations d with R^(d)_{ij} = 1 for the link, ascending. Non-empty for
  // every link (validated).
  const std::vector<DestId>& carried_destinations(LinkId l) const {
    return carried_[static_cast<std::size_t>(l)];
  }

  bool is_source(NodeId n) const { return source_dest_[static_cast<std::size_t>(n)] >= 0; }
  // Destination of the flow originating at n, or -1 when n is not a source.
  DestId source_dest(NodeId n) const { return source_dest_[static_cast<std::size_t>(n)]; }

 private:
  Topology topo_;
  ConflictGraph conflict_;
  std::vector<SourceSpec> sources_;
  std::vector<DestId> dests_;
  std::vector<DestId> source_dest_;                  // by node, -1 if not a source
  std::vector<std::vector<int>> next_hop_;           // [dest_index][node] -> link or -1
  std::vector<std::vector<DestId>> carried_;         // by link
};

Network build_network(const NetworkSpec& spec);

// A constructively feasible load point: convex schedule mix, per-destination
// link flows, and the per-source loads they support at headroom theta.
struct CapacityPoint {
  std::vector<double> mix;                  // by schedule id, sums to 1
  std::vector<double> mu;                   // by link
  std::vector<std::vector<double>> mu_d;    // [dest_index][link]
  std::vector<double> rho;                  // by source (order of network.sources())
  double theta = 0.0;
};

// Per-link split of the link's time share across carried destinations.
struct LinkSplit {
  DestId dest = -1;
  double fraction = 0.0;
};

CapacityPoint make_capacity_point(const Network& net, const ScheduleSet& schedules,
                                  const std::vector<double>& mix,
                                  const std::vector<std::vector<LinkSplit>>& split, double theta);

}  // namespace flowsched
