#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flowsched/errors.hpp"

namespace flowsched {

using NodeId = int;
using LinkId = int;
using DestId = int;

struct Link {
  NodeId from = -1;
  NodeId to = -1;

  friend bool operator==(const Link&, const Link&) = default;
};

// Directed link table with the adjacency views the interference model needs.
// Links are indexed in the order given; the index is the canonical LinkId used
// everywhere else (activation vectors, weights, schedules).
class Topology {
 public:
  Topology() = default;
  Topology(int node_count, std::vector<Link> links);

  int node_count() const { return node_count_; }
  int link_count() const { return static_cast<int>(links_.size()); }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId l) const { return links_[static_cast<std::size_t>(l)]; }

  std::optional<LinkId> find_link(NodeId from, NodeId to) const;
  LinkId link_id(NodeId from, NodeId to) const;  // throws UnknownLink

  // Out-neighborhood C(i) = {j : (i,j) in L}.
  const std::vector<NodeId>& out_neighbors(NodeId i) const {
    return out_nbrs_[static_cast<std::size_t>(i)];
  }
  // Undirected (radio) neighborhood: {j : (i,j) in L or (j,i) in L}.
  const std::vector<NodeId>& radio_neighbors(NodeId i) const {
    return radio_nbrs_[static_cast<std::size_t>(i)];
  }
  bool radio_adjacent(NodeId i, NodeId j) const;

 private:
  int node_count_ = 0;
  std::vector<Link> links_;
  std::vector<std::vector<NodeId>> out_nbrs_;
  std::vector<std::vector<NodeId>> radio_nbrs_;
};

// Conflict set of link (i,j):
//   CS_(i,j) = {(a,b) in L : a in C(j), or b in C(i), or a in {i,j}, or b in {i,j}}.
// The link itself is a member by the formula; callers that build conflict-graph
// edges drop the self entry.
std::vector<LinkId> conflict_set(const Topology& topo, LinkId link);
std::vector<LinkId> conflict_set(const Topology& topo, NodeId from, NodeId to);

// Interference graph over links. Edges come from the conflict-set relation,
// symmetrised: u ~ v iff v in CS_u or u in CS_v, u != v. On topologies whose
// link set is reciprocal the relation is already symmetric and the closure is
// a no-op (covered by a property test).
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(const Topology& topo);

  // Direct construction from an adjacency list (chain-level tests and
  // synthetic instances). Edges are symmetrised.
  ConflictGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return static_cast<int>(nbrs_.size()); }
  const std::vector<LinkId>& neighbors(LinkId v) const {
    return nbrs_[static_cast<std::size_t>(v)];
  }
  bool adjacent(LinkId u, LinkId v) const;

  // Neighbor bitmask; only valid when vertex_count() <= 64.
  std::uint64_t neighbor_mask(LinkId v) const { return masks_[static_cast<std::size_t>(v)]; }
  bool masks_valid() const { return vertex_count() <= 64; }

  bool is_independent(const std::vector<std::uint8_t>& active) const;
  bool is_independent_mask(std::uint64_t mask) const;

 private:
  void finalize();

  std::vector<std::vector<LinkId>> nbrs_;
  std::vector<std::uint64_t> masks_;
};

// All independent sets of a conflict graph, as link bitmasks in ascending
// numeric order. Index into masks() is the schedule id.
class ScheduleSet {
 public:
  static constexpr int kDefaultEnumerationCap = 24;

  ScheduleSet() = default;

  // Throws TooLarge when the graph has more vertices than `cap`.
  static ScheduleSet enumerate(const ConflictGraph& graph, int cap = kDefaultEnumerationCap);

  int size() const { return static_cast<int>(masks_.size()); }
  const std::vector<std::uint64_t>& masks() const { return masks_; }
  std::uint64_t mask(int id) const { return masks_[static_cast<std::size_t>(id)]; }
  int link_count() const { return link_count_; }

  // Schedule id for a mask, or -1 when the mask is not an independent set.
  int id_of(std::uint64_t mask) const;

  std::vector<std::uint8_t> activation(int id) const;

 private:
  std::vector<std::uint64_t> masks_;
  int link_count_ = 0;
};

}  // namespace flowsched
