#include "flowsched/topology.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace flowsched {

Topology::Topology(int node_count, std::vector<Link> links)
    : node_count_(node_count), links_(std::move(links)) {
  require(node_count_ >= 1, Err::ConfigError, "node_count must be >= 1");
  out_nbrs_.assign(static_cast<std::size_t>(node_count_), {});
  radio_nbrs_.assign(static_cast<std::size_t>(node_count_), {});
  for (std::size_t l = 0; l < links_.size(); ++l) {
    const Link& e = links_[l];
    require(e.from >= 0 && e.from < node_count_ && e.to >= 0 && e.to < node_count_,
            Err::ConfigError, "link endpoint out of range");
    require(e.from != e.to, Err::ConfigError, "self-loop link");
    for (std::size_t k = 0; k < l; ++k)
      require(!(links_[k] == e), Err::ConfigError, "duplicate link");
    out_nbrs_[static_cast<std::size_t>(e.from)].push_back(e.to);
  }
  for (int i = 0; i < node_count_; ++i) {
    auto& r = radio_nbrs_[static_cast<std::size_t>(i)];
    for (const Link& e : links_) {
      if (e.from == i) r.push_back(e.to);
      if (e.to == i) r.push_back(e.from);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
}

std::optional<LinkId> Topology::find_link(NodeId from, NodeId to) const {
  for (std::size_t l = 0; l < links_.size(); ++l)
    if (links_[l].from == from && links_[l].to == to) return static_cast<LinkId>(l);
  return std::nullopt;
}

LinkId Topology::link_id(NodeId from, NodeId to) const {
  auto l = find_link(from, to);
  require(l.has_value(), Err::UnknownLink,
          "(" + std::to_string(from) + "," + std::to_string(to) + ")");
  return *l;
}

bool Topology::radio_adjacent(NodeId i, NodeId j) const {
  const auto& r = radio_nbrs_[static_cast<std::size_t>(i)];
  return std::binary_search(r.begin(), r.end(), j);
}

std::vector<LinkId> conflict_set(const Topology& topo, LinkId link) {
  require(link >= 0 && link < topo.link_count(), Err::UnknownLink, std::to_string(link));
  const NodeId i = topo.link(link).from;
  const NodeId j = topo.link(link).to;
  const auto& cj = topo.out_neighbors(j);
  const auto& ci = topo.out_neighbors(i);
  std::vector<LinkId> cs;
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    const NodeId a = topo.link(l).from;
    const NodeId b = topo.link(l).to;
    const bool a_in_cj = std::find(cj.begin(), cj.end(), a) != cj.end();
    const bool b_in_ci = std::find(ci.begin(), ci.end(), b) != ci.end();
    if (a_in_cj || b_in_ci || a == i || a == j || b == i || b == j) cs.push_back(l);
  }
  return cs;
}

std::vector<LinkId> conflict_set(const Topology& topo, NodeId from, NodeId to) {
  return conflict_set(topo, topo.link_id(from, to));
}

ConflictGraph::ConflictGraph(const Topology& topo) {
  const int m = topo.link_count();
  nbrs_.assign(static_cast<std::size_t>(m), {});
  for (LinkId u = 0; u < m; ++u) {
    for (LinkId v : conflict_set(topo, u)) {
      if (v == u) continue;
      nbrs_[static_cast<std::size_t>(u)].push_back(v);
      nbrs_[static_cast<std::size_t>(v)].push_back(u);
    }
  }
  finalize();
}

ConflictGraph::ConflictGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  nbrs_.assign(static_cast<std::size_t>(vertex_count), {});
  for (const auto& [u, v] : edges) {
    require(u >= 0 && u < vertex_count && v >= 0 && v < vertex_count && u != v, Err::ConfigError,
            "bad conflict edge");
    nbrs_[static_cast<std::size_t>(u)].push_back(v);
    nbrs_[static_cast<std::size_t>(v)].push_back(u);
  }
  finalize();
}

void ConflictGraph::finalize() {
  for (auto& n : nbrs_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  masks_.assign(nbrs_.size(), 0);
  if (masks_valid()) {
    for (std::size_t v = 0; v < nbrs_.size(); ++v)
      for (LinkId u : nbrs_[v]) masks_[v] |= (std::uint64_t{1} << u);
  }
}

bool ConflictGraph::adjacent(LinkId u, LinkId v) const {
  const auto& n = nbrs_[static_cast<std::size_t>(u)];
  return std::binary_search(n.begin(), n.end(), v);
}

bool ConflictGraph::is_independent(const std::vector<std::uint8_t>& active) const {
  for (std::size_t v = 0; v < nbrs_.size(); ++v) {
    if (!active[v]) continue;
    for (LinkId u : nbrs_[v])
      if (u > static_cast<LinkId>(v) && active[static_cast<std::size_t>(u)]) return false;
  }
  return true;
}

bool ConflictGraph::is_independent_mask(std::uint64_t mask) const {
  std::uint64_t rest = mask;
  while (rest) {
    const int v = std::countr_zero(rest);
    rest &= rest - 1;
    if (masks_[static_cast<std::size_t>(v)] & mask) return false;
  }
  return true;
}

namespace {

void enumerate_rec(const ConflictGraph& g, int v, std::uint64_t chosen, std::uint64_t blocked,
                   std::vector<std::uint64_t>& out) {
  if (v == g.vertex_count()) {
    out.push_back(chosen);
    return;
  }
  enumerate_rec(g, v + 1, chosen, blocked, out);
  if (!(blocked & (std::uint64_t{1} << v)))
    enumerate_rec(g, v + 1, chosen | (std::uint64_t{1} << v), blocked | g.neighbor_mask(v), out);
}

}  // namespace

ScheduleSet ScheduleSet::enumerate(const ConflictGraph& graph, int cap) {
  require(graph.vertex_count() <= cap, Err::TooLarge,
          std::to_string(graph.vertex_count()) + " links exceed enumeration cap " +
              std::to_string(cap));
  ScheduleSet set;
  set.link_count_ = graph.vertex_count();
  enumerate_rec(graph, 0, 0, 0, set.masks_);
  std::sort(set.masks_.begin(), set.masks_.end());
  return set;
}

int ScheduleSet::id_of(std::uint64_t mask) const {
  auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  if (it == masks_.end() || *it != mask) return -1;
  return static_cast<int>(it - masks_.begin());
}

std::vector<std::uint8_t> ScheduleSet::activation(int id) const {
  std::vector<std::uint8_t> act(static_cast<std::size_t>(link_count_), 0);
  std::uint64_t m = mask(id);
  while (m) {
    act[static_cast<std::size_t>(std::countr_zero(m))] = 1;
    m &= m - 1;
  }
  return act;
}

}  // namespace flowsched
