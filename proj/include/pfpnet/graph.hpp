#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pfpnet {

using NodeId = std::uint64_t;
using Edge = std::pair<NodeId, NodeId>;

class InvalidNode : public std::out_of_range {
public:
  explicit InvalidNode(NodeId v)
      : std::out_of_range("invalid node reference: " + std::to_string(v)), node_(v) {}
  NodeId node() const noexcept { return node_; }

private:
  NodeId node_;
};

// Immutable undirected simple graph.
//
// Nodes are kept in ascending NodeId order and addressed internally by a
// dense index 0..N-1. Because the id -> index map is monotone, every
// adjacency list is sorted both by index and by NodeId.
class Graph {
public:
  using Index = std::uint32_t;

  Graph() : offsets_(1, 0) {}

  static Graph from_edge_list(std::span<const Edge> edges) {
    std::vector<NodeId> ids;
    ids.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      ids.push_back(u);
      ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    Graph g;
    g.ids_ = std::move(ids);

    std::vector<std::pair<Index, Index>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u == v) continue;
      const Index a = g.lookup(u);
      const Index b = g.lookup(v);
      arcs.emplace_back(a, b);
      arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    g.offsets_.assign(g.ids_.size() + 1, 0);
    for (auto [a, b] : arcs) ++g.offsets_[a + 1];
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.reserve(arcs.size());
    for (auto [a, b] : arcs) g.targets_.push_back(b);
    g.edge_count_ = arcs.size() / 2;
    return g;
  }

  static Graph from_edge_list(const std::vector<Edge>& edges) {
    return from_edge_list(std::span<const Edge>(edges));
  }

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const NodeId> nodes() const noexcept { return ids_; }

  bool contains(NodeId v) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), v);
  }

  Index index_of(NodeId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) throw InvalidNode(v);
    return static_cast<Index>(it - ids_.begin());
  }

  NodeId id_at(Index i) const noexcept { return ids_[i]; }

  std::size_t degree(NodeId v) const { return degree_at(index_of(v)); }
  std::size_t degree_at(Index i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

  std::span<const Index> adjacent(Index i) const noexcept {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }

  std::vector<NodeId> neighbors(NodeId v) const {
    std::vector<NodeId> out;
    for (Index j : adjacent(index_of(v))) out.push_back(ids_[j]);
    return out;
  }

  bool has_edge_at(Index a, Index b) const noexcept {
    auto adj = adjacent(a);
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  bool has_edge(NodeId u, NodeId v) const {
    return has_edge_at(index_of(u), index_of(v));
  }

  std::size_t max_degree() const noexcept {
    std::size_t k = 0;
    for (Index i = 0; i < node_count(); ++i) k = std::max(k, degree_at(i));
    return k;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> out(node_count());
    for (Index i = 0; i < node_count(); ++i) out[i] = degree_at(i);
    return out;
  }

  // Edges as (min, max) pairs in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Index i = 0; i < node_count(); ++i)
      for (Index j : adjacent(i))
        if (i < j) out.emplace_back(ids_[i], ids_[j]);
    return out;
  }

  // Induced subgraph on the given nodes (unknown ids are ignored). Isolated
  // members are kept.
  Graph induced(std::span<const NodeId> members) const {
    std::vector<char> keep(node_count(), 0);
    for (NodeId v : members)
      if (contains(v)) keep[index_of(v)] = 1;
    Graph g;
    for (Index i = 0; i < node_count(); ++i)
      if (keep[i]) g.ids_.push_back(ids_[i]);
    g.offsets_.assign(g.ids_.size() + 1, 0);
    Index next = 0;
    std::vector<Index> remap(node_count(), 0);
    for (Index i = 0; i < node_count(); ++i)
      if (keep[i]) remap[i] = next++;
    for (Index i = 0; i < node_count(); ++i) {
      if (!keep[i]) continue;
      for (Index j : adjacent(i))
        if (keep[j]) g.targets_.push_back(remap[j]);
      g.offsets_[remap[i] + 1] = g.targets_.size();
    }
    g.edge_count_ = g.targets_.size() / 2;
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

private:
  Index lookup(NodeId v) const {
    return static_cast<Index>(std::lower_bound(ids_.begin(), ids_.end(), v) - ids_.begin());
  }

  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_;
  std::vector<Index> targets_;
  std::size_t edge_count_ = 0;
};

inline Graph from_edge_list(const std::vector<Edge>& edges) {
  return Graph::from_edge_list(edges);
}

inline std::size_t degree(const Graph& g, NodeId v) { return g.degree(v); }

// Component label per dense index, numbered in order of first appearance.
inline std::vector<std::uint32_t> component_labels(const Graph& g, std::size_t* count = nullptr) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(g.node_count(), unset);
  std::vector<Graph::Index> stack;
  std::uint32_t next = 0;
  for (Graph::Index s = 0; s < g.node_count(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : g.adjacent(u))
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline bool is_connected(const Graph& g) {
  std::size_t n = 0;
  component_labels(g, &n);
  return n <= 1;
}

// Ties go to the component holding the smallest NodeId. Components are
// labelled in ascending-id order of their first member, so the first maximum
// wins.
inline Graph largest_connected_component(const Graph& g) {
  if (g.empty()) return g;
  std::size_t count = 0;
  auto label = component_labels(g, &count);
  if (count == 1) return g;
  std::vector<std::size_t> size(count, 0);
  for (auto c : label) ++size[c];
  const auto best = static_cast<std::uint32_t>(
      std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<NodeId> members;
  for (Graph::Index i = 0; i < g.node_count(); ++i)
    if (label[i] == best) members.push_back(g.id_at(i));
  return g.induced(members);
}

}  // namespace pfpnet
