#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace dsp {

/// Closed walk v_0, ..., v_{k-1} where edges[i] joins v_i and v_{(i+1) % k}.
/// Edges are distinct; vertices may repeat unless it is a cycle.
struct Circuit {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;

  std::size_t length() const { return edges.size(); }
  bool is_cycle() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Edge ids are assigned in
/// insertion order.
class Graph {
 public:
  using Incidence = std::pair<std::size_t, std::size_t>;  // (neighbor, edge id)

  explicit Graph(std::size_t vertex_count = 0);

  /// Throws InvalidInput on loops, parallel edges or unknown vertices.
  std::size_t add_edge(std::size_t u, std::size_t v);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<Incidence>& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  bool has_edge(std::size_t u, std::size_t v) const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Checks the Circuit invariants against g: length >= 3, distinct edges,
/// consecutive vertices joined by the stated edge.
bool is_valid_circuit(const Graph& g, const Circuit& c);

/// Breadth-first search from every vertex in index order. From each root the
/// first non-tree edges met give closed walks through the root; the shared
/// prefix of the two root paths is cut off, leaving a cycle. Returns the
/// shortest such cycle over all roots (earliest root on ties) if its length
/// is at most max_len.
std::optional<Circuit> find_short_cycle(const Graph& g, std::size_t max_len);

inline constexpr std::size_t kCycleEnumerationCap = 2'000'000;

/// Calls visit once per simple cycle of length <= max_len. Each cycle starts
/// at its smallest vertex and is oriented so its second vertex is smaller
/// than its last. Stops early when visit returns false. Throws CapExceeded
/// after `cap` cycles.
void for_each_simple_cycle(const Graph& g, std::size_t max_len, const std::function<bool(const Circuit&)>& visit,
                           std::size_t cap = kCycleEnumerationCap);

/// Shortest even circuit of length <= max_len: an even cycle, or two
/// edge-disjoint odd cycles through a common vertex traversed one after the
/// other from it. Ties go to the lexicographically smallest sorted edge ids.
std::optional<Circuit> find_even_circuit(const Graph& g, std::size_t max_len);

/// Uniform simple graph with n vertices and m edges.
Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng);

}  // namespace dsp
