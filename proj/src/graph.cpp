#include "dsp/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>
#include <unordered_set>

#include "dsp/error.hpp"

namespace dsp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Circuit rotate_to(const Circuit& c, std::size_t vertex) {
  const auto it = std::find(c.vertices.begin(), c.vertices.end(), vertex);
  const auto k = static_cast<std::ptrdiff_t>(it - c.vertices.begin());
  Circuit out = c;
  std::rotate(out.vertices.begin(), out.vertices.begin() + k, out.vertices.end());
  std::rotate(out.edges.begin(), out.edges.begin() + k, out.edges.end());
  return out;
}

std::vector<std::size_t> sorted_edges(const Circuit& c) {
  std::vector<std::size_t> e = c.edges;
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

bool Circuit::is_cycle() const {
  std::vector<std::size_t> v = vertices;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const std::size_t other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
  return std::any_of(a.begin(), a.end(), [&](const Incidence& i) { return i.first == other; });
}

std::size_t Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertex_count() || v >= vertex_count()) throw InvalidInput("add_edge: vertex out of range");
  if (u == v) throw InvalidInput("add_edge: loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw InvalidInput("add_edge: parallel edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  const std::size_t id = edges_.size();
  edges_.emplace_back(std::min(u, v), std::max(u, v));
  adjacency_[u].emplace_back(v, id);
  adjacency_[v].emplace_back(u, id);
  return id;
}

bool is_valid_circuit(const Graph& g, const Circuit& c) {
  const std::size_t k = c.edges.size();
  if (k < 3 || c.vertices.size() != k) return false;
  std::vector<std::size_t> e = sorted_edges(c);
  if (std::adjacent_find(e.begin(), e.end()) != e.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (c.edges[i] >= g.edge_count()) return false;
    auto [a, b] = g.edges()[c.edges[i]];
    const std::size_t x = c.vertices[i], y = c.vertices[(i + 1) % k];
    if (!((a == x && b == y) || (a == y && b == x))) return false;
  }
  return true;
}

std::optional<Circuit> find_short_cycle(const Graph& g, std::size_t max_len) {
  const std::size_t n = g.vertex_count();
  std::optional<Circuit> best;
  std::size_t best_len = max_len + 1;
  std::vector<std::size_t> depth(n), parent(n), parent_edge(n);
  std::deque<std::size_t> queue;

  for (std::size_t root = 0; root < n; ++root) {
    if (g.degree(root) < 2) continue;
    std::fill(depth.begin(), depth.end(), kNone);
    depth[root] = 0;
    parent[root] = kNone;
    parent_edge[root] = kNone;
    queue.assign(1, root);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (2 * depth[u] + 1 >= best_len) break;
      for (auto [w, e] : g.neighbors(u)) {
        if (e == parent_edge[u]) continue;
        if (depth[w] == kNone) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          parent_edge[w] = e;
          queue.push_back(w);
          continue;
        }
        // non-tree edge u-w: climb to the common ancestor
        std::vector<std::size_t> up_u{u}, up_w{w};
        std::size_t a = u, b = w;
        while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
        while (depth[b] > depth[a]) up_w.push_back(b = parent[b]);
        while (a != b) {
          up_u.push_back(a = parent[a]);
          up_w.push_back(b = parent[b]);
        }
        const std::size_t len = up_u.size() + up_w.size() - 1;
        if (len >= best_len) continue;
        Circuit c;
        // lca ... u, then w ... (child of lca)
        for (std::size_t i = up_u.size(); i-- > 0;) c.vertices.push_back(up_u[i]);
        for (std::size_t i = 0; i + 1 < up_w.size(); ++i) c.vertices.push_back(up_w[i]);
        for (std::size_t i = up_u.size() - 1; i > 0; --i) c.edges.push_back(parent_edge[up_u[i - 1]]);
        c.edges.push_back(e);
        for (std::size_t i = 0; i + 1 < up_w.size(); ++i) c.edges.push_back(parent_edge[up_w[i]]);
        best_len = len;
        best = std::move(c);
      }
    }
  }
  return best;
}

void for_each_simple_cycle(const Graph& g, std::size_t max_len, const std::function<bool(const Circuit&)>& visit,
                           std::size_t cap) {
  const std::size_t n = g.vertex_count();
  std::vector<char> on_path(n, 0);
  Circuit path;
  std::size_t emitted = 0;
  bool stop = false;
  std::size_t start = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    for (auto [w, e] : g.neighbors(v)) {
      if (stop) return;
      if (w == start) {
        if (path.vertices.size() >= 3 && path.vertices[1] < path.vertices.back()) {
          path.edges.push_back(e);
          if (++emitted > cap) throw CapExceeded("for_each_simple_cycle: more than " + std::to_string(cap) + " cycles");
          if (!visit(path)) stop = true;
          path.edges.pop_back();
        }
        continue;
      }
      if (w < start || on_path[w] || path.vertices.size() >= max_len) continue;
      on_path[w] = 1;
      path.vertices.push_back(w);
      path.edges.push_back(e);
      dfs(w);
      path.vertices.pop_back();
      path.edges.pop_back();
      on_path[w] = 0;
    }
  };

  for (start = 0; start < n && !stop; ++start) {
    if (g.degree(start) < 2) continue;
    on_path[start] = 1;
    path.vertices.assign(1, start);
    path.edges.clear();
    dfs(start);
    on_path[start] = 0;
  }
}

std::optional<Circuit> find_even_circuit(const Graph& g, std::size_t max_len) {
  std::optional<Circuit> best;
  std::vector<std::size_t> best_key;
  auto offer = [&](Circuit c) {
    std::vector<std::size_t> key = sorted_edges(c);
    if (best && (c.length() > best->length() || (c.length() == best->length() && key >= best_key))) return;
    best_key = std::move(key);
    best = std::move(c);
  };

  std::vector<Circuit> odd;
  for_each_simple_cycle(g, max_len, [&](const Circuit& c) {
    if (c.length() % 2 == 0) {
      offer(c);
    } else if (c.length() + 3 <= max_len) {
      odd.push_back(c);
    }
    return true;
  });

  std::vector<std::vector<std::size_t>> odd_vertices, odd_edges;
  for (const Circuit& c : odd) {
    std::vector<std::size_t> v = c.vertices;
    std::sort(v.begin(), v.end());
    odd_vertices.push_back(std::move(v));
    odd_edges.push_back(sorted_edges(c));
  }
  for (std::size_t i = 0; i < odd.size(); ++i) {
    for (std::size_t j = i + 1; j < odd.size(); ++j) {
      const std::size_t len = odd[i].length() + odd[j].length();
      if (len > max_len || (best && len > best->length())) continue;
      std::vector<std::size_t> common;
      std::set_intersection(odd_vertices[i].begin(), odd_vertices[i].end(), odd_vertices[j].begin(),
                            odd_vertices[j].end(), std::back_inserter(common));
      if (common.empty()) continue;
      std::vector<std::size_t> shared;
      std::set_intersection(odd_edges[i].begin(), odd_edges[i].end(), odd_edges[j].begin(), odd_edges[j].end(),
                            std::back_inserter(shared));
      if (!shared.empty()) continue;
      Circuit a = rotate_to(odd[i], common.front());
      Circuit b = rotate_to(odd[j], common.front());
      a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
      a.edges.insert(a.edges.end(), b.edges.begin(), b.edges.end());
      offer(std::move(a));
    }
  }
  return best;
}

Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  const std::size_t possible = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > possible) throw InvalidInput("random_graph: too many edges for " + std::to_string(n) + " vertices");
  Graph g(n);
  std::unordered_set<std::size_t> used;
  std::uniform_int_distribution<std::size_t> pick(0, n ? n - 1 : 0);
  while (g.edge_count() < m) {
    std::size_t u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!used.insert(u * n + v).second) continue;
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace dsp
