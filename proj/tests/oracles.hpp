#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's search or elimination code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Int = std::uint64_t;
using Big = boost::multiprecision::cpp_int;

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline Int count_primes(Int x) {
  Int c = 0;
  for (Int n = 2; n <= x; ++n) c += is_prime(n);
  return c;
}

inline bool squarefree(Int n) {
  for (Int d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

/// All 2^n subset products inserted into a set; distinct iff none repeats.
inline bool distinct_products(const std::vector<Int>& a) {
  std::set<Big> seen;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    Big p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) p *= a[i];
    }
    if (!seen.insert(p).second) return false;
  }
  return true;
}

inline bool distinct_sums(const std::vector<Int>& a) {
  std::set<Big> seen;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    Big s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += a[i];
    }
    if (!seen.insert(s).second) return false;
  }
  return true;
}

/// Dense integer matrix (rows x cols) signed kernel test by enumerating all
/// 3^cols sign vectors.
inline bool has_signed_kernel_vector(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  std::vector<int> s(cols, -1);
  while (true) {
    bool nonzero = std::any_of(s.begin(), s.end(), [](int x) { return x != 0; });
    if (nonzero) {
      bool zero = true;
      for (const auto& row : rows) {
        long acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc += row[c] * s[c];
        if (acc != 0) {
          zero = false;
          break;
        }
      }
      if (zero) return true;
    }
    std::size_t i = 0;
    while (i < cols && s[i] == 1) s[i++] = -1;
    if (i == cols) return false;
    ++s[i];
  }
}

/// Largest subset of candidates with distinct subset products, scanning all
/// subsets; ties broken toward the lexicographically smallest sorted list.
inline std::vector<Int> max_distinct_subset(const std::vector<Int>& candidates) {
  const std::size_t n = candidates.size();
  std::vector<Int> best;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<Int> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) pick.push_back(candidates[i]);
    }
    if (have && pick.size() < best.size()) continue;
    if (!distinct_products(pick)) continue;
    if (!have || pick.size() > best.size() || pick < best) {
      best = pick;
      have = true;
    }
  }
  return best;
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Length of the shortest cycle, by deleting each edge in turn and finding
/// the shortest path between its endpoints. 0 when acyclic.
inline std::size_t girth(std::size_t n, const EdgeList& edges) {
  std::size_t best = 0;
  for (std::size_t skip = 0; skip < edges.size(); ++skip) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<std::size_t> frontier{edges[skip].first};
    dist[edges[skip].first] = 0;
    while (!frontier.empty() && dist[edges[skip].second] == SIZE_MAX) {
      std::vector<std::size_t> next;
      for (std::size_t u : frontier) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
          if (e == skip) continue;
          std::size_t w;
          if (edges[e].first == u) w = edges[e].second;
          else if (edges[e].second == u) w = edges[e].first;
          else continue;
          if (dist[w] == SIZE_MAX) {
            dist[w] = dist[u] + 1;
            next.push_back(w);
          }
        }
      }
      frontier = std::move(next);
    }
    const std::size_t d = dist[edges[skip].second];
    if (d != SIZE_MAX && (best == 0 || d + 1 < best)) best = d + 1;
  }
  return best;
}

/// Every closed walk with pairwise distinct edges and length in [3, max_len],
/// reported as its edge sequence through visit(edges, vertices). Each circuit
/// appears once per starting vertex and direction.
template <class Visit>
void for_each_closed_trail(std::size_t n, const EdgeList& edges, std::size_t max_len, Visit visit) {
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> trail, verts;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t start, std::size_t at) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (used[e]) continue;
      std::size_t w;
      if (edges[e].first == at) w = edges[e].second;
      else if (edges[e].second == at) w = edges[e].first;
      else continue;
      used[e] = 1;
      trail.push_back(e);
      if (w == start && trail.size() >= 3) visit(trail, verts);
      if (trail.size() < max_len) {
        verts.push_back(w);
        go(start, w);
        verts.pop_back();
      }
      trail.pop_back();
      used[e] = 0;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    verts.assign(1, s);
    go(s, s);
  }
}

/// Shortest closed trail of even length <= max_len; 0 when none.
inline std::size_t shortest_even_circuit(std::size_t n, const EdgeList& edges, std::size_t max_len) {
  std::size_t best = 0;
  for_each_closed_trail(n, edges, max_len, [&](const std::vector<std::size_t>& t, const std::vector<std::size_t>&) {
    if (t.size() % 2 == 0 && (best == 0 || t.size() < best)) best = t.size();
  });
  return best;
}

/// Vertex sets of all odd cycles of length <= max_len.
inline std::set<std::vector<std::size_t>> odd_cycles(std::size_t n, const EdgeList& edges, std::size_t max_len) {
  std::set<std::vector<std::size_t>> out;
  for_each_closed_trail(n, edges, max_len, [&](const std::vector<std::size_t>& t, const std::vector<std::size_t>& v) {
    if (t.size() % 2 == 0) return;
    std::vector<std::size_t> s = v;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return;
    out.insert(s);
  });
  return out;
}

}  // namespace oracle
