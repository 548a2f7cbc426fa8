#include "dsp/verifier.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "dsp/error.hpp"

namespace dsp {

// ---------------------------------------------------------------------------
// SubsetProductSet

namespace {

std::vector<Element> build_elements(const PrimePartition& partition, std::vector<Int> values) {
  std::sort(values.begin(), values.end());
  if (auto dup = std::adjacent_find(values.begin(), values.end()); dup != values.end()) {
    throw InvalidInput("duplicate element " + std::to_string(*dup));
  }
  std::vector<Element> out;
  out.reserve(values.size());
  for (Int v : values) out.push_back(factorize(v, partition));
  return out;
}

}  // namespace

SubsetProductSet::SubsetProductSet(Int n_limit, std::vector<Int> values)
    : SubsetProductSet(classify_primes(n_limit), std::move(values)) {}

SubsetProductSet::SubsetProductSet(PrimePartition partition, std::vector<Int> values)
    : partition_(std::move(partition)), elements_(build_elements(partition_, std::move(values))) {}

std::vector<Int> SubsetProductSet::values() const {
  std::vector<Int> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.value);
  return out;
}

bool SubsetProductSet::contains(Int value) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), value,
                             [](const Element& e, Int v) { return e.value < v; });
  return it != elements_.end() && it->value == value;
}

SubsetProductSet SubsetProductSet::subset(const std::vector<Int>& values) const {
  for (Int v : values) {
    if (!contains(v)) throw InvalidInput("subset: " + std::to_string(v) + " is not a member");
  }
  return SubsetProductSet(partition_, values);
}

std::string_view to_string(ProofStep::Kind kind) {
  switch (kind) {
    case ProofStep::Kind::empty_set: return "empty_set";
    case ProofStep::Kind::forced_zero: return "forced_zero";
    case ProofStep::Kind::component: return "component";
    case ProofStep::Kind::full_rank: return "full_rank";
    case ProofStep::Kind::graph_structure: return "graph_structure";
    case ProofStep::Kind::exhaustive_search: return "exhaustive_search";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exponent matrix

unsigned ExponentMatrix::at(std::size_t row, std::size_t col) const {
  for (auto [r, e] : columns.at(col)) {
    if (r == row) return e;
  }
  return 0;
}

ExponentMatrix ExponentMatrix::select_columns(const std::vector<std::size_t>& keep) const {
  std::vector<bool> row_used(rows(), false);
  for (std::size_t c : keep) {
    for (auto [r, e] : columns[c]) row_used[r] = true;
  }
  std::vector<std::size_t> remap(rows(), 0);
  ExponentMatrix out;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (row_used[r]) {
      remap[r] = out.primes.size();
      out.primes.push_back(primes[r]);
    }
  }
  for (std::size_t c : keep) {
    out.values.push_back(values[c]);
    Column col;
    for (auto [r, e] : columns[c]) col.emplace_back(remap[r], e);
    out.columns.push_back(std::move(col));
  }
  return out;
}

ExponentMatrix exponent_matrix(const std::vector<Element>& elements) {
  ExponentMatrix m;
  for (const auto& el : elements) {
    for (auto [p, e] : el.exponents) m.primes.push_back(p);
  }
  std::sort(m.primes.begin(), m.primes.end());
  m.primes.erase(std::unique(m.primes.begin(), m.primes.end()), m.primes.end());
  for (const auto& el : elements) {
    m.values.push_back(el.value);
    ExponentMatrix::Column col;
    for (auto [p, e] : el.exponents) {
      auto row = std::lower_bound(m.primes.begin(), m.primes.end(), p) - m.primes.begin();
      col.emplace_back(static_cast<std::size_t>(row), e);
    }
    m.columns.push_back(std::move(col));
  }
  return m;
}

ExponentMatrix exponent_matrix(const SubsetProductSet& set) { return exponent_matrix(set.elements()); }

// ---------------------------------------------------------------------------
// Elimination

namespace {

// Whether `target` equals some sum of +-others[i] (each used at most once).
bool signed_sum_reachable(Int target, const std::vector<unsigned>& others) {
  Int total = 0;
  for (unsigned e : others) total += e;
  if (target > total) return false;
  const std::size_t width = 2 * total + 1;
  std::vector<char> reach(width, 0), next(width, 0);
  reach[total] = 1;
  for (unsigned e : others) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t s = 0; s < width; ++s) {
      if (!reach[s]) continue;
      next[s] = 1;
      if (s + e < width) next[s + e] = 1;
      if (s >= e) next[s - e] = 1;
    }
    reach.swap(next);
  }
  return reach[total + target] != 0;
}

}  // namespace

Elimination eliminate_unique_primes(const ExponentMatrix& m) {
  Elimination out;
  std::vector<bool> alive(m.cols(), true);
  // row -> (column, exponent)
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> rows(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (auto [r, e] : m.columns[c]) rows[r].emplace_back(c, e);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    ++out.rounds;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      std::vector<std::pair<std::size_t, unsigned>> live;
      for (auto [c, e] : rows[r]) {
        if (alive[c]) live.emplace_back(c, e);
      }
      if (live.empty()) continue;
      std::vector<std::size_t> forced;
      for (std::size_t i = 0; i < live.size(); ++i) {
        const unsigned target = live[i].second;
        bool twin = false;
        std::vector<unsigned> others;
        for (std::size_t j = 0; j < live.size(); ++j) {
          if (j == i) continue;
          if (live[j].second == target) twin = true;
          others.push_back(live[j].second);
        }
        if (twin) continue;
        if (!signed_sum_reachable(target, others)) forced.push_back(live[i].first);
      }
      for (std::size_t c : forced) {
        alive[c] = false;
        changed = true;
        ProofStep step{ProofStep::Kind::forced_zero, {m.values[c]}, m.primes[r], 0, {}};
        step.detail = live.size() == 1
                          ? "only element divisible by " + std::to_string(m.primes[r])
                          : "valuation at " + std::to_string(m.primes[r]) +
                                " cannot be balanced by the other elements";
        out.trace.push_back(std::move(step));
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (alive[c]) keep.push_back(c);
  }
  out.reduced = m.select_columns(keep);
  return out;
}

std::vector<ExponentMatrix> split_components(const ExponentMatrix& m) {
  std::vector<std::size_t> parent(m.cols());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::optional<std::size_t>> row_owner(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (auto [r, e] : m.columns[c]) {
      if (row_owner[r]) {
        auto a = find(c), b = find(*row_owner[r]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      } else {
        row_owner[r] = c;
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < m.cols(); ++c) groups[find(c)].push_back(c);
  std::vector<std::vector<std::size_t>> ordered;
  for (auto& [root, cols] : groups) ordered.push_back(cols);
  std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
    return m.values[a.front()] < m.values[b.front()];
  });
  std::vector<ExponentMatrix> out;
  out.reserve(ordered.size());
  for (const auto& cols : ordered) out.push_back(m.select_columns(cols));
  return out;
}

// ---------------------------------------------------------------------------
// Rank

std::size_t matrix_rank(const ExponentMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::vector<BigInt>> a(nr, std::vector<BigInt>(nc, 0));
  for (std::size_t c = 0; c < nc; ++c) {
    for (auto [r, e] : m.columns[c]) a[r][c] = e;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t pivot = rank;
    while (pivot < nr && a[pivot][c] == 0) ++pivot;
    if (pivot == nr) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < nr; ++i) {
      if (a[i][c] == 0) continue;
      const BigInt lead = a[rank][c], factor = a[i][c];
      BigInt g = 0;
      for (std::size_t k = c; k < nc; ++k) {
        a[i][k] = lead * a[i][k] - factor * a[rank][k];
        g = boost::multiprecision::gcd(g, a[i][k]);
      }
      if (g > 1) {
        for (std::size_t k = c; k < nc; ++k) a[i][k] /= g;
      }
    }
    ++rank;
  }
  return rank;
}

std::optional<ProofStep> rank_certificate(const ExponentMatrix& m) {
  if (m.cols() == 0) return std::nullopt;
  const auto rank = matrix_rank(m);
  if (rank != m.cols()) return std::nullopt;
  ProofStep step{ProofStep::Kind::full_rank, m.values, std::nullopt, 0, {}};
  step.detail = "rank " + std::to_string(rank) + " equals column count";
  return step;
}

// ---------------------------------------------------------------------------
// Structural path for graph-shaped components

bool is_graph_shaped(const ExponentMatrix& m) {
  for (const auto& col : m.columns) {
    if (col.empty() || col.size() > 2) return false;
    for (auto [r, e] : col) {
      if (e != 1) return false;
    }
  }
  return true;
}

namespace {

struct Multigraph {
  std::size_t vertex_count = 0;
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;  // (neighbor, edge id)
};

std::vector<bool> find_bridges(const Multigraph& g) {
  std::vector<bool> bridge(g.edges.size(), false);
  std::vector<int> disc(g.vertex_count, -1), low(g.vertex_count, 0);
  int timer = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t parent_edge) {
    disc[v] = low[v] = timer++;
    for (auto [w, id] : g.adj[v]) {
      if (id == parent_edge) continue;
      if (disc[w] == -1) {
        dfs(w, id);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) bridge[id] = true;
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if (disc[v] == -1) dfs(v, static_cast<std::size_t>(-1));
  }
  return bridge;
}

}  // namespace

std::optional<ProofStep> structural_certificate(const ExponentMatrix& m) {
  if (m.cols() == 0 || !is_graph_shaped(m)) return std::nullopt;
  Multigraph g;
  const std::size_t free_vertex = m.rows();
  g.vertex_count = m.rows() + 1;
  g.adj.resize(g.vertex_count);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto& col = m.columns[c];
    std::array<std::size_t, 2> ends{col[0].first, col.size() == 2 ? col[1].first : free_vertex};
    g.edges.push_back(ends);
    g.adj[ends[0]].emplace_back(ends[1], c);
    g.adj[ends[1]].emplace_back(ends[0], c);
  }
  const auto bridge = find_bridges(g);

  // Pieces left after deleting bridges must each be a single odd cycle.
  std::vector<std::size_t> degree(g.vertex_count, 0);
  std::vector<std::size_t> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    if (bridge[id]) continue;
    auto [a, b] = g.edges[id];
    ++degree[a];
    ++degree[b];
    auto ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> piece;  // root -> (vertices, edges)
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if (degree[v] == 0) continue;
    if (degree[v] != 2) return std::nullopt;
    if (v == free_vertex) return std::nullopt;
    ++piece[find(v)].first;
  }
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    if (!bridge[id]) ++piece[find(g.edges[id][0])].second;
  }
  std::size_t cycles = 0;
  for (auto& [root, counts] : piece) {
    if (counts.first != counts.second || counts.second % 2 == 0) return std::nullopt;
    ++cycles;
  }
  ProofStep step{ProofStep::Kind::graph_structure, m.values, std::nullopt, 0, {}};
  step.detail = "graph-shaped: " + std::to_string(cycles) + " odd cycle(s), remaining edges are bridges";
  return step;
}

// ---------------------------------------------------------------------------
// Signed kernel search

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_sums(const std::vector<std::int64_t>& sums, bool negate) {
  std::uint64_t h = 0x12345678ULL;
  for (auto s : sums) h = mix64(h ^ static_cast<std::uint64_t>(negate ? -s : s));
  return h;
}

std::uint64_t pow3(std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 3;
  return r;
}

constexpr std::array<int, 3> kDigitSign{0, 1, -1};

class MeetInMiddle {
 public:
  MeetInMiddle(const ExponentMatrix& m, std::size_t split) : m_(m), split_(split) {}

  KernelSearchResult run() {
    KernelSearchResult result;
    result.used_meet_in_middle = true;
    std::vector<std::int64_t> sums(m_.rows(), 0);
    enumerate(0, split_, 0, 1, sums, [&](std::uint32_t code) {
      left_.push_back({hash_sums(sums, false), code});
    });
    std::sort(left_.begin(), left_.end());
    result.nodes += left_.size();
    std::fill(sums.begin(), sums.end(), 0);
    std::optional<std::pair<std::uint32_t, std::uint32_t>> hit;
    enumerate(split_, m_.cols(), 0, 1, sums, [&](std::uint32_t code) {
      ++result.nodes;
      if (hit) return;
      const auto h = hash_sums(sums, true);
      auto it = std::lower_bound(left_.begin(), left_.end(), std::pair<std::uint64_t, std::uint32_t>{h, 0});
      for (; it != left_.end() && it->first == h; ++it) {
        if (it->second == 0 && code == 0) continue;
        if (left_sums(it->second) == negated(sums)) {
          hit = {it->second, code};
          return;
        }
      }
    });
    if (!hit) {
      result.status = KernelSearchResult::Status::none;
      return result;
    }
    SignedSupportVector v;
    decode(hit->first, 0, split_, v);
    decode(hit->second, split_, m_.cols(), v);
    result.status = KernelSearchResult::Status::found;
    result.vector = std::move(v);
    return result;
  }

 private:
  template <typename Leaf>
  void enumerate(std::size_t col, std::size_t end, std::uint32_t code, std::uint32_t place,
                 std::vector<std::int64_t>& sums, Leaf&& leaf) {
    if (col == end) {
      leaf(code);
      return;
    }
    for (std::uint32_t d = 0; d < 3; ++d) {
      const int s = kDigitSign[d];
      for (auto [r, e] : m_.columns[col]) sums[r] += s * static_cast<std::int64_t>(e);
      enumerate(col + 1, end, code + d * place, place * 3, sums, leaf);
      for (auto [r, e] : m_.columns[col]) sums[r] -= s * static_cast<std::int64_t>(e);
    }
  }

  std::vector<std::int64_t> left_sums(std::uint32_t code) const {
    std::vector<std::int64_t> sums(m_.rows(), 0);
    for (std::size_t c = 0; c < split_; ++c, code /= 3) {
      const int s = kDigitSign[code % 3];
      for (auto [r, e] : m_.columns[c]) sums[r] += s * static_cast<std::int64_t>(e);
    }
    return sums;
  }

  static std::vector<std::int64_t> negated(std::vector<std::int64_t> v) {
    for (auto& x : v) x = -x;
    return v;
  }

  void decode(std::uint32_t code, std::size_t begin, std::size_t end, SignedSupportVector& v) const {
    for (std::size_t c = begin; c < end; ++c, code /= 3) {
      if (const int s = kDigitSign[code % 3]; s != 0) v[m_.values[c]] = s;
    }
  }

  const ExponentMatrix& m_;
  std::size_t split_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> left_;
};

class Backtracker {
 public:
  Backtracker(const ExponentMatrix& m, std::uint64_t budget)
      : m_(m), budget_(budget), partial_(m.rows(), 0), capacity_(m.rows(), 0), sign_(m.cols(), 0) {
    for (const auto& col : m.columns) {
      for (auto [r, e] : col) capacity_[r] += e;
    }
    order_ = column_order();
  }

  KernelSearchResult run() {
    KernelSearchResult result;
    const bool found = descend(0);
    result.nodes = nodes_;
    if (found) {
      SignedSupportVector v;
      for (std::size_t c = 0; c < m_.cols(); ++c) {
        if (sign_[c] != 0) v[m_.values[c]] = sign_[c];
      }
      result.status = KernelSearchResult::Status::found;
      result.vector = std::move(v);
    } else {
      result.status = exhausted_ ? KernelSearchResult::Status::exhausted : KernelSearchResult::Status::none;
    }
    return result;
  }

 private:
  // Greedy order that keeps few rows open at a time.
  std::vector<std::size_t> column_order() const {
    std::vector<std::size_t> order;
    std::vector<bool> used(m_.cols(), false), touched(m_.rows(), false);
    for (std::size_t step = 0; step < m_.cols(); ++step) {
      std::size_t best = m_.cols();
      std::pair<long, long> best_key{0, 0};
      for (std::size_t c = 0; c < m_.cols(); ++c) {
        if (used[c]) continue;
        long shared = 0, fresh = 0;
        for (auto [r, e] : m_.columns[c]) (touched[r] ? shared : fresh) += 1;
        std::pair<long, long> key{shared, -fresh};
        if (best == m_.cols() || key > best_key) {
          best = c;
          best_key = key;
        }
      }
      used[best] = true;
      for (auto [r, e] : m_.columns[best]) touched[r] = true;
      order.push_back(best);
    }
    return order;
  }

  bool descend(std::size_t depth) {
    if (depth == order_.size()) return nonzero_ > 0;
    const std::size_t c = order_[depth];
    const auto& col = m_.columns[c];
    for (auto [r, e] : col) capacity_[r] -= e;
    for (int s : {0, 1, -1}) {
      if (s == -1 && nonzero_ == 0) continue;  // first nonzero is +1 by symmetry
      if (++nodes_ > budget_) {
        exhausted_ = true;
        break;
      }
      bool ok = true;
      for (auto [r, e] : col) {
        partial_[r] += s * static_cast<std::int64_t>(e);
        if (std::abs(partial_[r]) > static_cast<std::int64_t>(capacity_[r])) ok = false;
      }
      sign_[c] = s;
      if (s != 0) ++nonzero_;
      if (ok && descend(depth + 1)) return true;
      if (s != 0) --nonzero_;
      sign_[c] = 0;
      for (auto [r, e] : col) partial_[r] -= s * static_cast<std::int64_t>(e);
      if (exhausted_) break;
    }
    for (auto [r, e] : col) capacity_[r] += e;
    return false;
  }

  const ExponentMatrix& m_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::size_t nonzero_ = 0;
  std::vector<std::int64_t> partial_;
  std::vector<std::uint64_t> capacity_;
  std::vector<int> sign_;
  std::vector<std::size_t> order_;
};

}  // namespace

KernelSearchResult signed_kernel_search(const ExponentMatrix& m, const SearchOptions& options) {
  if (m.cols() == 0) return {};
  const std::size_t left = m.cols() / 2, right = m.cols() - left;
  if (m.cols() <= 2 * options.mitm_half_cap && right <= 20 && pow3(left) + pow3(right) <= options.budget) {
    return MeetInMiddle(m, left).run();
  }
  return Backtracker(m, options.budget).run();
}

CollisionCertificate to_certificate(const SignedSupportVector& v) {
  CollisionCertificate cert;
  for (auto [value, sign] : v) (sign > 0 ? cert.subset_b : cert.subset_c).push_back(value);
  if (!v.empty() && v.rbegin()->second < 0) std::swap(cert.subset_b, cert.subset_c);
  return cert;
}

// ---------------------------------------------------------------------------
// Ladder

Verdict verify_distinct(const SubsetProductSet& set, const VerifyOptions& options) {
  Distinct proof;
  if (set.empty()) {
    proof.trace.push_back({ProofStep::Kind::empty_set, {}, std::nullopt, 0, "only the empty subset exists"});
    return proof;
  }
  auto elimination = eliminate_unique_primes(exponent_matrix(set));
  proof.trace = std::move(elimination.trace);

  std::uint64_t nodes_total = 0;
  std::optional<Inconclusive> stalled;
  const auto components = split_components(elimination.reduced);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& comp = components[i];
    proof.trace.push_back({ProofStep::Kind::component, comp.values, std::nullopt, 0,
                           "component " + std::to_string(i) + " on " + std::to_string(comp.rows()) + " prime(s)"});
    if (auto step = rank_certificate(comp)) {
      proof.trace.push_back(std::move(*step));
      continue;
    }
    if (options.structural_fast_path) {
      if (auto step = structural_certificate(comp)) {
        proof.trace.push_back(std::move(*step));
        continue;
      }
    }
    auto search = signed_kernel_search(comp, options.search);
    nodes_total += search.nodes;
    switch (search.status) {
      case KernelSearchResult::Status::found: {
        auto cert = to_certificate(*search.vector);
        if (!check_certificate(cert, set)) {
          throw InvariantViolation("kernel vector does not yield an exact product collision");
        }
        return Collision{std::move(cert)};
      }
      case KernelSearchResult::Status::none:
        proof.trace.push_back({ProofStep::Kind::exhaustive_search, comp.values, std::nullopt, search.nodes,
                               search.used_meet_in_middle ? "meet-in-the-middle found no signed kernel vector"
                                                          : "backtracking found no signed kernel vector"});
        break;
      case KernelSearchResult::Status::exhausted:
        if (!stalled) {
          stalled = Inconclusive{0, "signed_kernel_search on component " + std::to_string(i) + " (" +
                                        std::to_string(comp.cols()) + " columns)"};
        }
        break;
    }
  }
  if (stalled) {
    stalled->nodes_explored = nodes_total;
    return *stalled;
  }
  return proof;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kMersenne61);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

}  // namespace

BigInt product_of(const std::vector<Int>& values) {
  BigInt acc = 1;
  for (Int v : values) acc *= v;
  return acc;
}

Verdict brute_force_distinct(const SubsetProductSet& set, std::size_t cap) {
  const auto values = set.values();
  const std::size_t n = values.size();
  if (n > cap) {
    throw CapExceeded("brute_force_distinct: " + std::to_string(n) + " elements exceeds cap " + std::to_string(cap));
  }
  const std::uint32_t total = 1U << n;
  struct Entry {
    std::uint64_t fingerprint;
    std::uint32_t mask;
  };
  std::vector<Entry> table(total);
  table[0] = {1, 0};
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
    table[mask] = {mulmod61(table[mask & (mask - 1)].fingerprint, values[low] % kMersenne61), mask};
  }
  std::sort(table.begin(), table.end(), [](const Entry& a, const Entry& b) {
    return a.fingerprint != b.fingerprint ? a.fingerprint < b.fingerprint : a.mask < b.mask;
  });

  auto mask_product = [&](std::uint32_t mask) {
    BigInt acc = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) acc *= values[i];
    }
    return acc;
  };
  auto key_less = [&](std::uint32_t a, std::uint32_t b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    for (std::size_t i = 0; i < n; ++i) {  // lexicographic on ascending member lists
      const bool ia = a >> i & 1U, ib = b >> i & 1U;
      if (ia != ib) return ia;
    }
    return false;
  };

  std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
  int best_size = static_cast<int>(n) + 1;
  for (std::size_t lo = 0; lo < table.size();) {
    std::size_t hi = lo + 1;
    while (hi < table.size() && table[hi].fingerprint == table[lo].fingerprint) ++hi;
    if (hi - lo > 1) {
      std::vector<std::uint32_t> group;
      for (std::size_t k = lo; k < hi; ++k) group.push_back(table[k].mask);
      std::stable_sort(group.begin(), group.end(), [](std::uint32_t a, std::uint32_t b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
      });
      std::vector<std::optional<BigInt>> exact(group.size());
      auto product_at = [&](std::size_t k) -> const BigInt& {
        if (!exact[k]) exact[k] = mask_product(group[k]);
        return *exact[k];
      };
      for (std::size_t i = 0; i < group.size(); ++i) {
        const int pi = __builtin_popcount(group[i]);
        if (2 * pi > best_size) break;
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          const int pj = __builtin_popcount(group[j]);
          if (pi + pj > best_size) break;
          if (group[i] & group[j]) continue;
          const std::uint32_t support = group[i] | group[j];
          if (best && !key_less(support, best->first | best->second)) continue;
          if (product_at(i) != product_at(j)) continue;
          best = {group[i], group[j]};
          best_size = pi + pj;
        }
      }
    }
    lo = hi;
  }
  if (!best) return Distinct{{{ProofStep::Kind::exhaustive_search, values, std::nullopt, total,
                               "all " + std::to_string(total) + " subset products differ"}}};
  SignedSupportVector v;
  for (std::size_t i = 0; i < n; ++i) {
    if (best->first >> i & 1U) v[values[i]] = 1;
    if (best->second >> i & 1U) v[values[i]] = -1;
  }
  return Collision{to_certificate(v)};
}

bool check_certificate(const CollisionCertificate& cert, const SubsetProductSet& set) {
  if (cert.subset_b.empty() && cert.subset_c.empty()) return false;
  std::set<Int> seen;
  for (const auto* side : {&cert.subset_b, &cert.subset_c}) {
    for (Int v : *side) {
      if (!set.contains(v) || !seen.insert(v).second) return false;
    }
  }
  return product_of(cert.subset_b) == product_of(cert.subset_c);
}

// ---------------------------------------------------------------------------
// Additive variant

Verdict verify_distinct_sums(const std::vector<Int>& input, const SearchOptions& options) {
  std::vector<Int> values = input;
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw InvalidInput("verify_distinct_sums: duplicate value");
  }
  if (!values.empty() && values.front() == 0) throw InvalidInput("verify_distinct_sums: values must be positive");
  if (values.empty()) return Distinct{{{ProofStep::Kind::empty_set, {}, std::nullopt, 0, "only the empty subset exists"}}};

  const std::size_t n = values.size();
  const std::size_t left = n / 2, right = n - left;
  if (right > 20 || pow3(left) + pow3(right) > options.budget) {
    return Inconclusive{0, "signed meet-in-the-middle over " + std::to_string(n) + " values"};
  }
  using Sum = __int128;
  auto enumerate = [&](std::size_t begin, std::size_t end, auto&& leaf) {
    std::function<void(std::size_t, std::uint32_t, std::uint32_t, Sum)> rec =
        [&](std::size_t i, std::uint32_t code, std::uint32_t place, Sum sum) {
          if (i == end) {
            leaf(code, sum);
            return;
          }
          for (std::uint32_t d = 0; d < 3; ++d) {
            rec(i + 1, code + d * place, place * 3, sum + kDigitSign[d] * static_cast<Sum>(values[i]));
          }
        };
    rec(begin, 0, 1, 0);
  };
  std::vector<std::pair<Sum, std::uint32_t>> table;
  enumerate(0, left, [&](std::uint32_t code, Sum s) { table.emplace_back(s, code); });
  std::sort(table.begin(), table.end());
  std::uint64_t nodes = table.size();
  std::optional<std::pair<std::uint32_t, std::uint32_t>> hit;
  enumerate(left, n, [&](std::uint32_t code, Sum s) {
    ++nodes;
    if (hit) return;
    auto it = std::lower_bound(table.begin(), table.end(), std::pair<Sum, std::uint32_t>{-s, 0});
    for (; it != table.end() && it->first == -s; ++it) {
      if (it->second == 0 && code == 0) continue;
      hit = {it->second, code};
      return;
    }
  });
  if (!hit) {
    return Distinct{{{ProofStep::Kind::exhaustive_search, values, std::nullopt, nodes,
                      "no signed zero sum among " + std::to_string(n) + " values"}}};
  }
  SignedSupportVector v;
  auto decode = [&](std::uint32_t code, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i, code /= 3) {
      if (const int s = kDigitSign[code % 3]; s != 0) v[values[i]] = s;
    }
  };
  decode(hit->first, 0, left);
  decode(hit->second, left, n);
  return Collision{to_certificate(v)};
}

bool check_sum_certificate(const CollisionCertificate& cert, const std::vector<Int>& values) {
  if (cert.subset_b.empty() && cert.subset_c.empty()) return false;
  std::set<Int> pool(values.begin(), values.end()), seen;
  BigInt sb = 0, sc = 0;
  for (Int v : cert.subset_b) {
    if (!pool.count(v) || !seen.insert(v).second) return false;
    sb += v;
  }
  for (Int v : cert.subset_c) {
    if (!pool.count(v) || !seen.insert(v).second) return false;
    sc += v;
  }
  return sb == sc;
}

}  // namespace dsp
