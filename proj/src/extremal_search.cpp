#include "dsp/extremal_search.hpp"

#include <atomic>
#include <bitset>
#include <thread>

#include "dsp/constructions.hpp"
#include "dsp/error.hpp"
#include "dsp/verifier.hpp"

namespace dsp {

namespace {

using u128 = unsigned __int128;

struct RootResult {
  std::vector<Int> best;
  long long best_size = -1;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

class ProductSearch {
 public:
  ProductSearch(const std::vector<Int>& candidates, long long floor, std::uint64_t budget)
      : cand_(candidates), budget_(budget) {
    out_.best_size = floor;
  }

  RootResult run(std::size_t root) {
    cur_.assign(1, cand_[root]);
    dfs(root + 1, {1, cand_[root]});
    return out_;
  }

 private:
  void dfs(std::size_t from, const std::vector<u128>& products) {
    if (++out_.nodes > budget_) {
      out_.exhausted = true;
      return;
    }
    if (static_cast<long long>(cur_.size()) > out_.best_size) {
      out_.best_size = static_cast<long long>(cur_.size());
      out_.best = cur_;
    }
    std::vector<u128> scaled(products.size()), merged;
    for (std::size_t i = from; i < cand_.size(); ++i) {
      if (static_cast<long long>(cur_.size() + cand_.size() - i) <= out_.best_size) return;
      const u128 a = cand_[i];
      for (std::size_t j = 0; j < products.size(); ++j) scaled[j] = products[j] * a;
      merged.clear();
      merged.reserve(2 * products.size());
      std::size_t x = 0, y = 0;
      bool clash = false;
      while (x < products.size() && y < scaled.size()) {
        if (products[x] == scaled[y]) {
          clash = true;
          break;
        }
        merged.push_back(products[x] < scaled[y] ? products[x++] : scaled[y++]);
      }
      if (clash) continue;
      merged.insert(merged.end(), products.begin() + static_cast<std::ptrdiff_t>(x), products.end());
      merged.insert(merged.end(), scaled.begin() + static_cast<std::ptrdiff_t>(y), scaled.end());
      cur_.push_back(cand_[i]);
      dfs(i + 1, merged);
      cur_.pop_back();
      if (out_.exhausted) return;
    }
  }

  const std::vector<Int>& cand_;
  std::uint64_t budget_;
  std::vector<Int> cur_;
  RootResult out_;
};

bool is_squarefree(Int n) {
  for (Int p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

SearchResult product_search(Int n, bool squarefree, const ExactOptions& options) {
  const Int limit = std::min(options.cap, kExactProductHardCap);
  if (n > limit) {
    throw CapExceeded("exact search: N = " + std::to_string(n) + " exceeds the cap " + std::to_string(limit));
  }
  std::vector<Int> cand;
  for (Int v = 2; v <= n; ++v) {
    if (!squarefree || is_squarefree(v)) cand.push_back(v);
  }
  // primes (and their squares for f) have distinct subset products
  std::vector<Int> known;
  if (n >= 2) {
    known = squarefree ? sieve_primes(n) : erdos_basic(n).set.values();
  }
  const auto floor = static_cast<long long>(known.size()) - 1;

  std::vector<RootResult> roots(cand.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < cand.size();) {
      roots[r] = ProductSearch(cand, floor, options.node_budget).run(r);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(cand.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult result;
  result.parameter = n;
  long long best = -1;
  for (const RootResult& r : roots) {
    result.nodes_explored += r.nodes;
    if (r.exhausted) result.optimal = false;
    if (r.best_size > best && !r.best.empty()) {
      best = r.best_size;
      result.witness = r.best;
    }
  }
  if (static_cast<long long>(result.witness.size()) < static_cast<long long>(known.size())) result.witness = known;
  result.value = result.witness.size();
  if (!is_distinct(verify_distinct(SubsetProductSet(std::max<Int>(n, 1), result.witness)))) {
    throw InvariantViolation("exact search: witness failed verification");
  }
  return result;
}

constexpr std::size_t kSumBits = 1024;

class SumSearch {
 public:
  SumSearch(Int k, Int m, std::uint64_t budget, std::uint64_t& nodes) : k_(k), m_(m), budget_(budget), nodes_(nodes) {}

  bool exhausted = false;
  std::vector<Int> found;

  bool run() {
    std::bitset<kSumBits> sums;
    sums.set(0);
    return dfs(1, sums);
  }

 private:
  bool add(std::bitset<kSumBits>& sums, Int a) const {
    const auto shifted = sums << a;
    if ((sums & shifted).any()) return false;
    sums |= shifted;
    return true;
  }

  bool dfs(Int from, const std::bitset<kSumBits>& sums) {
    if (++nodes_ > budget_) {
      exhausted = true;
      return false;
    }
    if (cur_.size() + 1 == k_) {
      std::bitset<kSumBits> s = sums;
      if (!add(s, m_)) return false;
      std::vector<Int> candidate = cur_;
      candidate.push_back(m_);
      if (!is_distinct(verify_distinct_sums(candidate))) return false;
      found = std::move(candidate);
      return true;
    }
    for (Int a = from; a < m_; ++a) {
      if (cur_.size() + 1 + (m_ - a) < k_) return false;
      std::bitset<kSumBits> s = sums;
      if (!add(s, a)) continue;
      cur_.push_back(a);
      const bool done = dfs(a + 1, s);
      cur_.pop_back();
      if (done || exhausted) return done;
    }
    return false;
  }

  Int k_, m_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::vector<Int> cur_;
};

}  // namespace

SearchResult exact_f(Int n, const ExactOptions& options) { return product_search(n, false, options); }

SearchResult exact_h(Int n, const ExactOptions& options) { return product_search(n, true, options); }

SearchResult exact_g(Int k, const ExactOptions& options) {
  const Int limit = std::min(options.cap, kExactSumHardCap);
  if (k == 0) throw InvalidInput("exact_g: k must be positive");
  if (k > limit) throw CapExceeded("exact_g: k = " + std::to_string(k) + " exceeds the cap " + std::to_string(limit));
  SearchResult result;
  result.parameter = k;
  for (Int m = k;; ++m) {
    SumSearch search(k, m, options.node_budget, result.nodes_explored);
    if (search.run()) {
      result.value = m;
      result.witness = search.found;
      return result;
    }
    if (search.exhausted) {
      result.optimal = false;
      return result;
    }
  }
}

std::vector<ComparisonRow> compare_with_constructions(Int n, const ExactOptions& options) {
  std::optional<Int> exact;
  if (n <= std::min(options.cap, kExactProductHardCap)) {
    const SearchResult r = exact_f(n, options);
    if (r.optimal) exact = r.value;
  }
  std::vector<ComparisonRow> rows;
  auto add = [&](std::string kind, Int size) {
    ComparisonRow row{std::move(kind), size, exact, std::nullopt};
    if (exact) row.gap = static_cast<long long>(*exact) - static_cast<long long>(size);
    rows.push_back(std::move(row));
  };
  add("erdos", erdos_basic(n).set.size());
  add("gk-chain", gk_chain(n).set.size());
  add("triples", triples_construction(n).set.size());
  add("tree", n >= 4 ? tree_construction(n).set.size() : 0);
  add("squarefree", squarefree_construction(n).set.size());
  return rows;
}

}  // namespace dsp
