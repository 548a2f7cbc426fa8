#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsp/arithmetic.hpp"

namespace dsp {

struct SearchResult {
  Int parameter = 0;  // N for f and h, k for g
  Int value = 0;
  std::vector<Int> witness;
  std::uint64_t nodes_explored = 0;
  bool optimal = true;  // false when the budget ran out; value is then a lower bound (f, h) or 0 (g)
};

struct ExactOptions {
  std::uint64_t node_budget = 200'000'000;  // per root subtree for f and h, total for g
  Int cap = 25;                              // largest N (f, h) or k (g) accepted
  unsigned threads = 1;
};

inline constexpr Int kExactProductHardCap = 33;  // products of a witness stay below 2^127
inline constexpr Int kExactSumHardCap = 8;

/// Largest subset of [N] with distinct subset products, lexicographically
/// smallest among the largest. Throws CapExceeded when N > options.cap.
SearchResult exact_f(Int n, const ExactOptions& options = {});

/// As exact_f over squarefree candidates.
SearchResult exact_h(Int n, const ExactOptions& options = {});

/// Smallest m with a k-subset of [m] having distinct subset sums; the
/// witness is the lexicographically smallest such subset containing m.
SearchResult exact_g(Int k, const ExactOptions& options = {.node_budget = 200'000'000, .cap = 6, .threads = 1});

struct ComparisonRow {
  std::string kind;
  Int size = 0;
  std::optional<Int> exact;  // f(N) when N is within the exact cap
  std::optional<long long> gap;
};

/// One row per construction; every construction is empty below its domain.
std::vector<ComparisonRow> compare_with_constructions(Int n, const ExactOptions& options = {});

}  // namespace dsp
