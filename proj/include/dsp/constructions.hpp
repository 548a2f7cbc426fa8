#pragma once

#include <map>
#include <string>
#include <vector>

#include "dsp/arithmetic.hpp"
#include "dsp/verifier.hpp"

namespace dsp {

struct EkRow {
  unsigned k = 0;
  Int g = 0;
  std::vector<Int> elements;  // ascending, max == g

  friend bool operator==(const EkRow&, const EkRow&) = default;
};

/// Rows of (k, g(k), E_k) where E_k is a k-subset of [g(k)] with distinct
/// subset sums. Construction validates every row; g and k strictly increase.
class EkTable {
 public:
  EkTable() = default;
  explicit EkTable(std::vector<EkRow> rows);

  const std::vector<EkRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

 private:
  std::vector<EkRow> rows_;
};

EkTable default_ek_table();

struct ConstructionOutput {
  SubsetProductSet set;
  std::string kind;
  Int predicted_count = 0;
  std::map<std::string, std::string> parameters;
  std::vector<Int> dropped_primes;
};

ConstructionOutput erdos_basic(Int n);

/// Each prime p <= N takes the last row with p^g <= N and contributes
/// {p^e : e in E_k}.
ConstructionOutput gk_chain(Int n, const EkTable& table = default_ek_table());

ConstructionOutput triples_construction(Int n);

enum class TreeStrategy { path_ascending, star_on_smallest };

std::string_view to_string(TreeStrategy s);

/// Throws InvalidInput when no prime has p^2 <= N.
ConstructionOutput tree_construction(Int n, TreeStrategy strategy = TreeStrategy::path_ascending);

struct SquarefreePair {
  Int q = 0;  // larger prime of the pair
  Int r = 0;
  Int p = 0;  // assigned large prime, 0 when unmatched

  friend bool operator==(const SquarefreePair&, const SquarefreePair&) = default;
};

/// Primes <= floor(sqrt N) sorted descending and paired consecutively; each
/// pair takes the largest unused prime p > sqrt N with p * q <= N.
std::vector<SquarefreePair> squarefree_pairing(Int n);

/// Throws InvalidInput unless 0 < epsilon < 1/6. Epsilon is recorded in the
/// parameters and does not change the set.
ConstructionOutput squarefree_construction(Int n, double epsilon = 0.05);

}  // namespace dsp
