#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsp/arithmetic.hpp"

namespace dsp {

/// A finite set A of distinct integers in [1, N], kept ascending, with each
/// element's factorization and the prime partition of N.
class SubsetProductSet {
 public:
  SubsetProductSet() = default;
  SubsetProductSet(Int n_limit, std::vector<Int> values);
  SubsetProductSet(PrimePartition partition, std::vector<Int> values);

  Int n_limit() const { return partition_.n_limit(); }
  const PrimePartition& partition() const { return partition_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::vector<Int> values() const;
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(Int value) const;

  /// Same partition, restricted to the given values (which must be members).
  SubsetProductSet subset(const std::vector<Int>& values) const;

 private:
  PrimePartition partition_;
  std::vector<Element> elements_;
};

/// Two disjoint subsets with equal products (or sums, for the additive check).
struct CollisionCertificate {
  std::vector<Int> subset_b;
  std::vector<Int> subset_c;

  friend bool operator==(const CollisionCertificate&, const CollisionCertificate&) = default;
};

struct ProofStep {
  enum class Kind {
    empty_set,
    forced_zero,
    component,
    full_rank,
    graph_structure,
    exhaustive_search,
  };
  Kind kind;
  std::vector<Int> values;     // element values the step talks about
  std::optional<Int> prime;    // row that forced a zero, when applicable
  std::uint64_t nodes = 0;     // search nodes spent by this step
  std::string detail;
};

std::string_view to_string(ProofStep::Kind kind);

struct Distinct {
  std::vector<ProofStep> trace;
};
struct Collision {
  CollisionCertificate certificate;
};
struct Inconclusive {
  std::uint64_t nodes_explored = 0;
  std::string stage;
};
using Verdict = std::variant<Distinct, Collision, Inconclusive>;

inline bool is_distinct(const Verdict& v) { return std::holds_alternative<Distinct>(v); }
inline bool is_collision(const Verdict& v) { return std::holds_alternative<Collision>(v); }
inline bool is_inconclusive(const Verdict& v) { return std::holds_alternative<Inconclusive>(v); }

/// Column-sparse integer matrix: rows are primes, columns are element values.
/// Column j lists (row index, exponent) pairs with nonzero exponent, sorted by row.
struct ExponentMatrix {
  using Column = std::vector<std::pair<std::size_t, unsigned>>;

  std::vector<Int> primes;
  std::vector<Int> values;
  std::vector<Column> columns;

  std::size_t rows() const { return primes.size(); }
  std::size_t cols() const { return values.size(); }
  unsigned at(std::size_t row, std::size_t col) const;
  bool empty() const { return values.empty(); }

  /// Keeps only the listed columns (by index) and drops rows left empty.
  ExponentMatrix select_columns(const std::vector<std::size_t>& keep) const;
};

/// value -> coefficient in {-1, +1}; absent means 0.
using SignedSupportVector = std::map<Int, int>;

ExponentMatrix exponent_matrix(const SubsetProductSet& set);
ExponentMatrix exponent_matrix(const std::vector<Element>& elements);

struct Elimination {
  ExponentMatrix reduced;
  std::vector<ProofStep> trace;
  std::size_t rounds = 0;
};

/// Deletes columns whose coefficient is forced to zero by a single row.
/// A column is forced when its entry in some row cannot be matched by any
/// signed combination of the other surviving entries of that row. Repeats
/// to a fixpoint; a round is one pass over all rows.
Elimination eliminate_unique_primes(const ExponentMatrix& m);

/// Connected components of the prime/element incidence structure, ordered by
/// their smallest element value. Columns without nonzero rows form singleton
/// components.
std::vector<ExponentMatrix> split_components(const ExponentMatrix& m);

/// Rational rank by fraction-free elimination.
std::size_t matrix_rank(const ExponentMatrix& m);

/// A proof step when the columns are linearly independent over Q.
std::optional<ProofStep> rank_certificate(const ExponentMatrix& m);

/// Every column has entries equal to 1 on one or two rows.
bool is_graph_shaped(const ExponentMatrix& m);

/// For graph-shaped matrices: columns are edges between primes, and a column
/// on a single prime is an edge to a free vertex carrying no equation.
/// Certifies a trivial signed kernel when every 2-edge-connected piece of this
/// graph is a bridge or an odd cycle avoiding the free vertex.
std::optional<ProofStep> structural_certificate(const ExponentMatrix& m);

struct SearchOptions {
  std::uint64_t budget = 10'000'000;
  std::size_t mitm_half_cap = 12;
};

struct KernelSearchResult {
  enum class Status { found, none, exhausted };
  Status status = Status::none;
  std::optional<SignedSupportVector> vector;
  std::uint64_t nodes = 0;
  bool used_meet_in_middle = false;
};

/// Complete search for a nonzero {-1,0,+1} vector in the integer kernel.
KernelSearchResult signed_kernel_search(const ExponentMatrix& m, const SearchOptions& options = {});

/// B gets the +1 entries, C the -1 entries, oriented so that B holds the
/// largest value of the support.
CollisionCertificate to_certificate(const SignedSupportVector& v);

struct VerifyOptions {
  SearchOptions search;
  bool structural_fast_path = true;
};

/// Elimination, component split, rank test, structural test and finally
/// signed kernel search per component. Collision certificates are checked
/// by exact multiplication before they are returned.
Verdict verify_distinct(const SubsetProductSet& set, const VerifyOptions& options = {});

inline constexpr std::size_t kDefaultOracleCap = 24;

/// Enumerates all 2^|A| subset products. Returns Distinct or the collision
/// that is least by (|B u C|, sorted values of B u C). Throws CapExceeded
/// above `cap` elements.
Verdict brute_force_distinct(const SubsetProductSet& set, std::size_t cap = kDefaultOracleCap);

BigInt product_of(const std::vector<Int>& values);

/// Disjoint, drawn from A, not both empty, equal exact products.
bool check_certificate(const CollisionCertificate& cert, const SubsetProductSet& set);

/// Additive analogue: decides whether distinct subsets of `values` have
/// distinct sums using a signed meet-in-the-middle. Inconclusive when the
/// half enumerations exceed the budget.
Verdict verify_distinct_sums(const std::vector<Int>& values, const SearchOptions& options = {});

bool check_sum_certificate(const CollisionCertificate& cert, const std::vector<Int>& values);

}  // namespace dsp
