#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dsp {

using Int = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

/// Primes up to `limit`, ascending.
std::vector<Int> sieve_primes(Int limit);

/// Number of primes <= x.
Int prime_pi(Int x);

/// floor(x^(1/k)) by exact integer comparison.
Int integer_root(Int x, unsigned k);

/// true iff base^exp <= limit, without overflow.
bool power_at_most(Int base, unsigned exp, Int limit);

enum class PrimeClass { small, medium, large };

std::string_view to_string(PrimeClass c);

/// Primes <= N split by the cube and square tests: small when p^3 <= N,
/// medium when p^2 <= N < p^3, large when p <= N < p^2.
class PrimePartition {
 public:
  PrimePartition() = default;

  /// A partition with explicitly listed classes. Used for hand-built graph
  /// examples whose prime classes are stated rather than derived from N.
  /// Unlisted primes are unclassified.
  static PrimePartition custom(Int n_limit, std::vector<Int> small, std::vector<Int> medium,
                               std::vector<Int> large);

  Int n_limit() const { return n_limit_; }
  const std::vector<Int>& small() const { return small_; }
  const std::vector<Int>& medium() const { return medium_; }
  const std::vector<Int>& large() const { return large_; }
  bool is_custom() const { return custom_; }

  std::optional<PrimeClass> class_of(Int p) const;

  /// All classified primes, ascending.
  std::vector<Int> all_primes() const;

  friend bool operator==(const PrimePartition&, const PrimePartition&) = default;

 private:
  friend PrimePartition classify_primes(Int n);

  Int n_limit_ = 0;
  std::vector<Int> small_;
  std::vector<Int> medium_;
  std::vector<Int> large_;
  bool custom_ = false;
};

PrimePartition classify_primes(Int n);

/// Sparse prime -> exponent map. Entries are kept sorted by prime and no
/// stored exponent is zero.
class ExponentVector {
 public:
  using Entry = std::pair<Int, unsigned>;

  ExponentVector() = default;
  explicit ExponentVector(std::vector<Entry> entries);

  unsigned operator[](Int p) const;
  void add(Int p, unsigned e);
  void add(const ExponentVector& other);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Sum of exponents.
  unsigned mass() const;

  BigInt product() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<Entry> entries_;
};

struct Element {
  Int value = 1;
  ExponentVector exponents;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Factorization of n in [1, partition.n_limit()] by trial division.
/// Throws InvalidInput when n is out of range.
Element factorize(Int n, const PrimePartition& partition);

/// Factorization without a range check.
Element factorize(Int n);

enum class Scope { small, medium, large, medium_and_large };

ExponentVector valuation_projection(const Element& e, const PrimePartition& partition, Scope scope);

/// |small primes| * ln(N log2 N + 1): the log of the count of possible
/// small-prime valuation vectors over products of subsets of [N].
double small_valuation_log_bound(Int n);

}  // namespace dsp
