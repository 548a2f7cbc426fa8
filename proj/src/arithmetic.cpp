#include "dsp/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dsp/error.hpp"

namespace dsp {

std::vector<Int> sieve_primes(Int limit) {
  std::vector<Int> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (Int i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (Int j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

Int prime_pi(Int x) { return sieve_primes(x).size(); }

bool power_at_most(Int base, unsigned exp, Int limit) {
  Int acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && acc > limit / base) return false;
    acc *= base;
  }
  return acc <= limit;
}

Int integer_root(Int x, unsigned k) {
  if (k == 0) throw InvalidInput("integer_root: k must be positive");
  if (k == 1 || x < 2) return x;
  auto guess = static_cast<Int>(std::pow(static_cast<long double>(x), 1.0L / k));
  while (guess > 0 && !power_at_most(guess, k, x)) --guess;
  while (power_at_most(guess + 1, k, x)) ++guess;
  return guess;
}

std::string_view to_string(PrimeClass c) {
  switch (c) {
    case PrimeClass::small: return "small";
    case PrimeClass::medium: return "medium";
    case PrimeClass::large: return "large";
  }
  return "?";
}

PrimePartition classify_primes(Int n) {
  PrimePartition part;
  part.n_limit_ = n;
  for (Int p : sieve_primes(n)) {
    if (power_at_most(p, 3, n)) {
      part.small_.push_back(p);
    } else if (power_at_most(p, 2, n)) {
      part.medium_.push_back(p);
    } else {
      part.large_.push_back(p);
    }
  }
  return part;
}

namespace {

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

PrimePartition PrimePartition::custom(Int n_limit, std::vector<Int> small, std::vector<Int> medium,
                                      std::vector<Int> large) {
  PrimePartition part;
  part.n_limit_ = n_limit;
  part.custom_ = true;
  std::vector<Int> seen;
  for (auto* list : {&small, &medium, &large}) {
    std::sort(list->begin(), list->end());
    if (std::adjacent_find(list->begin(), list->end()) != list->end()) {
      throw InvalidInput("custom partition: duplicate prime");
    }
    for (Int p : *list) {
      if (!is_prime(p) || p > n_limit) {
        throw InvalidInput("custom partition: " + std::to_string(p) + " is not a prime <= N");
      }
      seen.push_back(p);
    }
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InvalidInput("custom partition: classes overlap");
  }
  part.small_ = std::move(small);
  part.medium_ = std::move(medium);
  part.large_ = std::move(large);
  return part;
}

std::optional<PrimeClass> PrimePartition::class_of(Int p) const {
  auto in = [p](const std::vector<Int>& v) { return std::binary_search(v.begin(), v.end(), p); };
  if (in(small_)) return PrimeClass::small;
  if (in(medium_)) return PrimeClass::medium;
  if (in(large_)) return PrimeClass::large;
  return std::nullopt;
}

std::vector<Int> PrimePartition::all_primes() const {
  std::vector<Int> all;
  all.reserve(small_.size() + medium_.size() + large_.size());
  all.insert(all.end(), small_.begin(), small_.end());
  all.insert(all.end(), medium_.begin(), medium_.end());
  all.insert(all.end(), large_.begin(), large_.end());
  std::sort(all.begin(), all.end());
  return all;
}

ExponentVector::ExponentVector(std::vector<Entry> entries) {
  for (auto [p, e] : entries) add(p, e);
}

unsigned ExponentVector::operator[](Int p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const Entry& a, Int q) { return a.first < q; });
  return (it != entries_.end() && it->first == p) ? it->second : 0;
}

void ExponentVector::add(Int p, unsigned e) {
  if (e == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const Entry& a, Int q) { return a.first < q; });
  if (it != entries_.end() && it->first == p) {
    it->second += e;
  } else {
    entries_.insert(it, {p, e});
  }
}

void ExponentVector::add(const ExponentVector& other) {
  for (auto [p, e] : other.entries_) add(p, e);
}

unsigned ExponentVector::mass() const {
  unsigned total = 0;
  for (auto [p, e] : entries_) total += e;
  return total;
}

BigInt ExponentVector::product() const {
  BigInt acc = 1;
  for (auto [p, e] : entries_) {
    for (unsigned i = 0; i < e; ++i) acc *= p;
  }
  return acc;
}

Element factorize(Int n) {
  if (n == 0) throw InvalidInput("factorize: 0 has no factorization");
  Element out;
  out.value = n;
  Int rest = n;
  for (Int d = 2; d <= rest / d; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    out.exponents.add(d, e);
  }
  if (rest > 1) out.exponents.add(rest, 1);
  return out;
}

Element factorize(Int n, const PrimePartition& partition) {
  if (n < 1 || n > partition.n_limit()) {
    throw InvalidInput("factorize: " + std::to_string(n) + " outside [1, " +
                       std::to_string(partition.n_limit()) + "]");
  }
  return factorize(n);
}

ExponentVector valuation_projection(const Element& e, const PrimePartition& partition, Scope scope) {
  ExponentVector out;
  for (auto [p, k] : e.exponents) {
    auto cls = partition.class_of(p);
    if (!cls) continue;
    bool keep = false;
    switch (scope) {
      case Scope::small: keep = *cls == PrimeClass::small; break;
      case Scope::medium: keep = *cls == PrimeClass::medium; break;
      case Scope::large: keep = *cls == PrimeClass::large; break;
      case Scope::medium_and_large: keep = *cls != PrimeClass::small; break;
    }
    if (keep) out.add(p, k);
  }
  return out;
}

double small_valuation_log_bound(Int n) {
  if (n < 2) return 0.0;
  auto part = classify_primes(n);
  if (part.small().empty()) return 0.0;
  double nd = static_cast<double>(n);
  return static_cast<double>(part.small().size()) * std::log(nd * std::log2(nd) + 1.0);
}

}  // namespace dsp
