#include "dsp/constructions.hpp"

#include <algorithm>
#include <sstream>

#include "dsp/error.hpp"

namespace dsp {

namespace {

Int ipow(Int base, Int exp) {
  Int r = 1;
  for (Int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string join(const std::vector<Int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

ConstructionOutput finish(Int n, std::string kind, std::vector<Int> values, Int predicted) {
  ConstructionOutput out;
  out.set = SubsetProductSet(n, std::move(values));
  out.kind = std::move(kind);
  out.predicted_count = predicted;
  out.parameters["n"] = std::to_string(n);
  if (out.set.size() != predicted) {
    throw InvariantViolation(out.kind + ": produced " + std::to_string(out.set.size()) +
                             " elements, formula gives " + std::to_string(predicted));
  }
  return out;
}

}  // namespace

EkTable::EkTable(std::vector<EkRow> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    EkRow& row = rows_[i];
    const std::string where = "EkTable row " + std::to_string(i) + ": ";
    std::sort(row.elements.begin(), row.elements.end());
    if (row.k == 0) throw InvalidInput(where + "k must be positive");
    if (row.elements.size() != row.k) throw InvalidInput(where + "|E_k| != k");
    if (row.elements.front() == 0) throw InvalidInput(where + "elements must be positive");
    if (row.elements.back() != row.g) throw InvalidInput(where + "max(E_k) != g_k");
    if (std::adjacent_find(row.elements.begin(), row.elements.end()) != row.elements.end()) {
      throw InvalidInput(where + "repeated element");
    }
    if (row.g > 63) throw InvalidInput(where + "g_k above 63 is not supported");
    if (i > 0 && (row.g <= rows_[i - 1].g || row.k <= rows_[i - 1].k)) {
      throw InvalidInput(where + "k and g_k must strictly increase");
    }
    if (!is_distinct(verify_distinct_sums(row.elements))) {
      throw InvalidInput(where + "E_k does not have distinct subset sums");
    }
  }
}

EkTable default_ek_table() {
  return EkTable({{1, 1, {1}}, {2, 2, {1, 2}}, {3, 4, {1, 2, 4}}, {4, 7, {3, 5, 6, 7}}});
}

ConstructionOutput erdos_basic(Int n) {
  std::vector<Int> values;
  for (Int p : sieve_primes(n)) {
    values.push_back(p);
    if (power_at_most(p, 2, n)) values.push_back(p * p);
  }
  return finish(n, "erdos", std::move(values), prime_pi(n) + prime_pi(integer_root(n, 2)));
}

ConstructionOutput gk_chain(Int n, const EkTable& table) {
  if (table.empty()) throw InvalidInput("gk_chain: empty table");
  const auto& rows = table.rows();
  std::vector<Int> values;
  for (Int p : sieve_primes(n)) {
    const EkRow* chosen = nullptr;
    for (const EkRow& row : rows) {
      if (power_at_most(p, static_cast<unsigned>(row.g), n)) chosen = &row;
    }
    if (!chosen) continue;
    for (Int e : chosen->elements) values.push_back(ipow(p, e));
  }
  Int predicted = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Int band = prime_pi(integer_root(n, static_cast<unsigned>(rows[i].g)));
    if (i + 1 < rows.size()) band -= prime_pi(integer_root(n, static_cast<unsigned>(rows[i + 1].g)));
    predicted += band * rows[i].k;
  }
  auto out = finish(n, "gk-chain", std::move(values), predicted);
  std::ostringstream g;
  for (std::size_t i = 0; i < rows.size(); ++i) g << (i ? "," : "") << rows[i].g;
  out.parameters["g"] = g.str();
  return out;
}

ConstructionOutput triples_construction(Int n) {
  const PrimePartition part = classify_primes(n);
  std::vector<Int> values;
  for (Int p : part.medium()) values.insert(values.end(), {p, p * p});
  for (Int p : part.large()) values.push_back(p);
  const auto& small = part.small();
  const std::size_t triples = small.size() / 3;
  for (std::size_t t = 0; t < triples; ++t) {
    const Int p = small[3 * t], q = small[3 * t + 1], r = small[3 * t + 2];
    values.insert(values.end(), {p * p * q, p * p * r, p * p, q * r, p * p * p, q * q * q, r * r * r});
  }
  const Int pi = prime_pi(n), pi2 = prime_pi(integer_root(n, 2)), pi3 = prime_pi(integer_root(n, 3));
  auto out = finish(n, "triples", std::move(values), pi - 2 * pi3 + pi2 + 7 * (pi3 / 3));
  out.dropped_primes.assign(small.begin() + static_cast<std::ptrdiff_t>(3 * triples), small.end());
  out.parameters["triples"] = std::to_string(triples);
  return out;
}

std::string_view to_string(TreeStrategy s) {
  return s == TreeStrategy::path_ascending ? "path_ascending" : "star_on_smallest";
}

ConstructionOutput tree_construction(Int n, TreeStrategy strategy) {
  const PrimePartition part = classify_primes(n);
  std::vector<Int> vertices = part.small();
  vertices.insert(vertices.end(), part.medium().begin(), part.medium().end());
  if (vertices.empty()) throw InvalidInput("tree_construction: needs a prime p with p^2 <= N");
  std::vector<Int> values = part.large();
  for (Int p : vertices) values.push_back(p * p);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Int other = strategy == TreeStrategy::path_ascending ? vertices[i - 1] : vertices.front();
    values.push_back(other * vertices[i]);
  }
  auto out = finish(n, "tree", std::move(values), prime_pi(n) + prime_pi(integer_root(n, 2)) - 1);
  out.parameters["tree"] = std::string(to_string(strategy));
  return out;
}

std::vector<SquarefreePair> squarefree_pairing(Int n) {
  std::vector<Int> low = sieve_primes(integer_root(n, 2));
  std::reverse(low.begin(), low.end());
  std::vector<Int> high;
  for (Int p : sieve_primes(n)) {
    if (!power_at_most(p, 2, n)) high.push_back(p);
  }
  std::vector<bool> used(high.size(), false);
  std::vector<SquarefreePair> pairs;
  for (std::size_t i = 0; i + 1 < low.size(); i += 2) {
    SquarefreePair pair{low[i], low[i + 1], 0};
    for (std::size_t j = high.size(); j-- > 0;) {
      if (!used[j] && high[j] <= n / pair.q) {
        used[j] = true;
        pair.p = high[j];
        break;
      }
    }
    pairs.push_back(pair);
  }
  return pairs;
}

ConstructionOutput squarefree_construction(Int n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 6.0)) {
    throw InvalidInput("squarefree_construction: epsilon must lie in (0, 1/6)");
  }
  const auto pairs = squarefree_pairing(n);
  std::vector<Int> used;
  std::vector<Int> dropped;
  std::vector<Int> values;
  Int matched = 0, links = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pr = pairs[i];
    if (!pr.p) {
      dropped.insert(dropped.end(), {pr.q, pr.r});
      continue;
    }
    ++matched;
    used.push_back(pr.p);
    values.insert(values.end(), {pr.p * pr.q, pr.p * pr.r, pr.q * pr.r});
    if (i + 1 < pairs.size() && pairs[i + 1].p) {
      values.push_back(pr.r * pairs[i + 1].q);
      ++links;
    }
  }
  const std::vector<Int> low = sieve_primes(integer_root(n, 2));
  if (low.size() % 2 == 1) dropped.push_back(low.front());
  std::sort(dropped.begin(), dropped.end());
  Int large = 0;
  for (Int p : sieve_primes(n)) {
    if (power_at_most(p, 2, n)) continue;
    ++large;
    if (std::find(used.begin(), used.end(), p) == used.end()) values.push_back(p);
  }
  auto out = finish(n, "squarefree", std::move(values), large - matched + 3 * matched + links);
  std::ostringstream eps;
  eps << epsilon;
  out.parameters["epsilon"] = eps.str();
  out.parameters["pairs"] = std::to_string(matched);
  out.dropped_primes = dropped;
  if (!dropped.empty()) out.parameters["dropped"] = join(dropped);
  return out;
}

}  // namespace dsp
