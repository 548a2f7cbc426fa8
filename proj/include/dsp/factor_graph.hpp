#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsp/arithmetic.hpp"
#include "dsp/graph.hpp"
#include "dsp/verifier.hpp"

namespace dsp {

/// Vertex label of the unit vertex; every other vertex is labeled by its prime.
inline constexpr Int kUnitVertex = 1;

struct Reduction {
  SubsetProductSet reduced;
  std::vector<Int> removed;  // ascending
};

/// Keeps the smallest element of each nonzero medium-and-large valuation
/// class and drops everything else, including the whole zero class.
Reduction reduce_set(const SubsetProductSet& a);

struct LabeledEdge {
  Int u = 0;  // u precedes v in vertex order (primes ascending, unit last)
  Int v = 0;
  Int label = 0;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Closed walk in a FactorGraph: labels[i] joins vertices[i] and vertices[i+1 mod k].
struct LabeledCircuit {
  std::vector<Int> vertices;
  std::vector<Int> labels;

  std::size_t length() const { return labels.size(); }
  friend bool operator==(const LabeledCircuit&, const LabeledCircuit&) = default;
};

class FactorGraph {
 public:
  FactorGraph() = default;

  const PrimePartition& partition() const { return partition_; }
  /// Medium and large primes ascending, then the unit vertex.
  const std::vector<Int>& vertices() const { return vertices_; }
  /// Sorted by label.
  const std::vector<LabeledEdge>& edges() const { return edges_; }
  const std::vector<Int>& p_square() const { return p_square_; }
  const std::map<Int, Int>& square_elements() const { return square_elements_; }

  std::size_t vertex_index(Int vertex) const;
  bool is_p_square(Int vertex) const;
  std::size_t degree(Int vertex) const;
  std::optional<LabeledEdge> edge_with_label(Int label) const;

  /// Index graph whose vertex i is vertices()[i] and edge j is edges()[j].
  const Graph& graph() const { return graph_; }
  LabeledCircuit label(const Circuit& c) const;

  /// Same vertices and p_square bookkeeping, without the listed edge labels.
  FactorGraph without_edges(const std::vector<Int>& labels) const;

 private:
  friend FactorGraph build_graph(const SubsetProductSet& reduced);
  void rebuild_index();

  PrimePartition partition_;
  std::vector<Int> vertices_;
  std::vector<LabeledEdge> edges_;
  std::vector<Int> p_square_;
  std::map<Int, Int> square_elements_;
  Graph graph_;
};

/// Throws InvalidInput unless the medium-and-large valuation map is
/// injective and nonzero on the input and every valuation has a graph shape.
FactorGraph build_graph(const SubsetProductSet& reduced);

std::optional<LabeledCircuit> find_short_cycle(const FactorGraph& g, std::size_t max_len);
std::optional<LabeledCircuit> find_even_circuit(const FactorGraph& g, std::size_t max_len);

struct EvenRemoval {
  FactorGraph graph;
  std::vector<LabeledCircuit> circuits;
  std::size_t edges_removed = 0;
};

/// Repeatedly removes the shortest even circuit of length <= max_len.
EvenRemoval remove_even_circuits(const FactorGraph& g, std::size_t max_len);

struct OddSquareCycle {
  LabeledCircuit cycle;  // rotated to start at `vertex`
  Int vertex = 0;        // p_square vertex on the cycle
};

struct OddSquareRemoval {
  FactorGraph graph;
  std::vector<OddSquareCycle> cycles;
  std::size_t edges_removed = 0;
};

/// Repeatedly removes the shortest odd cycle of length <= max_len through a
/// p_square vertex. Throws InvariantViolation if two removed cycles share a
/// vertex.
OddSquareRemoval remove_odd_square_cycles(const FactorGraph& g, std::size_t max_len);

struct RemainingRemoval {
  FactorGraph graph;
  std::vector<Int> removed;  // one edge label per short cycle, in removal order
};

/// Removes one edge joining two vertices of medium-non-square primes or the
/// unit from each cycle of length <= max_len. Throws InvariantViolation if a
/// short cycle has no such edge.
RemainingRemoval remove_remaining_cycles(const FactorGraph& g, std::size_t max_len);

struct ValuationCertificate {
  std::vector<Int> a0;
  std::vector<Int> a1;

  friend bool operator==(const ValuationCertificate&, const ValuationCertificate&) = default;
};

/// A0 takes every other edge from the first one, A1 the rest. An odd cycle
/// must pass through a p_square vertex; it is rotated to start there and the
/// square element joins A1. Throws InvalidInput for other circuits.
ValuationCertificate circuit_to_certificate(const LabeledCircuit& c, const FactorGraph& g);

/// Medium-and-large exponent sums of both sides agree.
bool valuation_sums_agree(const ValuationCertificate& cert, const PrimePartition& partition);

struct LinkEdge {
  Int a = 0;
  Int b = 0;
  Int witness = 0;  // large prime adjacent to both

  friend bool operator==(const LinkEdge&, const LinkEdge&) = default;
};

struct MediumLinkGraph {
  std::vector<Int> vertices;  // medium primes ascending, then the unit
  std::vector<LinkEdge> edges;
  std::vector<Int> q;  // large primes of degree >= 2

  Graph graph() const;
};

/// Links two medium-or-unit vertices sharing a large neighbor of degree >= 2.
/// Throws InvariantViolation when two large primes would give the same link.
MediumLinkGraph medium_link_graph(const FactorGraph& g);

/// max(3, floor(N^(1/12))).
std::size_t default_threshold(Int n);

struct AuditReport {
  Int n_limit = 0;
  std::size_t input_size = 0;
  std::size_t removed_for_injectivity = 0;
  std::size_t initial_edge_count = 0;
  std::size_t even_circuit_edges_removed = 0;
  std::size_t odd_square_cycle_edges_removed = 0;
  std::size_t lemma36_edges_removed = 0;
  std::size_t lemma36_bound = 0;  // floor((|medium non-square| + 1) / 2)
  std::size_t p_square_size = 0;
  std::size_t p_not_square_size = 0;
  std::size_t q_size = 0;
  std::size_t final_edge_count = 0;
  std::size_t threshold = 0;
  Int pi_n = 0;
  Int pi_sqrt_n = 0;
  double half_p_square = 0.0;
};

struct AuditStages {
  Reduction reduction;
  FactorGraph initial;
  EvenRemoval even;
  OddSquareRemoval odd_square;
  RemainingRemoval remaining;
};

struct Audit {
  AuditReport report;
  AuditStages stages;
};

/// reduce_set, build_graph, remove_even_circuits(2L), remove_odd_square_cycles(L),
/// remove_remaining_cycles(L). Throws InvariantViolation if a cycle of length
/// <= L survives. threshold 0 selects default_threshold(N).
Audit bound_audit(const SubsetProductSet& a, std::size_t threshold = 0);

/// Undirected DOT. Vertices are labeled by prime or "1", edges by element,
/// p_square vertices are double circles. Isolated vertices are omitted
/// unless requested or in p_square.
std::string to_dot(const FactorGraph& g, bool include_isolated = false);

}  // namespace dsp
