#include "dsp/factor_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dsp/error.hpp"

namespace dsp {

namespace {

std::string vertex_name(Int v) { return std::to_string(v); }

std::string describe(const LabeledCircuit& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) os << (i ? "-" : "") << c.vertices[i];
  return os.str();
}

}  // namespace

Reduction reduce_set(const SubsetProductSet& a) {
  std::map<ExponentVector, Int> keep;
  std::vector<Int> removed;
  for (const Element& e : a.elements()) {
    ExponentVector ml = valuation_projection(e, a.partition(), Scope::medium_and_large);
    if (ml.empty() || !keep.emplace(std::move(ml), e.value).second) removed.push_back(e.value);
  }
  std::vector<Int> kept;
  for (const auto& [vec, value] : keep) kept.push_back(value);
  std::sort(kept.begin(), kept.end());
  std::sort(removed.begin(), removed.end());
  return {a.subset(kept), removed};
}

std::size_t FactorGraph::vertex_index(Int vertex) const {
  if (vertices_.empty()) throw InvalidInput("vertex_index: empty graph");
  if (vertex == kUnitVertex) return vertices_.size() - 1;
  const auto end = vertices_.end() - 1;
  const auto it = std::lower_bound(vertices_.begin(), end, vertex);
  if (it == end || *it != vertex) throw InvalidInput("vertex_index: " + std::to_string(vertex) + " is not a vertex");
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool FactorGraph::is_p_square(Int vertex) const {
  return std::binary_search(p_square_.begin(), p_square_.end(), vertex);
}

std::size_t FactorGraph::degree(Int vertex) const { return graph_.degree(vertex_index(vertex)); }

std::optional<LabeledEdge> FactorGraph::edge_with_label(Int label) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), label,
                                   [](const LabeledEdge& e, Int l) { return e.label < l; });
  if (it == edges_.end() || it->label != label) return std::nullopt;
  return *it;
}

LabeledCircuit FactorGraph::label(const Circuit& c) const {
  LabeledCircuit out;
  for (std::size_t v : c.vertices) out.vertices.push_back(vertices_[v]);
  for (std::size_t e : c.edges) out.labels.push_back(edges_[e].label);
  return out;
}

void FactorGraph::rebuild_index() {
  std::sort(edges_.begin(), edges_.end(), [](const LabeledEdge& x, const LabeledEdge& y) { return x.label < y.label; });
  graph_ = Graph(vertices_.size());
  for (const LabeledEdge& e : edges_) graph_.add_edge(vertex_index(e.u), vertex_index(e.v));
}

FactorGraph FactorGraph::without_edges(const std::vector<Int>& labels) const {
  const std::set<Int> drop(labels.begin(), labels.end());
  FactorGraph out = *this;
  std::erase_if(out.edges_, [&](const LabeledEdge& e) { return drop.count(e.label) > 0; });
  out.rebuild_index();
  return out;
}

FactorGraph build_graph(const SubsetProductSet& reduced) {
  const PrimePartition& part = reduced.partition();
  FactorGraph g;
  g.partition_ = part;
  g.vertices_ = part.medium();
  g.vertices_.insert(g.vertices_.end(), part.large().begin(), part.large().end());
  std::sort(g.vertices_.begin(), g.vertices_.end());
  g.vertices_.push_back(kUnitVertex);

  std::set<ExponentVector> seen;
  for (const Element& el : reduced.elements()) {
    const Int a = el.value;
    const ExponentVector ml = valuation_projection(el, part, Scope::medium_and_large);
    const std::string where = "build_graph: element " + std::to_string(a);
    if (ml.empty()) throw InvalidInput(where + " has zero medium-and-large valuation");
    if (!seen.insert(ml).second) throw InvalidInput(where + " repeats a medium-and-large valuation");
    const auto& entries = ml.entries();
    if (entries.size() == 1 && entries[0].second == 1) {
      g.edges_.push_back({entries[0].first, kUnitVertex, a});
    } else if (entries.size() == 1 && entries[0].second == 2 && part.class_of(entries[0].first) == PrimeClass::medium) {
      g.p_square_.push_back(entries[0].first);
      g.square_elements_[entries[0].first] = a;
    } else if (entries.size() == 2 && entries[0].second == 1 && entries[1].second == 1) {
      if (part.class_of(entries[0].first) == PrimeClass::large && part.class_of(entries[1].first) == PrimeClass::large) {
        throw InvalidInput(where + " joins two large primes");
      }
      g.edges_.push_back({entries[0].first, entries[1].first, a});
    } else {
      throw InvalidInput(where + " has a medium-and-large valuation outside the graph shapes");
    }
  }
  std::sort(g.p_square_.begin(), g.p_square_.end());
  g.rebuild_index();
  return g;
}

std::optional<LabeledCircuit> find_short_cycle(const FactorGraph& g, std::size_t max_len) {
  auto c = find_short_cycle(g.graph(), max_len);
  if (!c) return std::nullopt;
  return g.label(*c);
}

std::optional<LabeledCircuit> find_even_circuit(const FactorGraph& g, std::size_t max_len) {
  auto c = find_even_circuit(g.graph(), max_len);
  if (!c) return std::nullopt;
  return g.label(*c);
}

EvenRemoval remove_even_circuits(const FactorGraph& g, std::size_t max_len) {
  EvenRemoval out{g, {}, 0};
  while (auto c = find_even_circuit(out.graph, max_len)) {
    out.edges_removed += c->length();
    out.graph = out.graph.without_edges(c->labels);
    out.circuits.push_back(std::move(*c));
  }
  return out;
}

OddSquareRemoval remove_odd_square_cycles(const FactorGraph& g, std::size_t max_len) {
  OddSquareRemoval out{g, {}, 0};
  std::set<Int> used_vertices;
  if (g.p_square().empty()) return out;
  while (true) {
    std::optional<Circuit> best;
    std::vector<std::size_t> best_key;
    const FactorGraph& cur = out.graph;
    for_each_simple_cycle(cur.graph(), max_len, [&](const Circuit& c) {
      if (c.length() % 2 == 0) return true;
      const bool touches = std::any_of(c.vertices.begin(), c.vertices.end(),
                                       [&](std::size_t v) { return cur.is_p_square(cur.vertices()[v]); });
      if (!touches) return true;
      std::vector<std::size_t> key = c.edges;
      std::sort(key.begin(), key.end());
      if (!best || c.length() < best->length() || (c.length() == best->length() && key < best_key)) {
        best = c;
        best_key = std::move(key);
      }
      return true;
    });
    if (!best) break;

    LabeledCircuit cycle = cur.label(*best);
    Int square = 0;
    for (Int v : cycle.vertices) {
      if (cur.is_p_square(v) && (square == 0 || v < square)) square = v;
    }
    const auto pos = std::find(cycle.vertices.begin(), cycle.vertices.end(), square) - cycle.vertices.begin();
    std::rotate(cycle.vertices.begin(), cycle.vertices.begin() + pos, cycle.vertices.end());
    std::rotate(cycle.labels.begin(), cycle.labels.begin() + pos, cycle.labels.end());
    for (Int v : cycle.vertices) {
      if (!used_vertices.insert(v).second) {
        throw InvariantViolation("remove_odd_square_cycles: short odd cycles " + describe(cycle) +
                                 " and an earlier one share vertex " + std::to_string(v) +
                                 "; short even circuits were not fully removed");
      }
    }
    out.edges_removed += cycle.length();
    out.graph = cur.without_edges(cycle.labels);
    out.cycles.push_back({std::move(cycle), square});
  }
  return out;
}

RemainingRemoval remove_remaining_cycles(const FactorGraph& g, std::size_t max_len) {
  RemainingRemoval out{g, {}};
  auto allowed = [&](Int v) {
    return v == kUnitVertex || (g.partition().class_of(v) == PrimeClass::medium && !g.is_p_square(v));
  };
  while (auto c = find_short_cycle(out.graph, max_len)) {
    std::optional<Int> pick;
    for (std::size_t i = 0; i < c->length(); ++i) {
      const Int x = c->vertices[i], y = c->vertices[(i + 1) % c->length()];
      if (allowed(x) && allowed(y) && (!pick || c->labels[i] < *pick)) pick = c->labels[i];
    }
    if (!pick) {
      throw InvariantViolation("remove_remaining_cycles: cycle " + describe(*c) +
                               " has no edge between medium non-square primes or the unit");
    }
    out.removed.push_back(*pick);
    out.graph = out.graph.without_edges({*pick});
  }
  return out;
}

ValuationCertificate circuit_to_certificate(const LabeledCircuit& c, const FactorGraph& g) {
  const std::size_t k = c.length();
  if (k < 3 || c.vertices.size() != k) throw InvalidInput("circuit_to_certificate: malformed circuit");
  std::set<Int> distinct(c.labels.begin(), c.labels.end());
  if (distinct.size() != k) throw InvalidInput("circuit_to_certificate: repeated edge");
  for (std::size_t i = 0; i < k; ++i) {
    auto e = g.edge_with_label(c.labels[i]);
    const Int x = c.vertices[i], y = c.vertices[(i + 1) % k];
    if (!e || !((e->u == x && e->v == y) || (e->u == y && e->v == x))) {
      throw InvalidInput("circuit_to_certificate: edge " + std::to_string(c.labels[i]) + " does not join " +
                         std::to_string(x) + " and " + std::to_string(y));
    }
  }
  ValuationCertificate cert;
  if (k % 2 == 0) {
    for (std::size_t i = 0; i < k; ++i) (i % 2 == 0 ? cert.a0 : cert.a1).push_back(c.labels[i]);
  } else {
    std::set<Int> verts(c.vertices.begin(), c.vertices.end());
    if (verts.size() != k) throw InvalidInput("circuit_to_certificate: odd circuit is not a cycle");
    std::optional<std::size_t> start;
    for (std::size_t i = 0; i < k; ++i) {
      if (g.is_p_square(c.vertices[i]) && (!start || c.vertices[i] < c.vertices[*start])) start = i;
    }
    if (!start) throw InvalidInput("circuit_to_certificate: odd cycle avoids every p_square vertex");
    for (std::size_t i = 0; i < k; ++i) {
      (i % 2 == 0 ? cert.a0 : cert.a1).push_back(c.labels[(*start + i) % k]);
    }
    cert.a1.push_back(g.square_elements().at(c.vertices[*start]));
  }
  std::sort(cert.a0.begin(), cert.a0.end());
  std::sort(cert.a1.begin(), cert.a1.end());
  return cert;
}

bool valuation_sums_agree(const ValuationCertificate& cert, const PrimePartition& partition) {
  auto sum = [&](const std::vector<Int>& side) {
    ExponentVector total;
    for (Int a : side) total.add(valuation_projection(factorize(a, partition), partition, Scope::medium_and_large));
    return total;
  };
  return sum(cert.a0) == sum(cert.a1);
}

Graph MediumLinkGraph::graph() const {
  Graph g(vertices.size());
  auto index = [&](Int v) {
    return static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  for (const LinkEdge& e : edges) g.add_edge(index(e.a), index(e.b));
  return g;
}

MediumLinkGraph medium_link_graph(const FactorGraph& g) {
  MediumLinkGraph out;
  out.vertices = g.partition().medium();
  out.vertices.push_back(kUnitVertex);
  std::map<std::pair<Int, Int>, Int> witness;
  const Graph& ig = g.graph();
  for (std::size_t i = 0; i + 1 < g.vertices().size(); ++i) {
    const Int p = g.vertices()[i];
    if (g.partition().class_of(p) != PrimeClass::large || ig.degree(i) < 2) continue;
    out.q.push_back(p);
    std::vector<std::size_t> nbrs;
    for (auto [w, e] : ig.neighbors(i)) nbrs.push_back(w);
    std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        const Int a = g.vertices()[nbrs[x]], b = g.vertices()[nbrs[y]];
        auto [it, fresh] = witness.emplace(std::make_pair(a, b), p);
        if (!fresh) {
          throw InvariantViolation("medium_link_graph: large primes " + std::to_string(it->second) + " and " +
                                   std::to_string(p) + " both link " + vertex_name(a) + " and " + vertex_name(b) +
                                   " (a 4-cycle)");
        }
        out.edges.push_back({a, b, p});
      }
    }
  }
  return out;
}

std::size_t default_threshold(Int n) { return std::max<std::size_t>(3, integer_root(n, 12)); }

Audit bound_audit(const SubsetProductSet& a, std::size_t threshold) {
  Audit audit;
  AuditReport& r = audit.report;
  AuditStages& s = audit.stages;
  const Int n = a.n_limit();
  r.n_limit = n;
  r.threshold = threshold ? threshold : default_threshold(n);
  r.input_size = a.size();
  s.reduction = reduce_set(a);
  r.removed_for_injectivity = s.reduction.removed.size();
  s.initial = build_graph(s.reduction.reduced);
  r.initial_edge_count = s.initial.edges().size();
  s.even = remove_even_circuits(s.initial, 2 * r.threshold);
  r.even_circuit_edges_removed = s.even.edges_removed;
  s.odd_square = remove_odd_square_cycles(s.even.graph, r.threshold);
  r.odd_square_cycle_edges_removed = s.odd_square.edges_removed;
  s.remaining = remove_remaining_cycles(s.odd_square.graph, r.threshold);
  r.lemma36_edges_removed = s.remaining.removed.size();

  const FactorGraph& final_graph = s.remaining.graph;
  if (auto c = find_short_cycle(final_graph, r.threshold)) {
    throw InvariantViolation("bound_audit: cycle " + describe(*c) + " survived all removal stages");
  }
  r.final_edge_count = final_graph.edges().size();
  r.p_square_size = s.initial.p_square().size();
  r.p_not_square_size = a.partition().medium().size() - r.p_square_size;
  r.lemma36_bound = (r.p_not_square_size + 1) / 2;
  for (Int p : a.partition().large()) {
    if (final_graph.degree(p) >= 2) ++r.q_size;
  }
  r.pi_n = prime_pi(n);
  r.pi_sqrt_n = prime_pi(integer_root(n, 2));
  r.half_p_square = static_cast<double>(r.p_square_size) / 2.0;
  return audit;
}

std::string to_dot(const FactorGraph& g, bool include_isolated) {
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const Int v = g.vertices()[i];
    const bool square = g.is_p_square(v);
    if (!include_isolated && !square && g.graph().degree(i) == 0) continue;
    os << "  \"" << vertex_name(v) << "\"";
    if (square) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (const LabeledEdge& e : g.edges()) {
    os << "  \"" << vertex_name(e.u) << "\" -- \"" << vertex_name(e.v) << "\" [label=\"" << e.label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dsp
