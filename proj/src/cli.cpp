#include "dsp/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsp/constructions.hpp"
#include "dsp/error.hpp"
#include "dsp/extremal_search.hpp"
#include "dsp/factor_graph.hpp"
#include "dsp/set_file.hpp"
#include "dsp/verifier.hpp"

namespace dsp {

namespace {

std::string join(const std::vector<Int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

struct ConstructArgs {
  std::string kind;
  Int n = 0;
  double epsilon = 0.05;
  std::string tree = "path";
  std::string ek_table;
  std::string out;
};

struct VerifyArgs {
  std::string set;
  std::uint64_t budget = SearchOptions{}.budget;
  bool oracle = false;
  std::string cert;
  std::optional<Int> n;
};

struct ExactArgs {
  bool f = false, h = false, g = false;
  Int n = 0;
  std::uint64_t budget = ExactOptions{}.node_budget;
  unsigned threads = 1;
  std::string out;
};

struct GraphArgs {
  std::string set;
  std::string dot;
  bool audit = false;
  std::size_t threshold = 0;
  bool all_vertices = false;
  std::optional<Int> n;
};

SetFile load_set(const std::string& path, std::optional<Int> n) { return parse_set_file(read_file(path), n); }

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  ConstructionOutput result;
  if (a.kind == "erdos") {
    result = erdos_basic(a.n);
  } else if (a.kind == "gk-chain") {
    result = gk_chain(a.n, a.ek_table.empty() ? default_ek_table() : parse_ek_table(read_file(a.ek_table)));
  } else if (a.kind == "triples") {
    result = triples_construction(a.n);
  } else if (a.kind == "tree") {
    const bool star = a.tree == "star" || a.tree == "star_on_smallest";
    result = tree_construction(a.n, star ? TreeStrategy::star_on_smallest : TreeStrategy::path_ascending);
  } else {
    result = squarefree_construction(a.n, a.epsilon);
  }
  const std::string text = write_set_file(to_set_file(result));
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
    out << "wrote " << result.set.size() << " elements to " << a.out << "\n";
  }
  return exit_code::ok;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const SetFile file = load_set(a.set, a.n);
  const SubsetProductSet set = file.to_set();
  Verdict v;
  if (a.oracle) {
    v = brute_force_distinct(set);
  } else {
    VerifyOptions opts;
    opts.search.budget = a.budget;
    v = verify_distinct(set, opts);
  }
  out << "elements: " << set.size() << "\n";
  if (const auto* d = std::get_if<Distinct>(&v)) {
    out << "verdict: distinct\n";
    for (const ProofStep& s : d->trace) {
      out << "step: " << to_string(s.kind);
      if (s.prime) out << " prime=" << *s.prime;
      if (!s.values.empty()) out << " values=[" << join(s.values) << "]";
      if (s.nodes) out << " nodes=" << s.nodes;
      if (!s.detail.empty()) out << " " << s.detail;
      out << "\n";
    }
    return exit_code::ok;
  }
  if (const auto* c = std::get_if<Collision>(&v)) {
    const std::string path = a.cert.empty() ? a.set + ".cert.json" : a.cert;
    const CertificateFile cf = to_certificate_file(c->certificate);
    write_file(path, write_certificate_file(cf));
    const CertificateFile back = parse_certificate_file(read_file(path));
    if (!check_certificate({back.subset_b, back.subset_c}, set) || back.product != product_of(back.subset_c).str()) {
      throw InvariantViolation("written certificate failed to re-validate");
    }
    out << "verdict: collision\n";
    out << "subset_b: " << join(cf.subset_b) << "\n";
    out << "subset_c: " << join(cf.subset_c) << "\n";
    out << "product: " << cf.product << "\n";
    out << "certificate: " << path << "\n";
    return exit_code::collision;
  }
  const auto& inc = std::get<Inconclusive>(v);
  out << "verdict: inconclusive\n";
  out << "nodes_explored: " << inc.nodes_explored << "\n";
  out << "stage: " << inc.stage << "\n";
  return exit_code::inconclusive;
}

int cmd_exact(const ExactArgs& a, std::ostream& out) {
  ExactOptions opts;
  opts.node_budget = a.budget;
  opts.threads = a.threads;
  SearchResult r;
  std::string kind;
  if (a.g) {
    opts.cap = 6;
    r = exact_g(a.n, opts);
    kind = "exact-g";
  } else {
    r = a.f ? exact_f(a.n, opts) : exact_h(a.n, opts);
    kind = a.f ? "exact-f" : "exact-h";
  }
  out << "value: " << r.value << "\n";
  out << "witness: " << join(r.witness) << "\n";
  out << "nodes_explored: " << r.nodes_explored << "\n";
  out << "optimal: " << (r.optimal ? "true" : "false") << "\n";
  if (!a.out.empty()) {
    SetFile f;
    f.n_limit = a.g ? std::max<Int>(r.value, 1) : std::max<Int>(a.n, 1);
    f.elements = r.witness;
    f.meta["kind"] = kind;
    f.meta["parameters"] = {{a.g ? "k" : "n", std::to_string(a.n)}};
    f.meta["value"] = r.value;
    f.meta["nodes_explored"] = r.nodes_explored;
    f.meta["optimal"] = r.optimal;
    write_file(a.out, write_set_file(f));
  }
  return r.optimal ? exit_code::ok : exit_code::inconclusive;
}

void print_report(const AuditReport& r, std::ostream& out) {
  out << "n_limit: " << r.n_limit << "\n"
      << "input_size: " << r.input_size << "\n"
      << "removed_for_injectivity: " << r.removed_for_injectivity << "\n"
      << "initial_edge_count: " << r.initial_edge_count << "\n"
      << "even_circuit_edges_removed: " << r.even_circuit_edges_removed << "\n"
      << "odd_square_cycle_edges_removed: " << r.odd_square_cycle_edges_removed << "\n"
      << "lemma36_edges_removed: " << r.lemma36_edges_removed << "\n"
      << "lemma36_bound: " << r.lemma36_bound << "\n"
      << "p_square_size: " << r.p_square_size << "\n"
      << "p_not_square_size: " << r.p_not_square_size << "\n"
      << "q_size: " << r.q_size << "\n"
      << "final_edge_count: " << r.final_edge_count << "\n"
      << "threshold: " << r.threshold << "\n"
      << "pi_n: " << r.pi_n << "\n"
      << "pi_sqrt_n: " << r.pi_sqrt_n << "\n"
      << "half_p_square: " << r.half_p_square << "\n";
}

int cmd_graph(const GraphArgs& a, std::ostream& out) {
  const SetFile file = load_set(a.set, a.n);
  const SubsetProductSet set = file.to_set();
  Reduction red;
  FactorGraph g;
  std::optional<Audit> audit;
  try {
    red = reduce_set(set);
    g = build_graph(red.reduced);
    if (a.audit) audit = bound_audit(set, a.threshold);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
  if (!a.dot.empty()) {
    const std::string dot = to_dot(g, a.all_vertices);
    if (a.dot == "-") {
      out << dot;
    } else {
      write_file(a.dot, dot);
    }
  }
  if (audit) {
    print_report(audit->report, out);
  } else if (a.dot != "-") {
    out << "elements: " << set.size() << "\n"
        << "removed_for_injectivity: " << red.removed.size() << "\n"
        << "edges: " << g.edges().size() << "\n"
        << "p_square: " << join(g.p_square()) << "\n";
  }
  return exit_code::ok;
}

int cmd_bounds(Int n, std::ostream& out) {
  const Int pi = prime_pi(n), pi2 = prime_pi(integer_root(n, 2)), pi3 = prime_pi(integer_root(n, 3));
  struct Row {
    std::string kind;
    Int size;
    std::optional<Int> formula;
  };
  std::vector<Row> rows;
  rows.push_back({"erdos", erdos_basic(n).set.size(), pi + pi2});
  Int chain = 0;
  const EkTable table = default_ek_table();
  const auto& ek = table.rows();
  for (std::size_t i = 0; i < ek.size(); ++i) {
    Int band = prime_pi(integer_root(n, static_cast<unsigned>(ek[i].g)));
    if (i + 1 < ek.size()) band -= prime_pi(integer_root(n, static_cast<unsigned>(ek[i + 1].g)));
    chain += band * ek[i].k;
  }
  rows.push_back({"gk-chain", gk_chain(n).set.size(), chain});
  rows.push_back({"triples", triples_construction(n).set.size(), pi - 2 * pi3 + pi2 + 7 * (pi3 / 3)});
  if (n >= 4) {
    rows.push_back({"tree", tree_construction(n).set.size(), pi + pi2 - 1});
  } else {
    rows.push_back({"tree", 0, std::nullopt});
  }
  const auto sf = squarefree_construction(n, 0.05);
  rows.push_back({"squarefree", sf.set.size(), sf.predicted_count});

  out << std::left << std::setw(12) << "construction" << std::right << std::setw(8) << "size" << std::setw(9)
      << "formula" << std::setw(7) << "match" << "\n";
  for (const Row& r : rows) {
    out << std::left << std::setw(12) << r.kind << std::right << std::setw(8) << r.size << std::setw(9)
        << (r.formula ? std::to_string(*r.formula) : "n/a") << std::setw(7)
        << (r.formula ? (*r.formula == r.size ? "yes" : "no") : "n/a") << "\n";
  }
  const double target = static_cast<double>(pi) + (0.5 - 3 * 0.05) * static_cast<double>(pi2) - 2.0;
  out << "pi(N): " << pi << "\n"
      << "pi(N^(1/2)): " << pi2 << "\n"
      << "pi(N^(1/3)): " << pi3 << "\n"
      << "lower_terms pi(N)+pi(N^(1/2)): " << pi + pi2 << "\n"
      << "squarefree_upper_terms pi(N)+pi(N^(1/2))/2: " << static_cast<double>(pi) + 0.5 * static_cast<double>(pi2)
      << "\n"
      << "squarefree_target(eps=0.05) pi(N)+0.35*pi(N^(1/2))-2: " << target << "\n";
  return exit_code::ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distinct subset product sets: constructions, verification, exact search, factor graphs"};
  app.name("dsp");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Generate a set with distinct subset products");
  construct->add_option("--kind", ca.kind, "erdos, gk-chain, triples, tree or squarefree")
      ->required()
      ->check(CLI::IsMember({"erdos", "gk-chain", "triples", "tree", "squarefree"}));
  construct->add_option("--n", ca.n, "Upper limit N")->required();
  construct->add_option("--epsilon", ca.epsilon, "Squarefree parameter in (0, 1/6)");
  construct->add_option("--tree", ca.tree, "path or star")
      ->check(CLI::IsMember({"path", "star", "path_ascending", "star_on_smallest"}));
  construct->add_option("--ek-table", ca.ek_table, "JSON table of (k, g, elements) rows");
  construct->add_option("--out", ca.out, "Write the set file here instead of stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Decide whether a set has distinct subset products");
  verify->add_option("set", va.set, "Set file (JSON or one integer per line)")->required();
  verify->add_option("--budget", va.budget, "Node budget of the kernel search");
  verify->add_flag("--oracle", va.oracle, "Enumerate all subset products instead");
  verify->add_option("--cert", va.cert, "Certificate path (default <set>.cert.json)");
  verify->add_option("--n", va.n, "n_limit for plain text input");

  ExactArgs ea;
  auto* exact = app.add_subcommand("exact", "Exact f(N), h(N) or g(k)");
  exact->set_help_flag("--help", "Print this help message and exit");
  auto* which = exact->add_option_group("function");
  which->add_flag("--f", ea.f, "Largest distinct subset product set in [N]");
  which->add_flag("--h", ea.h, "As --f with squarefree elements");
  which->add_flag("--g", ea.g, "Smallest max of a k-set with distinct subset sums");
  which->require_option(1);
  exact->add_option("--n", ea.n, "N, or k for --g")->required();
  exact->add_option("--budget", ea.budget, "Node budget");
  exact->add_option("--threads", ea.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  exact->add_option("--out", ea.out, "Also write the witness as a set file");

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Prime factorization graph export and bound audit");
  graph->add_option("set", ga.set, "Set file")->required();
  graph->add_option("--dot", ga.dot, "DOT output path, - for stdout");
  graph->add_flag("--audit", ga.audit, "Run the removal pipeline and print the report");
  graph->add_option("--threshold", ga.threshold, "Cycle threshold L (default max(3, floor(N^(1/12))))");
  graph->add_flag("--all-vertices", ga.all_vertices, "Keep isolated vertices in the DOT output");
  graph->add_option("--n", ga.n, "n_limit for plain text input");

  Int bounds_n = 0;
  auto* bounds = app.add_subcommand("bounds", "Construction sizes against their counting formulas");
  bounds->add_option("--n", bounds_n, "Upper limit N")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (*construct) return cmd_construct(ca, out);
    if (*verify) return cmd_verify(va, out);
    if (*exact) return cmd_exact(ea, out);
    if (*graph) return cmd_graph(ga, out);
    return cmd_bounds(bounds_n, out);
  } catch (const ParseError& e) {
    err << "dsp: " << e.what() << "\n";
    return exit_code::data;
  } catch (const CapExceeded& e) {
    err << "dsp: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const InvalidInput& e) {
    err << "dsp: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "dsp: " << e.what() << "\n";
    return exit_code::data;
  }
}

}  // namespace dsp
