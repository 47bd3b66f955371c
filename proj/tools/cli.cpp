#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ectrace/census.hpp"
#include "ectrace/error.hpp"
#include "ectrace/eulerian.hpp"
#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"
#include "ectrace/json_io.hpp"
#include "ectrace/oracle.hpp"
#include "ectrace/reductions.hpp"
#include "ectrace/twisted.hpp"

namespace ectrace::cli {
namespace {

using nlohmann::json;

Method parse_method(const std::string& s) {
  return s == "vertex" ? Method::kVertex : Method::kEdge;
}

CountOptions count_options(const RunConfig& c) {
  CountOptions o;
  if (c.arithmetic == "floating") o.trace.arithmetic = Arithmetic::kFloating;
  else if (c.arithmetic == "exact") o.trace.arithmetic = Arithmetic::kExact;
  o.trace.imag_tolerance = c.imag_tolerance;
  o.tolerance = c.tolerance;
  o.max_terms = c.max_terms;
  o.force = c.force;
  o.threads = c.serial ? 1u : c.threads;
  return o;
}

SpanningTree pick_tree(const RunConfig& c, const GraphFile& file) {
  if (!c.tree.empty()) return make_spanning_tree(file.graph, c.tree);
  if (file.tree) return make_spanning_tree(file.graph, *file.tree);
  return default_spanning_tree(file.graph);
}

Orientation pick_orientation(const RunConfig& c, const MultiGraph& g) {
  if (c.orientation.empty()) return Orientation::reference(g.edge_count());
  return Orientation::parse(c.orientation, g.edge_count());
}

std::vector<int> split_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      require(used == item.size(), ErrorKind::kUsage, "bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      fail(ErrorKind::kUsage, "bad integer '" + item + "'");
    }
  }
  return out;
}

// "ones", "zero", |subset| residues placed on the subset, or m residues.
Chain parse_chain(const std::string& text, int modulus, std::size_t edge_count,
                  const std::vector<int>& subset) {
  if (text.empty() || text == "zero") return Chain::zero(modulus, edge_count);
  if (text == "ones") return Chain::indicator(modulus, edge_count, subset);
  const std::vector<int> values = split_ints(text);
  if (values.size() == edge_count) return Chain(modulus, values);
  require(values.size() == subset.size(), ErrorKind::kUsage,
          "expected " + std::to_string(subset.size()) + " or " + std::to_string(edge_count) +
              " residues, got " + std::to_string(values.size()));
  Chain c = Chain::zero(modulus, edge_count);
  for (std::size_t k = 0; k < subset.size(); ++k) c.set(static_cast<std::size_t>(subset[k]), values[k]);
  return c;
}

json trace_cell(const TraceValue& v) {
  if (v.exact) return *v.exact;
  return v.real;
}

json with_tree(json j, const SpanningTree& tree) {
  j["tree"] = tree.tree_edges;
  return j;
}

Output run_count(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const SpanningTree tree = pick_tree(c, file);
  const CountReport r =
      count_eulerian_cycles(file.graph, tree, parse_method(c.method), count_options(c));
  return {with_tree(report_to_json(r), tree), {}, {}};
}

Output run_count_directed(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const SpanningTree tree = pick_tree(c, file);
  const Orientation o = pick_orientation(c, file.graph);
  const CountReport r = count_eulerian_cycles_directed(
      file.graph, o, tree, c.modulus.value_or(3), parse_method(c.method), count_options(c));
  json j = with_tree(report_to_json(r), tree);
  j["orientation"] = o.to_string();
  return {j, {}, {}};
}

Output run_census(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const MultiGraph& g = file.graph;
  const SpanningTree tree = pick_tree(c, file);
  require(c.length.has_value(), ErrorKind::kUsage, "census needs --length");
  const int t = c.modulus.value_or(2);
  require(t >= 2, ErrorKind::kUsage, "t must be >= 2");
  const auto m = static_cast<std::size_t>(g.edge_count());
  CountReport r;
  Chain alpha = Chain::zero(t, m);
  if (c.homology) {
    require(c.subset.empty(), ErrorKind::kUsage, "--homology sums over the cotree; drop --subset");
    alpha = parse_chain(c.alpha, t, m, tree.cotree_edges);
    // Values given on the cotree name the circulation rho_T^-1 of them.
    if (alpha.supported_on(tree.cotree_edges)) alpha = rho_inverse(g, tree, alpha);
    r = count_circuits_in_homology(g, tree, alpha, *c.length, parse_method(c.method),
                                   count_options(c));
  } else {
    const std::vector<int> subset = c.subset.empty() ? tree.cotree_edges : c.subset;
    alpha = parse_chain(c.alpha, t, m, subset);
    r = count_circuits_in_class(g, subset, alpha, *c.length, parse_method(c.method),
                                count_options(c));
  }
  json j = with_tree(report_to_json(r), tree);
  j["alpha"] = chain_to_json(alpha);
  return {j, {}, {}};
}

Output run_best(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const Orientation o = pick_orientation(c, file.graph);
  const LaplacianReport r = best_count(file.graph, o, c.root);
  Output out;
  out.summary = {{"orientation", o.to_string()},
                 {"root", r.root},
                 {"det", r.determinant},
                 {"arborescences", r.arborescences},
                 {"ec", r.eulerian_cycles},
                 {"out_degrees", out_degrees(file.graph, o)}};
  if (c.dump_matrix) {
    out.summary["laplacian"] = r.laplacian;
    for (std::size_t v = 0; v < r.laplacian.size(); ++v) out.columns.push_back("v" + std::to_string(v));
    for (const auto& row : r.laplacian) out.rows.emplace_back(row.begin(), row.end());
  }
  return out;
}

Output run_orientations(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const MultiGraph& g = file.graph;
  Output out;
  out.columns = {"orientation", "det", "ec"};
  std::int64_t total = 0;
  // A graph with an odd vertex simply has none.
  const auto all = is_eulerian(g) ? enumerate_eulerian_orientations(g) : std::vector<Orientation>{};
  for (const Orientation& o : all) {
    const LaplacianReport r = best_count(g, o, c.root);
    total += r.eulerian_cycles;
    out.rows.push_back({o.to_string(), r.determinant, r.eulerian_cycles});
  }
  out.summary = {{"orientations", all.size()}, {"ec", total}};
  return out;
}

std::vector<GraphAutomorphism> pick_generators(const RunConfig& c, const MultiGraph& g) {
  if (!c.generators.empty()) return load_generators(g, c.generators);
  if (!c.auto_generators) return {};
  auto group = find_automorphisms(g);
  group.erase(group.begin());  // identity
  return group;
}

std::optional<Half> parse_half(const std::string& s) {
  if (s == "all") return Half::kAll;
  if (s == "first") return Half::kFirst;
  if (s == "second") return Half::kSecond;
  return std::nullopt;
}

ReductionMode parse_mode(const std::string& s) {
  if (s == "antisym") return ReductionMode::kAntisym;
  if (s == "combined") return ReductionMode::kCombined;
  return ReductionMode::kAut;
}

Output run_reduce(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const MultiGraph& g = file.graph;
  const SpanningTree tree = pick_tree(c, file);
  const auto generators = pick_generators(c, g);
  ReductionPlan plan;
  plan.mode = parse_mode(c.mode);
  plan.half = parse_half(c.half);
  plan.pinned_edge = c.pinned_edge;
  require(plan.mode == ReductionMode::kAntisym || !generators.empty(), ErrorKind::kUsage,
          "aut and combined modes need --generators or --auto-generators");
  const ReducedCount r =
      count_eulerian_reduced(g, tree, generators, plan, parse_method(c.method), count_options(c));

  Output out;
  out.summary = with_tree(report_to_json(r.report), tree);
  out.summary["mode"] = c.mode;
  out.summary["generators"] = generators.size();
  out.summary["orbits"] = r.orbits.orbits.size();
  out.summary["twists"] = r.orbits.total;
  if (plan.mode != ReductionMode::kAut || plan.half) {
    const AntisymPartition p = antisym_partition(g, tree, c.pinned_edge);
    out.summary["pinned_edge"] = p.pinned_edge;
    out.summary["canonical"] = chain_label(p.canonical);
  }
  if (!c.dump_rows) return out;

  TraceOptions trace;
  trace.arithmetic = count_options(c).trace.arithmetic;
  trace.imag_tolerance = c.imag_tolerance;
  const int m = g.edge_count();
  out.columns = {"representative", "size", "members", "sign", "trace_W", "trace_A"};
  for (const Orbit& orbit : r.orbits.orbits) {
    std::string members;
    for (const Chain& x : orbit.members) {
      if (!members.empty()) members += ' ';
      members += chain_label(x);
    }
    const Chain& rep = orbit.representative;
    out.rows.push_back({chain_label(rep), orbit.size(), members, sigma(rep) == 0 ? 1 : -1,
                        trace_cell(twisted_trace(g, rep, MatrixKind::kEdge, m, trace)),
                        trace_cell(twisted_trace(g, rep, MatrixKind::kVertex, m, trace))});
  }
  return out;
}

Output run_oracle(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const MultiGraph& g = file.graph;
  oracle::Budget budget{c.oracle_max_length, c.oracle_max_nodes};
  Output out;
  if (!c.length) {
    const std::uint64_t ec = oracle::count_eulerian_oracle(g, budget);
    out.summary = {{"kind", "eulerian"}, {"count", ec}, {"circuits", ec * static_cast<std::uint64_t>(g.edge_count())}};
    return out;
  }
  const auto kind = parse_method(c.method) == Method::kEdge ? oracle::WalkKind::kCircuits
                                                            : oracle::WalkKind::kClosedWalks;
  const char* kind_name = kind == oracle::WalkKind::kCircuits ? "circuits" : "closed_walks";
  if (c.alpha.empty()) {
    const std::uint64_t n = kind == oracle::WalkKind::kCircuits
                                ? oracle::enumerate_circuits(g, *c.length, budget)
                                : oracle::enumerate_closed_walks(g, *c.length, budget);
    out.summary = {{"kind", kind_name}, {"count", n}, {"length", *c.length}};
    return out;
  }
  const SpanningTree tree = pick_tree(c, file);
  const int t = c.modulus.value_or(2);
  const std::vector<int> subset = c.subset.empty() ? tree.cotree_edges : c.subset;
  const Chain alpha = parse_chain(c.alpha, t, static_cast<std::size_t>(g.edge_count()), subset);
  const std::uint64_t n = oracle::census_oracle(g, subset, alpha, *c.length, kind, budget);
  out.summary = {{"kind", kind_name}, {"count", n},          {"length", *c.length},
                 {"t", t},            {"subset", subset},   {"alpha", chain_to_json(alpha)}};
  return out;
}

Output run_spectra(const RunConfig& c) {
  const GraphFile file = load_graph_file(c.input);
  const MultiGraph& g = file.graph;
  const int t = c.modulus.value_or(2);
  std::vector<int> all(static_cast<std::size_t>(g.edge_count()));
  for (int i = 0; i < g.edge_count(); ++i) all[static_cast<std::size_t>(i)] = i;
  const Chain twist = parse_chain(c.twist, t, all.size(), all);
  const TwistedMatrix mat = twisted_matrix(g, twist, parse_method(c.method));
  const SpectrumSummary spec = spectrum(mat);

  Output out;
  json eig = json::array();
  out.columns = {"index", "re", "im"};
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    const auto z = spec.eigenvalues[k];
    eig.push_back({z.real(), z.imag()});
    out.rows.push_back({k, z.real(), z.imag()});
  }
  out.summary = {{"t", t},
                 {"twist", chain_to_json(twist)},
                 {"method", to_string(mat.kind)},
                 {"dim", mat.dim()},
                 {"hermitian", is_hermitian(mat.entries)},
                 {"eigenvalues", eig}};
  if (c.length) {
    TraceOptions trace;
    trace.arithmetic = count_options(c).trace.arithmetic;
    trace.imag_tolerance = c.imag_tolerance;
    const TraceValue v = twisted_trace(g, twist, mat.kind, *c.length, trace);
    const auto ps = spec.power_sum(*c.length);
    out.summary["length"] = *c.length;
    out.summary["trace"] = trace_cell(v);
    out.summary["power_sum"] = {ps.real(), ps.imag()};
  }
  if (c.dump_matrix) out.summary["matrix"] = matrix_to_json(mat);
  return out;
}

std::string cell_text(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("graph", c.input, "Graph file")->required()->check(CLI::ExistingFile);
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->capture_default_str();
}

void add_counting(CLI::App* sub, RunConfig& c) {
  sub->add_option("--method", c.method, "vertex (A) or edge (W) matrices")
      ->check(CLI::IsMember({"vertex", "edge"}))
      ->capture_default_str();
  sub->add_option("--arithmetic", c.arithmetic, "Trace arithmetic")
      ->check(CLI::IsMember({"auto", "floating", "exact"}))
      ->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "Absolute bound on the rounding residual")
      ->capture_default_str();
  sub->add_option("--imag-tolerance", c.imag_tolerance, "Relative bound on imaginary parts")
      ->capture_default_str();
  sub->add_option("--budget", c.max_terms, "Largest number of twists summed without --force")
      ->capture_default_str();
  sub->add_flag("--force", c.force, "Ignore the term budget");
  auto* threads = sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  sub->add_flag("--serial", c.serial, "Single-threaded, fixed summation order")->excludes(threads);
}

void add_tree(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tree", c.tree, "Spanning tree edge indices")->delimiter(',');
}

void add_orientation(CLI::App* sub, RunConfig& c) {
  sub->add_option("--orientation", c.orientation, "One '+' or '-' per edge");
}

void add_class(CLI::App* sub, RunConfig& c, bool length_required) {
  sub->add_option("-t,--modulus", c.modulus, "t");
  auto* len = sub->add_option("-l,--length", c.length, "Walk length");
  if (length_required) len->required();
  sub->add_option("--subset", c.subset, "Edge subset F (default: cotree)")->delimiter(',');
  sub->add_option("--alpha", c.alpha, "Class: 'ones', 'zero', |F| residues or m residues");
}

void build(CLI::App& app, RunConfig& c) {
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "Eulerian cycles of an undirected graph");
  add_common(count, c);
  add_counting(count, c);
  add_tree(count, c);

  auto* directed = app.add_subcommand("count-directed", "Eulerian cycles of an orientation");
  add_common(directed, c);
  add_counting(directed, c);
  add_tree(directed, c);
  add_orientation(directed, c);
  directed->add_option("-t,--modulus", c.modulus, "t >= 3 (default 3)");

  auto* census = app.add_subcommand("census", "Circuits or closed walks in one homology class");
  add_common(census, c);
  add_counting(census, c);
  add_tree(census, c);
  add_class(census, c, true);
  census->add_flag("--homology", c.homology,
                   "Treat --alpha as a circulation and sum over the cotree");

  auto* best = app.add_subcommand("best", "BEST theorem count of one orientation");
  add_common(best, c);
  add_orientation(best, c);
  best->add_option("--root", c.root, "Root vertex (default: last)");
  best->add_flag("--dump-matrix", c.dump_matrix, "Print the Laplacian");

  auto* orientations = app.add_subcommand("orientations", "All Eulerian orientations with BEST counts");
  add_common(orientations, c);
  orientations->add_option("--root", c.root, "Root vertex (default: last)");

  auto* reduce = app.add_subcommand("reduce", "Eulerian cycles with one trace per orbit");
  add_common(reduce, c);
  add_counting(reduce, c);
  add_tree(reduce, c);
  reduce->add_option("--mode", c.mode, "Reduction")
      ->check(CLI::IsMember({"aut", "antisym", "combined"}))
      ->capture_default_str();
  reduce->add_option("--half", c.half, "Twist set")->check(CLI::IsMember({"all", "first", "second"}));
  reduce->add_option("--pinned-edge", c.pinned_edge, "Edge splitting the two halves");
  auto* gens = reduce->add_option("--generators", c.generators, "Automorphism generators (JSON)")
                   ->check(CLI::ExistingFile);
  reduce->add_flag("--auto-generators", c.auto_generators, "Use the full automorphism group")
      ->excludes(gens);
  reduce->add_flag("--dump-rows", c.dump_rows, "One row per orbit");

  auto* oracle = app.add_subcommand("oracle", "Brute-force counts by backtracking");
  add_common(oracle, c);
  add_tree(oracle, c);
  add_class(oracle, c, false);
  oracle->add_option("--method", c.method, "edge: circuits, vertex: closed walks")
      ->check(CLI::IsMember({"vertex", "edge"}))
      ->capture_default_str();
  oracle->add_option("--max-length", c.oracle_max_length)->capture_default_str();
  oracle->add_option("--max-nodes", c.oracle_max_nodes)->capture_default_str();

  auto* spectra = app.add_subcommand("spectra", "Spectrum of one twisted matrix");
  add_common(spectra, c);
  spectra->add_option("--method", c.method, "vertex (A) or edge (W)")
      ->check(CLI::IsMember({"vertex", "edge"}))
      ->capture_default_str();
  spectra->add_option("--arithmetic", c.arithmetic, "Trace arithmetic")
      ->check(CLI::IsMember({"auto", "floating", "exact"}));
  spectra->add_option("--imag-tolerance", c.imag_tolerance);
  spectra->add_option("-t,--modulus", c.modulus, "t");
  spectra->add_option("--twist", c.twist, "m residues, 'ones' or 'zero'");
  spectra->add_option("-l,--length", c.length, "Also report trace(M^length)");
  spectra->add_flag("--dump-matrix", c.dump_matrix, "Print the matrix");
}

}  // namespace

Output dispatch(const RunConfig& c) {
  if (c.command == "count") return run_count(c);
  if (c.command == "count-directed") return run_count_directed(c);
  if (c.command == "census") return run_census(c);
  if (c.command == "best") return run_best(c);
  if (c.command == "orientations") return run_orientations(c);
  if (c.command == "reduce") return run_reduce(c);
  if (c.command == "oracle") return run_oracle(c);
  if (c.command == "spectra") return run_spectra(c);
  fail(ErrorKind::kUsage, "unknown command '" + c.command + "'");
}

void emit(const RunConfig& c, const Output& output, double seconds, std::ostream& out) {
  if (c.format == "json") {
    json j = output.summary;
    if (!output.columns.empty()) {
      json rows = json::array();
      for (const auto& row : output.rows) {
        json r = json::object();
        for (std::size_t k = 0; k < output.columns.size(); ++k) r[output.columns[k]] = row[k];
        rows.push_back(r);
      }
      j["rows"] = rows;
    }
    j["seconds"] = seconds;
    out << j.dump(2) << '\n';
    return;
  }

  std::vector<std::string> columns = output.columns;
  std::vector<std::vector<std::string>> cells;
  if (columns.empty()) {
    columns = {"field", "value"};
    for (const auto& [key, value] : output.summary.items()) cells.push_back({key, cell_text(value)});
  } else {
    for (const auto& row : output.rows) {
      std::vector<std::string> line;
      for (const json& v : row) line.push_back(cell_text(v));
      cells.push_back(line);
    }
  }

  if (c.format == "csv") {
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << csv_escape(columns[k]);
    out << '\n';
    for (const auto& line : cells) {
      for (std::size_t k = 0; k < line.size(); ++k) out << (k ? "," : "") << csv_escape(line[k]);
      out << '\n';
    }
    return;
  }

  if (!output.columns.empty()) {
    for (const auto& [key, value] : output.summary.items()) {
      if (!value.is_array() || value.size() <= 16) out << "# " << key << ": " << cell_text(value) << '\n';
    }
  }
  std::vector<std::size_t> width(columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) width[k] = columns[k].size();
  for (const auto& line : cells) {
    for (std::size_t k = 0; k < line.size(); ++k) width[k] = std::max(width[k], line[k].size());
  }
  auto print = [&](const std::vector<std::string>& line) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      out << (k ? "  " : "") << line[k];
      if (k + 1 < line.size()) out << std::string(width[k] - line[k].size(), ' ');
    }
    out << '\n';
  };
  print(columns);
  for (const auto& line : cells) print(line);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Eulerian cycle counts from twisted adjacency traces", "ectrace"};
  build(app, config);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kUsage);
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    const auto start = std::chrono::steady_clock::now();
    const Output output = dispatch(config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(config, output, seconds, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kParse);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kUsage);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ectrace"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ectrace::cli
