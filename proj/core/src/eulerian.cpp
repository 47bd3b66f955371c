#include "ectrace/eulerian.hpp"

#include <cstdlib>

#include "ectrace/census.hpp"
#include "ectrace/error.hpp"

namespace ectrace {

Orientation Orientation::parse(std::string_view text, int edge_count) {
  require(static_cast<int>(text.size()) == edge_count, ErrorKind::kUsage,
          "orientation needs one '+' or '-' per edge (" + std::to_string(edge_count) + ")");
  Orientation o;
  for (char c : text) {
    require(c == '+' || c == '-', ErrorKind::kUsage,
            std::string("orientation character must be '+' or '-', got '") + c + "'");
    o.flips.push_back(c == '-');
  }
  return o;
}

std::string Orientation::to_string() const {
  std::string s;
  for (bool f : flips) s += f ? '-' : '+';
  return s;
}

namespace {

void check_orientation_size(const MultiGraph& g, const Orientation& o) {
  require(o.flips.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kUsage,
          "orientation length must equal the edge count");
}

// Tail and head of edge i under o.
std::pair<int, int> arc(const MultiGraph& g, const Orientation& o, int i) {
  const Edge& e = g.edge(i);
  return o.flips[static_cast<std::size_t>(i)] ? std::pair{e.v, e.u} : std::pair{e.u, e.v};
}

CountReport trace_formula(const MultiGraph& g, const SpanningTree& tree, int modulus,
                          Method method, const CountOptions& options) {
  const int m = g.edge_count();
  const TwistEnumerator twists(modulus, static_cast<std::size_t>(m), tree.cotree_edges);
  const auto terms = twists.size();
  require(terms.has_value(), ErrorKind::kBudget, "t^g does not fit in 64 bits");
  check_term_budget(*terms, options);
  std::uint64_t denominator = 0;
  require(!__builtin_mul_overflow(*terms, static_cast<std::uint64_t>(m), &denominator),
          ErrorKind::kBudget, "m * t^g does not fit in 64 bits");

  const Chain ones = Chain::indicator(modulus, static_cast<std::size_t>(m), tree.cotree_edges);
  const TraceSum sum = sum_weighted_traces(
      g, *terms, [&](std::uint64_t k) { return class_term(twists, ones, k); }, method, m,
      options);
  CountReport report = finalize_count(sum, denominator, method, options);
  report.modulus = modulus;
  report.length = m;
  report.subset = tree.cotree_edges;
  return report;
}

// BFS from the last vertex, preferring high edge indices. Differs from the
// default tree on most graphs with a cycle.
[[maybe_unused]] SpanningTree alternate_spanning_tree(const MultiGraph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<int> frontier{g.vertex_count() - 1};
  std::vector<int> edges;
  seen.back() = true;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const int v = frontier[head];
    const auto inc = g.incident_edges(v);
    for (auto it = inc.rbegin(); it != inc.rend(); ++it) {
      const Edge& e = g.edge(*it);
      const int w = e.u == v ? e.v : e.u;
      if (seen[w]) continue;
      seen[w] = true;
      edges.push_back(*it);
      frontier.push_back(w);
    }
  }
  return make_spanning_tree(g, std::move(edges));
}

}  // namespace

std::vector<int> out_degrees(const MultiGraph& g, const Orientation& o) {
  check_orientation_size(g, o);
  std::vector<int> out(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int i = 0; i < g.edge_count(); ++i) ++out[arc(g, o, i).first];
  return out;
}

bool is_eulerian_orientation(const MultiGraph& g, const Orientation& o) {
  check_orientation_size(g, o);
  std::vector<int> balance(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto [tail, head] = arc(g, o, i);
    ++balance[tail];
    --balance[head];
  }
  for (int b : balance) {
    if (b != 0) return false;
  }
  return true;
}

CountReport count_eulerian_cycles(const MultiGraph& g, const SpanningTree& tree, Method method,
                                  const CountOptions& options) {
  require(is_eulerian(g), ErrorKind::kPrecondition,
          "graph not Eulerian (use census with the full edge set to count Eulerian circuits)");
  CountReport report = trace_formula(g, tree, 2, method, options);
  report.formula = "eulerian";
#ifndef NDEBUG
  if (report.terms <= 1024) {
    const SpanningTree other = alternate_spanning_tree(g);
    if (other.tree_edges != tree.tree_edges) {
      const CountReport again = trace_formula(g, other, 2, method, options);
      require(again.count == report.count, ErrorKind::kNumerical,
              "trace formula disagrees across spanning trees");
    }
  }
#endif
  return report;
}

CountReport count_eulerian_cycles(const MultiGraph& g, Method method,
                                  const CountOptions& options) {
  return count_eulerian_cycles(g, default_spanning_tree(g), method, options);
}

CountReport count_eulerian_cycles_directed(const MultiGraph& g, const Orientation& o,
                                           const SpanningTree& tree, int modulus, Method method,
                                           const CountOptions& options) {
  require(modulus >= 3, ErrorKind::kPrecondition, "t must be >= 3 for directed counts");
  require(is_eulerian_orientation(g, o), ErrorKind::kPrecondition,
          "orientation not Eulerian");
  const MultiGraph directed = g.reoriented(o.flips);
  CountReport report = trace_formula(directed, tree, modulus, method, options);
  report.formula = "directed";
  return report;
}

std::int64_t integer_determinant(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  __int128 previous = 1;
  const auto narrow = [](__int128 x) {
    require(x >= INT64_MIN && x <= INT64_MAX, ErrorKind::kNumerical,
            "determinant overflows 64 bits");
    return static_cast<std::int64_t>(x);
  };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && a[pivot][k] == 0) ++pivot;
      if (pivot == n) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(a[i][j]) * a[k][k] -
                             static_cast<__int128>(a[i][k]) * a[k][j];
        a[i][j] = narrow(num / previous);
      }
      a[i][k] = 0;
    }
    previous = a[k][k];
  }
  return narrow(static_cast<__int128>(sign) * a[n - 1][n - 1]);
}

LaplacianReport best_count(const MultiGraph& g, const Orientation& o, std::optional<int> root) {
  require(is_eulerian_orientation(g, o), ErrorKind::kPrecondition, "orientation not Eulerian");
  const int n = g.vertex_count();
  LaplacianReport report;
  report.root = root.value_or(n - 1);
  require(report.root >= 0 && report.root < n, ErrorKind::kUsage, "root vertex out of range");

  report.laplacian.assign(static_cast<std::size_t>(n),
                          std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto [tail, head] = arc(g, o, i);
    if (tail == head) continue;  // loops cancel in the Laplacian
    ++report.laplacian[tail][tail];
    --report.laplacian[tail][head];
  }

  std::vector<std::vector<std::int64_t>> reduced;
  for (int i = 0; i < n; ++i) {
    if (i == report.root) continue;
    std::vector<std::int64_t> row;
    for (int j = 0; j < n; ++j) {
      if (j != report.root) row.push_back(report.laplacian[i][j]);
    }
    reduced.push_back(std::move(row));
  }
  report.determinant = integer_determinant(std::move(reduced));
  report.arborescences = report.determinant;

  std::int64_t cycles = report.arborescences;
  for (int d : out_degrees(g, o)) {
    for (int f = 2; f < d; ++f) {
      require(!__builtin_mul_overflow(cycles, static_cast<std::int64_t>(f), &cycles),
              ErrorKind::kNumerical, "Eulerian cycle count overflows 64 bits");
    }
  }
  report.eulerian_cycles = cycles;
  return report;
}

std::vector<Orientation> enumerate_eulerian_orientations(const MultiGraph& g, int max_edges) {
  require(is_eulerian(g), ErrorKind::kPrecondition, "graph not Eulerian");
  require(g.edge_count() <= max_edges, ErrorKind::kBudget,
          "orientation enumeration limited to " + std::to_string(max_edges) + " edges");
  const int m = g.edge_count();
  std::vector<int> balance(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<int> remaining(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    ++remaining[e.u];
    ++remaining[e.v];
  }

  std::vector<Orientation> out;
  Orientation current = Orientation::reference(m);
  // Depth-first over edges; '+' is tried before '-'.
  const auto visit = [&](const auto& self, int i) -> void {
    if (i == m) {
      out.push_back(current);
      return;
    }
    const Edge& e = g.edge(i);
    if (e.is_loop()) {
      for (bool flip : {false, true}) {
        current.flips[i] = flip;
        self(self, i + 1);
      }
      current.flips[i] = false;
      return;
    }
    --remaining[e.u];
    --remaining[e.v];
    for (bool flip : {false, true}) {
      const int tail = flip ? e.v : e.u;
      const int head = flip ? e.u : e.v;
      ++balance[tail];
      --balance[head];
      if (std::abs(balance[tail]) <= remaining[tail] &&
          std::abs(balance[head]) <= remaining[head]) {
        current.flips[i] = flip;
        self(self, i + 1);
      }
      --balance[tail];
      ++balance[head];
    }
    current.flips[i] = false;
    ++remaining[e.u];
    ++remaining[e.v];
  };
  visit(visit, 0);
  return out;
}

CountReport count_via_best(const MultiGraph& g, int max_edges) {
  const auto orientations = enumerate_eulerian_orientations(g, max_edges);
  std::int64_t total = 0;
  for (const Orientation& o : orientations) {
    require(!__builtin_add_overflow(total, best_count(g, o).eulerian_cycles, &total),
            ErrorKind::kNumerical, "Eulerian cycle count overflows 64 bits");
  }
  CountReport report;
  report.count = total;
  report.raw_sum = static_cast<double>(total);
  report.terms = orientations.size();
  report.formula = "best";
  report.length = g.edge_count();
  report.exact = true;
  return report;
}

}  // namespace ectrace
