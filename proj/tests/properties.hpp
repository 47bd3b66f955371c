#ifndef ECTRACE_TESTS_PROPERTIES_HPP
#define ECTRACE_TESTS_PROPERTIES_HPP

// Randomized property checks shared by the unit suite and the acceptance
// binary. Each check returns the number of failed assertions and a short
// description of the first failure.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ectrace/census.hpp"
#include "ectrace/error.hpp"
#include "ectrace/eulerian.hpp"
#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"
#include "ectrace/oracle.hpp"
#include "ectrace/reductions.hpp"
#include "ectrace/twisted.hpp"
#include "test_support.hpp"

namespace ectrace::testing {

struct PropertyResult {
  int instances = 0;
  int checks = 0;
  int failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
  bool ok() const { return failures == 0 && checks > 0; }
};

inline constexpr std::uint32_t kPropertySeed = 20240611;
inline constexpr int kPropertyGraphs = 50;

inline std::string describe_graph(const MultiGraph& g) {
  std::string s = format_graph(g);
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// The fixed property corpus: connected multigraphs with n <= 5, m <= 7.
// Genus is capped at 5 so that the all-classes census stays quick.
inline std::vector<MultiGraph> property_graphs(int count = kPropertyGraphs) {
  std::mt19937 rng(kPropertySeed);
  std::vector<MultiGraph> out;
  while (static_cast<int>(out.size()) < count) {
    MultiGraph g = random_multigraph(rng, 5, 7);
    if (g.genus() <= 5) out.push_back(std::move(g));
  }
  return out;
}

// Eulerian corpus with m <= 10.
inline constexpr std::uint64_t kDirectedTermCap = 20'000;

inline std::vector<MultiGraph> eulerian_graphs(int count, int max_edges = 10) {
  std::mt19937 rng(kPropertySeed + 1);
  std::vector<MultiGraph> out;
  while (static_cast<int>(out.size()) < count) out.push_back(random_eulerian(rng, 5, max_edges));
  return out;
}

inline std::vector<SpanningTree> all_spanning_trees(const MultiGraph& g) {
  const int m = g.edge_count();
  const int k = g.vertex_count() - 1;
  std::vector<SpanningTree> out;
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.end() - k, pick.end(), true);
  do {
    std::vector<int> edges;
    for (int i = 0; i < m; ++i) {
      if (pick[i]) edges.push_back(i);
    }
    try {
      out.push_back(make_spanning_tree(g, edges));
    } catch (const Error&) {
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

inline bool is_bridgeless(const MultiGraph& g) {
  for (int drop = 0; drop < g.edge_count(); ++drop) {
    std::vector<Edge> rest;
    for (int i = 0; i < g.edge_count(); ++i) {
      if (i != drop) rest.push_back(g.edge(i));
    }
    if (rest.empty()) return g.vertex_count() == 1;
    try {
      MultiGraph h(g.vertex_count(), rest);
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

inline Chain random_chain(std::mt19937& rng, int t, std::size_t m) {
  Chain c(t, m);
  for (std::size_t i = 0; i < m; ++i) c.set(i, static_cast<int>(rng() % static_cast<unsigned>(t)));
  return c;
}

inline CountOptions serial_options() {
  CountOptions o;
  o.threads = 1;
  return o;
}

// (a) untwisted traces count circuits and closed walks.
inline PropertyResult check_untwisted_traces(const std::vector<MultiGraph>& graphs) {
  PropertyResult r;
  for (const MultiGraph& g : graphs) {
    ++r.instances;
    const Chain zero = Chain::zero(2, static_cast<std::size_t>(g.edge_count()));
    for (int l = 1; l <= 5; ++l) {
      const auto w = twisted_trace(g, zero, MatrixKind::kEdge, l);
      const auto a = twisted_trace(g, zero, MatrixKind::kVertex, l);
      const auto circuits = static_cast<std::int64_t>(oracle::enumerate_circuits(g, l));
      const auto walks = static_cast<std::int64_t>(oracle::enumerate_closed_walks(g, l));
      r.expect(w.exact == circuits, [&] {
        return "tr W^" + std::to_string(l) + " on " + describe_graph(g);
      });
      r.expect(a.exact == walks, [&] {
        return "tr A^" + std::to_string(l) + " on " + describe_graph(g);
      });
    }
  }
  return r;
}

// (b) census trace formulas against the brute-force census, every class.
inline PropertyResult check_census(const std::vector<MultiGraph>& graphs, int max_length = 5) {
  PropertyResult r;
  std::mt19937 rng(kPropertySeed + 2);
  for (const MultiGraph& g : graphs) {
    ++r.instances;
    const SpanningTree tree = random_tree(rng, g);
    const auto& cotree = tree.cotree_edges;
    for (int t : {2, 3}) {
      const TwistEnumerator classes(t, static_cast<std::size_t>(g.edge_count()), cotree);
      for (int l = 1; l <= max_length; ++l) {
        const auto circuits = oracle::census_oracle_table(g, cotree, t, l, oracle::WalkKind::kCircuits);
        const auto walks = oracle::census_oracle_table(g, cotree, t, l, oracle::WalkKind::kClosedWalks);
        for (std::uint64_t k = 0; k < *classes.size(); ++k) {
          const Chain alpha = classes.at(k);
          const auto via_edge =
              count_circuits_in_class(g, cotree, alpha, l, Method::kEdge, serial_options());
          const auto via_vertex =
              count_circuits_in_class(g, cotree, alpha, l, Method::kVertex, serial_options());
          r.expect(via_edge.count == static_cast<std::int64_t>(circuits[k]), [&] {
            return "N_" + std::to_string(t) + " l=" + std::to_string(l) + " on " + describe_graph(g);
          });
          r.expect(via_vertex.count == static_cast<std::int64_t>(walks[k]), [&] {
            return "closed-walk census t=" + std::to_string(t) + " l=" + std::to_string(l) + " on " +
                   describe_graph(g);
          });
        }
      }
    }
  }
  return r;
}

// (c) sum_{gamma in M_t(F)} eps^<gamma, alpha> is t^|F| when alpha vanishes on F, else 0.
inline PropertyResult check_orthogonality(const std::vector<MultiGraph>& graphs) {
  PropertyResult r;
  std::mt19937 rng(kPropertySeed + 3);
  for (const MultiGraph& g : graphs) {
    ++r.instances;
    const auto m = static_cast<std::size_t>(g.edge_count());
    const SpanningTree tree = random_tree(rng, g);
    for (int t : {2, 3, 4}) {
      const TwistEnumerator twists(t, m, tree.cotree_edges);
      const double full = static_cast<double>(*twists.size());
      for (int trial = 0; trial < 6; ++trial) {
        Chain alpha = random_chain(rng, t, m);
        if (trial == 0) alpha = alpha - alpha.restricted(tree.cotree_edges);
        std::complex<double> sum = 0.0;
        for (std::uint64_t k = 0; k < *twists.size(); ++k) {
          sum += root_of_unity(t, pairing(twists.at(k), alpha));
        }
        const double expected = alpha.restricted(tree.cotree_edges).is_zero() ? full : 0.0;
        r.expect(std::abs(sum - expected) <= 1e-8 * full, [&] {
          return "orthogonality t=" + std::to_string(t) + " on " + describe_graph(g);
        });
      }
    }
  }
  return r;
}

// (d) A_gamma is exactly Hermitian and every trace reported is real.
inline PropertyResult check_hermitian(const std::vector<MultiGraph>& graphs) {
  PropertyResult r;
  std::mt19937 rng(kPropertySeed + 4);
  for (const MultiGraph& g : graphs) {
    ++r.instances;
    const auto m = static_cast<std::size_t>(g.edge_count());
    for (int t = 2; t <= 6; ++t) {
      const Chain gamma = random_chain(rng, t, m);
      const TwistedMatrix a = vertex_matrix(g, gamma);
      r.expect(is_hermitian(a.entries, 0.0), [&] { return "A_gamma not Hermitian on " + describe_graph(g); });
      for (MatrixKind kind : {MatrixKind::kVertex, MatrixKind::kEdge}) {
        for (int l = 1; l <= 6; ++l) {
          TraceOptions loose;
          loose.imag_tolerance = 1.0;  // inspect the imaginary part ourselves
          loose.arithmetic = Arithmetic::kFloating;
          const TraceValue v = twisted_trace(g, gamma, kind, l, loose);
          r.expect(std::abs(v.imag) < 1e-9 * (1 + std::abs(v.real)), [&] {
            return "non-real trace t=" + std::to_string(t) + " on " + describe_graph(g);
          });
        }
      }
    }
  }
  return r;
}

// (e) spec A_{gamma + gamma_T} = -reverse(spec A_gamma) on non-bipartite graphs.
inline PropertyResult check_spectral_antisymmetry(const std::vector<MultiGraph>& graphs) {
  PropertyResult r;
  std::mt19937 rng(kPropertySeed + 5);
  for (const MultiGraph& g : graphs) {
    if (is_bipartite(g)) continue;
    ++r.instances;
    const SpanningTree tree = random_tree(rng, g);
    const Chain canonical = canonical_element(g, tree);
    for (int trial = 0; trial < 4; ++trial) {
      const Chain gamma = random_chain(rng, 2, static_cast<std::size_t>(g.edge_count()));
      const auto a = spectrum(vertex_matrix(g, gamma)).eigenvalues;
      const auto b = spectrum(vertex_matrix(g, gamma + canonical)).eigenvalues;
      double worst = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(b[k] + a[a.size() - 1 - k]));
      r.expect(worst < 1e-8, [&] { return "spectral antisymmetry on " + describe_graph(g); });
    }
  }
  return r;
}

// (f) Eulerian / even degrees / 1 is a cycle / rho^-1(1_T) = 1 for all T /
// bridgeless with a tree-independent rho^-1(1_T), all equivalent.
inline PropertyResult check_eulerian_equivalence(int count) {
  PropertyResult r;
  std::mt19937 rng(kPropertySeed + 6);
  for (int k = 0; k < count; ++k) {
    const MultiGraph g = k % 2 ? random_eulerian(rng, 7, 9) : random_multigraph(rng, 7, 9);
    ++r.instances;
    const auto m = static_cast<std::size_t>(g.edge_count());
    const bool a = oracle::count_eulerian_oracle(g) > 0;
    bool b = true;
    for (int v = 0; v < g.vertex_count(); ++v) b = b && g.degree(v) % 2 == 0;
    const bool c = is_circulation(g, Chain::ones(2, m));
    bool d = true;
    bool identical = true;
    std::optional<Chain> first;
    for (const SpanningTree& tree : all_spanning_trees(g)) {
      const Chain pre = rho_inverse(g, tree, Chain::indicator(2, m, tree.cotree_edges));
      d = d && pre == Chain::ones(2, m);
      if (!first) first = pre;
      identical = identical && pre == *first;
    }
    const bool e = is_bridgeless(g) && identical;
    r.expect(a == b && b == c && c == d && d == e && is_eulerian(g) == a, [&] {
      std::ostringstream s;
      s << "conditions " << a << b << c << d << e << " on " << describe_graph(g);
      return s.str();
    });
  }
  return r;
}

// (g) |supp(gamma_T)| has the parity of m on Eulerian graphs, every tree.
inline PropertyResult check_parity(const std::vector<MultiGraph>& graphs) {
  PropertyResult r;
  for (const MultiGraph& g : graphs) {
    ++r.instances;
    for (const SpanningTree& tree : all_spanning_trees(g)) {
      const auto support = canonical_element(g, tree).support().size();
      r.expect(support % 2 == static_cast<std::size_t>(g.edge_count()) % 2,
               [&] { return "parity on " + describe_graph(g); });
    }
  }
  return r;
}

// (h) trace formula = BEST sum = oracle on Eulerian graphs, independent of
// the tree, and the directed count independent of t.
inline PropertyResult check_eulerian_counts(const std::vector<MultiGraph>& graphs) {
  PropertyResult r;
  std::mt19937 rng(kPropertySeed + 7);
  for (const MultiGraph& g : graphs) {
    ++r.instances;
    const auto expected = static_cast<std::int64_t>(oracle::count_eulerian_oracle(g, {16, 1'000'000'000}));
    r.expect(count_via_best(g).count == expected, [&] { return "BEST sum on " + describe_graph(g); });
    const auto trees = all_spanning_trees(g);
    for (int k = 0; k < 3; ++k) {
      const SpanningTree& tree = trees[rng() % trees.size()];
      for (Method method : {Method::kVertex, Method::kEdge}) {
        r.expect(count_eulerian_cycles(g, tree, method, serial_options()).count == expected,
                 [&] { return "trace formula on " + describe_graph(g); });
      }
    }
    const auto orientations = enumerate_eulerian_orientations(g);
    const Orientation& o = orientations[rng() % orientations.size()];
    const std::int64_t best = best_count(g, o).eulerian_cycles;
    for (int t : {3, 4, 5}) {
      // t^g traces of a 2m x 2m complex matrix; keep each sum small.
      if (checked_power(static_cast<std::uint64_t>(t), static_cast<std::size_t>(g.genus())).value_or(UINT64_MAX) >
          kDirectedTermCap) {
        continue;
      }
      const SpanningTree& tree = trees[rng() % trees.size()];
      r.expect(count_eulerian_cycles_directed(g, o, tree, t, Method::kEdge, serial_options()).count == best,
               [&] { return "directed t=" + std::to_string(t) + " on " + describe_graph(g); });
    }
  }
  return r;
}

}  // namespace ectrace::testing

#endif  // ECTRACE_TESTS_PROPERTIES_HPP
