#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "ectrace/census.hpp"
#include "ectrace/error.hpp"
#include "ectrace/json_io.hpp"
#include "ectrace/reductions.hpp"
#include "ectrace/twisted.hpp"
#include "test_support.hpp"

namespace ectrace {
namespace {

using testing::fixture;

std::vector<GraphAutomorphism> example_generators(const MultiGraph& g) {
  return load_generators(g, testing::fixture_path("g2_generators.json"));
}

std::multiset<std::size_t> orbit_sizes(const OrbitPartition& p) {
  std::multiset<std::size_t> out;
  for (const Orbit& o : p.orbits) out.insert(o.size());
  return out;
}

TEST(Automorphism, ApplyToChains) {
  const MultiGraph g = fixture("g2.graph");
  const auto gens = example_generators(g);
  ASSERT_EQ(gens.size(), 5u);
  Chain c(2, 8);
  c.set(1, 1);
  EXPECT_EQ(gens[0].apply(c).support(), (std::vector<int>{2}));
  // tau3 swaps v1 and v3; e0 = (1,0) maps onto e3 = (0,3) reversed.
  EXPECT_TRUE(gens[2].flip[0]);
  EXPECT_EQ(gens[2].apply(OrientedEdge{0, true}), (OrientedEdge{3, false}));
  for (const auto& tau : gens) EXPECT_FALSE(tau.is_identity());
}

TEST(Automorphism, RejectsNonAutomorphisms) {
  const MultiGraph g = fixture("g2.graph");
  EXPECT_THROW(make_automorphism(g, {1, 0, 2, 3}, {0, 1, 2, 3, 4, 5, 6, 7}), Error);
  EXPECT_THROW(make_automorphism(g, {0, 1, 2, 3}, {0, 0, 2, 3, 4, 5, 6, 7}), Error);
  EXPECT_THROW(make_automorphism(g, {0, 1, 2}, {0, 1, 2, 3, 4, 5, 6, 7}), Error);
}

TEST(Automorphism, FindsExampleGenerators) {
  const MultiGraph g = fixture("g2.graph");
  const auto group = find_automorphisms(g);
  ASSERT_FALSE(group.empty());
  EXPECT_TRUE(group.front().is_identity());
  for (const auto& tau : example_generators(g)) {
    const bool found = std::any_of(group.begin(), group.end(), [&](const GraphAutomorphism& x) {
      return x.vertex_perm == tau.vertex_perm && x.edge_perm == tau.edge_perm;
    });
    EXPECT_TRUE(found);
  }
}

TEST(Automorphism, GroupOrdersOfSmallGraphs) {
  EXPECT_EQ(find_automorphisms(testing::cycle_graph(4)).size(), 8u);
  EXPECT_EQ(find_automorphisms(testing::cycle_graph(3)).size(), 6u);
  // Two loops: swap them, flip each.
  EXPECT_GE(find_automorphisms(testing::loops_graph(2)).size(), 2u);
  EXPECT_EQ(find_automorphisms(fixture("k5.graph")).size(), 120u);
}

TEST(Automorphism, TracesAreInvariant) {
  const MultiGraph g = fixture("g2.graph");
  const auto group = find_automorphisms(g);
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Chain gamma(4, 8);
    for (std::size_t i = 0; i < 8; ++i) gamma.set(i, static_cast<int>(rng() % 4));
    const auto& tau = group[rng() % group.size()];
    for (int l = 1; l <= 8; ++l) {
      EXPECT_NEAR(twisted_trace(g, gamma, MatrixKind::kEdge, l).real,
                  twisted_trace(g, tau.apply(gamma), MatrixKind::kEdge, l).real, 1e-8);
      EXPECT_NEAR(twisted_trace(g, gamma, MatrixKind::kVertex, l).real,
                  twisted_trace(g, tau.apply(gamma), MatrixKind::kVertex, l).real, 1e-8);
    }
  }
}

TEST(Antisym, PartitionOfExample) {
  const MultiGraph g = fixture("g2.graph");
  const SpanningTree tree = default_spanning_tree(g);
  const AntisymPartition p = antisym_partition(g, tree);
  EXPECT_EQ(p.pinned_edge, 4);
  EXPECT_EQ(p.first.size(), 16u);
  EXPECT_EQ(p.second.size(), 16u);
  for (const Chain& c : p.first.members()) {
    EXPECT_EQ(c[4], 0);
    EXPECT_TRUE(p.second.contains(c + p.canonical));
  }
  EXPECT_THROW(antisym_partition(g, tree, 2), Error);
  EXPECT_EQ(antisym_partition(g, tree, 7).first.members().size(), 16u);

  const MultiGraph c4 = testing::cycle_graph(4);
  EXPECT_THROW(antisym_partition(c4, default_spanning_tree(c4)), Error);
}

// (-1)^sigma(gamma + gamma_T) tr(M^m_{gamma+gamma_T}) = (-1)^sigma(gamma) tr(M^m_gamma).
TEST(Antisym, SignedTracesAgreeAcrossHalves) {
  std::mt19937 rng(12);
  int checked = 0;
  while (checked < 15) {
    const MultiGraph g = testing::random_eulerian(rng, 5, 8);
    if (is_bipartite(g)) continue;
    ++checked;
    const SpanningTree tree = testing::random_tree(rng, g);
    const AntisymPartition p = antisym_partition(g, tree);
    for (const Chain& c : p.first.members()) {
      const Chain d = c + p.canonical;
      for (MatrixKind kind : {MatrixKind::kVertex, MatrixKind::kEdge}) {
        const double a = (sigma(c) ? -1 : 1) * twisted_trace(g, c, kind, g.edge_count()).real;
        const double b = (sigma(d) ? -1 : 1) * twisted_trace(g, d, kind, g.edge_count()).real;
        EXPECT_NEAR(a, b, 1e-6 * (1 + std::abs(a)));
      }
    }
  }
}

// Independent orbit oracle for t = 2: close the edge permutations under
// composition, then apply every group element to every chain.
std::vector<std::vector<int>> permutation_closure(const std::vector<GraphAutomorphism>& gens) {
  std::set<std::vector<int>> group;
  std::vector<std::vector<int>> frontier;
  std::vector<int> identity(gens.front().edge_perm.size());
  std::iota(identity.begin(), identity.end(), 0);
  group.insert(identity);
  frontier.push_back(identity);
  while (!frontier.empty()) {
    const std::vector<int> p = frontier.back();
    frontier.pop_back();
    for (const auto& tau : gens) {
      std::vector<int> q(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) q[i] = tau.edge_perm[p[i]];
      if (group.insert(q).second) frontier.push_back(q);
    }
  }
  return {group.begin(), group.end()};
}

Chain permuted(const std::vector<int>& p, const Chain& c) {
  Chain out = Chain::zero(2, c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out.set(static_cast<std::size_t>(p[i]), c[i]);
  return out;
}

// With a translation, the group also contains translation by every image of
// it, so orbits are p(c) + span{q(translation)}.
std::multiset<std::size_t> oracle_orbit_sizes(const TwistSet& set,
                                              const std::vector<std::vector<int>>& group,
                                              const std::optional<Chain>& translation) {
  std::vector<Chain> span{Chain::zero(2, set.edge_count)};
  if (translation) {
    std::set<std::vector<int>> seen{span.front().coeffs()};
    for (const auto& q : group) {
      const Chain b = permuted(q, *translation);
      const std::size_t n = span.size();
      for (std::size_t k = 0; k < n; ++k) {
        const Chain sum = span[k] + b;
        if (seen.insert(sum.coeffs()).second) span.push_back(sum);
      }
    }
  }
  std::set<std::set<std::vector<int>>> orbits;
  for (const Chain& c : set.members()) {
    std::set<std::vector<int>> orbit;
    for (const auto& p : group) {
      for (const Chain& s : span) {
        const Chain moved = permuted(p, c) + s;
        if (set.contains(moved)) orbit.insert(moved.coeffs());
      }
    }
    orbits.insert(orbit);
  }
  std::multiset<std::size_t> sizes;
  for (const auto& o : orbits) sizes.insert(o.size());
  return sizes;
}

TEST(Orbits, ExamplePartitionMatchesOracle) {
  const MultiGraph g = fixture("g2.graph");
  const SpanningTree tree = default_spanning_tree(g);
  const auto gens = example_generators(g);
  const auto group = permutation_closure(gens);
  const AntisymPartition p = antisym_partition(g, tree, 7);
  const TwistSet all{tree.cotree_edges, 8, 2, Half::kAll, -1};

  for (const TwistSet* set : {&all, &p.first, &p.second}) {
    EXPECT_EQ(orbit_sizes(orbit_partition(*set, gens)), oracle_orbit_sizes(*set, group, std::nullopt));
    EXPECT_EQ(orbit_sizes(orbit_partition(*set, gens, p.canonical)),
              oracle_orbit_sizes(*set, group, p.canonical));
  }
  EXPECT_EQ(orbit_partition(all, gens).total, 32u);
  EXPECT_EQ(orbit_partition(p.first, gens).orbits.size(), 10u);
}

// e2+e4+e7 is the star at v2 minus e1; e4+e5+e7 and e4+e6+e7 are triangles
// on v1, v2, v3. No automorphism maps a star onto a triangle.
TEST(Orbits, StarAndTriangleStaySeparate) {
  const MultiGraph g = fixture("g2.graph");
  const SpanningTree tree = default_spanning_tree(g);
  const TwistSet all{tree.cotree_edges, 8, 2, Half::kAll, -1};
  const OrbitPartition p = orbit_partition(all, find_automorphisms(g));
  const auto orbit_of = [&](std::vector<int> edges) {
    const Chain c = Chain::indicator(2, 8, edges);
    for (std::size_t k = 0; k < p.orbits.size(); ++k) {
      for (const Chain& x : p.orbits[k].members) {
        if (x == c) return k;
      }
    }
    return p.orbits.size();
  };
  EXPECT_EQ(orbit_of({4, 5, 7}), orbit_of({4, 6, 7}));
  EXPECT_NE(orbit_of({2, 4, 7}), orbit_of({4, 5, 7}));
}

TEST(Orbits, PartitionCoversSetOnce) {
  const MultiGraph g = fixture("g2.graph");
  const SpanningTree tree = default_spanning_tree(g);
  const auto group = find_automorphisms(g);
  const TwistSet set{tree.cotree_edges, 8, 3, Half::kAll, -1};
  const OrbitPartition p = orbit_partition(set, group);
  std::set<std::vector<int>> seen;
  for (const Orbit& o : p.orbits) {
    EXPECT_EQ(o.members.front(), o.representative);
    for (const Chain& c : o.members) {
      EXPECT_TRUE(set.contains(c));
      EXPECT_TRUE(seen.insert(c.coeffs()).second);
    }
  }
  EXPECT_EQ(seen.size(), 243u);
  EXPECT_EQ(p.total, 243u);
}

TEST(Reduced, EveryModeGivesExampleCount) {
  const MultiGraph g = fixture("g2.graph");
  const SpanningTree tree = default_spanning_tree(g);
  const auto gens = example_generators(g);
  for (std::optional<int> pin : {std::optional<int>{}, std::optional<int>{7}}) {
    for (Method method : {Method::kVertex, Method::kEdge}) {
      for (Half half : {Half::kFirst, Half::kSecond}) {
        const ReducedCount r = count_eulerian_reduced(g, tree, gens, {ReductionMode::kAntisym, half, pin},
                                                      method);
        EXPECT_EQ(r.report.count, 88);
        EXPECT_EQ(r.report.denominator, 128u);
        EXPECT_EQ(r.terms.size(), 16u);
      }
      for (Half half : {Half::kAll, Half::kFirst, Half::kSecond}) {
        EXPECT_EQ(count_eulerian_reduced(g, tree, gens, {ReductionMode::kAut, half, pin}, method)
                      .report.count,
                  88);
        EXPECT_EQ(count_eulerian_reduced(g, tree, gens, {ReductionMode::kCombined, half, pin}, method)
                      .report.count,
                  88);
      }
    }
  }
  const ReducedCount aut = count_eulerian_reduced(g, tree, gens, {ReductionMode::kAut, {}, {}},
                                                  Method::kEdge);
  EXPECT_EQ(aut.terms.size(), aut.orbits.orbits.size());
  EXPECT_EQ(aut.report.formula, "reduced-aut");
  EXPECT_TRUE(aut.report.exact);
  const ReducedCount combined =
      count_eulerian_reduced(g, tree, gens, {ReductionMode::kCombined, {}, {}}, Method::kEdge);
  EXPECT_LT(combined.terms.size(), aut.terms.size());
}

TEST(Reduced, RandomEulerianGraphsWithFullGroups) {
  std::mt19937 rng(77);
  int checked = 0;
  while (checked < 12) {
    const MultiGraph g = testing::random_eulerian(rng, 5, 8);
    if (is_bipartite(g)) continue;
    ++checked;
    const SpanningTree tree = testing::random_tree(rng, g);
    const auto group = find_automorphisms(g);
    const std::int64_t expected = count_eulerian_cycles(g, tree, Method::kEdge).count;
    for (ReductionMode mode : {ReductionMode::kAut, ReductionMode::kAntisym, ReductionMode::kCombined}) {
      EXPECT_EQ(count_eulerian_reduced(g, tree, group, {mode, {}, {}}, Method::kVertex).report.count,
                expected)
          << to_string(mode) << "\n" << format_graph(g);
    }
  }
}

TEST(Reduced, ClassCountsMatchUnreduced) {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 15; ++trial) {
    const MultiGraph g = testing::random_multigraph(rng, 4, 6);
    const SpanningTree tree = testing::random_tree(rng, g);
    const auto group = find_automorphisms(g);
    for (int t : {2, 3}) {
      const TwistEnumerator classes(t, static_cast<std::size_t>(g.edge_count()), tree.cotree_edges);
      for (std::uint64_t k = 0; k < *classes.size(); ++k) {
        const Chain alpha = classes.at(k);
        EXPECT_EQ(count_class_reduced(g, tree.cotree_edges, alpha, 4, group, Method::kEdge).report.count,
                  count_circuits_in_class(g, tree.cotree_edges, alpha, 4, Method::kEdge).count);
      }
    }
  }
}

TEST(Reduced, DirectedWithOrientationPreservingGenerators) {
  const MultiGraph g = fixture("g2.graph");
  const SpanningTree tree = default_spanning_tree(g);
  const Orientation o = Orientation::reference(8);
  // Keep only automorphisms that map every edge onto a positively oriented edge.
  std::vector<GraphAutomorphism> preserving;
  for (const auto& tau : find_automorphisms(g)) {
    if (std::none_of(tau.flip.begin(), tau.flip.end(), [](bool f) { return f; })) {
      preserving.push_back(tau);
    }
  }
  for (int t : {3, 4}) {
    const ReducedCount r = count_eulerian_reduced_directed(g, o, tree, t, preserving, Method::kEdge);
    EXPECT_EQ(r.report.count, 6);
    EXPECT_LE(r.terms.size(), static_cast<std::size_t>(std::pow(t, 5)));
  }
  // tau3 reverses e0, so sigma changes along its orbits.
  const auto gens = example_generators(g);
  EXPECT_THROW(count_eulerian_reduced_directed(g, o, tree, 3, std::span(gens).subspan(2, 1),
                                               Method::kEdge),
               Error);
}

TEST(Stabilizer, SubsetCheck) {
  const MultiGraph g = fixture("g2.graph");
  const auto gens = example_generators(g);
  const std::vector<int> cotree{2, 4, 5, 6, 7};
  EXPECT_FALSE(stabilizes_subset(gens[0], cotree));
  EXPECT_TRUE(stabilizes_subset(gens[1], cotree));
}

}  // namespace
}  // namespace ectrace
