#include "ectrace/reductions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "ectrace/census.hpp"
#include "ectrace/error.hpp"

namespace ectrace {

Chain GraphAutomorphism::apply(const Chain& gamma) const {
  require(gamma.size() == edge_perm.size(), ErrorKind::kPrecondition,
          "chain length does not match the automorphism");
  Chain out(gamma.modulus(), gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    out.set(static_cast<std::size_t>(edge_perm[i]), flip[i] ? -gamma[i] : gamma[i]);
  }
  return out;
}

bool GraphAutomorphism::is_identity() const {
  for (std::size_t v = 0; v < vertex_perm.size(); ++v) {
    if (vertex_perm[v] != static_cast<int>(v)) return false;
  }
  for (std::size_t i = 0; i < edge_perm.size(); ++i) {
    if (edge_perm[i] != static_cast<int>(i) || flip[i]) return false;
  }
  return true;
}

namespace {

bool is_permutation_of_range(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

GraphAutomorphism make_automorphism(const MultiGraph& g, std::vector<int> vertex_perm,
                                    std::vector<int> edge_perm,
                                    const std::vector<bool>& loop_flips) {
  require(static_cast<int>(vertex_perm.size()) == g.vertex_count() &&
              is_permutation_of_range(vertex_perm),
          ErrorKind::kPrecondition, "invalid generator: vertex_perm is not a permutation");
  require(static_cast<int>(edge_perm.size()) == g.edge_count() &&
              is_permutation_of_range(edge_perm),
          ErrorKind::kPrecondition, "invalid generator: edge_perm is not a permutation");
  require(loop_flips.empty() || loop_flips.size() == edge_perm.size(), ErrorKind::kPrecondition,
          "invalid generator: flip list length must equal the edge count");

  GraphAutomorphism tau{std::move(vertex_perm), std::move(edge_perm),
                        std::vector<bool>(static_cast<std::size_t>(g.edge_count()), false)};
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    const Edge& image = g.edge(tau.edge_perm[i]);
    const int pu = tau.vertex_perm[e.u];
    const int pv = tau.vertex_perm[e.v];
    const std::string where = "invalid generator: edge " + std::to_string(i) +
                              " does not map onto edge " + std::to_string(tau.edge_perm[i]);
    if (e.is_loop()) {
      require(image.is_loop() && image.u == pu, ErrorKind::kPrecondition, where);
      if (!loop_flips.empty()) tau.flip[i] = loop_flips[i];
      continue;
    }
    if (image.u == pu && image.v == pv) {
      tau.flip[i] = false;
    } else if (image.u == pv && image.v == pu) {
      tau.flip[i] = true;
    } else {
      fail(ErrorKind::kPrecondition, where);
    }
    if (!loop_flips.empty()) {
      require(loop_flips[i] == tau.flip[i], ErrorKind::kPrecondition,
              "invalid generator: flip of edge " + std::to_string(i) +
                  " contradicts the incidence");
    }
  }
  return tau;
}

GraphAutomorphism reoriented(const GraphAutomorphism& tau, const Orientation& o) {
  require(o.flips.size() == tau.edge_perm.size(), ErrorKind::kPrecondition,
          "orientation length must equal the edge count");
  GraphAutomorphism out = tau;
  for (std::size_t i = 0; i < tau.edge_perm.size(); ++i) {
    out.flip[i] = (tau.flip[i] != o.flips[i]) != o.flips[static_cast<std::size_t>(tau.edge_perm[i])];
  }
  return out;
}

bool stabilizes_subset(const GraphAutomorphism& tau, std::span<const int> edges) {
  std::vector<bool> inside(tau.edge_perm.size(), false);
  for (int i : edges) inside[static_cast<std::size_t>(i)] = true;
  for (int i : edges) {
    if (!inside[static_cast<std::size_t>(tau.edge_perm[static_cast<std::size_t>(i)])]) return false;
  }
  return true;
}

std::vector<GraphAutomorphism> find_automorphisms(const MultiGraph& g,
                                                  const AutomorphismBudget& budget) {
  const int n = g.vertex_count();
  require(n <= budget.max_vertices, ErrorKind::kBudget,
          "automorphism search limited to " + std::to_string(budget.max_vertices) +
              " vertices; supply generators instead");
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(n, 0));
  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    ++mult[e.u][e.v];
    if (!e.is_loop()) ++mult[e.v][e.u];
    classes[std::minmax(e.u, e.v)].push_back(i);
  }

  std::vector<GraphAutomorphism> group;
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);

  const auto emit_edge_maps = [&] {
    // Each parallel class maps onto its image class in every order.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (const auto& [key, members] : classes) {
      const auto image = std::minmax(perm[key.first], perm[key.second]);
      pairs.emplace_back(members, classes.at(image));
    }
    std::vector<int> edge_perm(static_cast<std::size_t>(g.edge_count()), -1);
    const auto assign = [&](const auto& self, std::size_t k) -> void {
      if (k == pairs.size()) {
        require(group.size() < budget.max_group_order, ErrorKind::kBudget,
                "automorphism group exceeds the configured order budget");
        group.push_back(make_automorphism(g, perm, edge_perm));
        return;
      }
      std::vector<int> targets = pairs[k].second;
      do {
        for (std::size_t j = 0; j < targets.size(); ++j) edge_perm[pairs[k].first[j]] = targets[j];
        self(self, k + 1);
      } while (std::next_permutation(targets.begin(), targets.end()));
    };
    assign(assign, 0);
  };

  const auto place = [&](const auto& self, int u) -> void {
    if (u == n) {
      emit_edge_maps();
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (taken[w] || g.degree(w) != g.degree(u) || mult[w][w] != mult[u][u]) continue;
      bool ok = true;
      for (int x = 0; x < u && ok; ++x) ok = mult[u][x] == mult[w][perm[x]];
      if (!ok) continue;
      perm[u] = w;
      taken[w] = true;
      self(self, u + 1);
      taken[w] = false;
      perm[u] = -1;
    }
  };
  place(place, 0);
  return group;
}

// ---------------------------------------------------------------- twist sets

bool TwistSet::contains(const Chain& c) const {
  if (c.modulus() != modulus || !c.supported_on(edges)) return false;
  if (half == Half::kAll) return true;
  const bool zero = c[static_cast<std::size_t>(pinned_edge)] == 0;
  return half == Half::kFirst ? zero : !zero;
}

std::uint64_t TwistSet::size() const {
  const auto total = checked_power(static_cast<std::uint64_t>(modulus), edges.size());
  require(total.has_value(), ErrorKind::kBudget, "twist set does not fit in 64 bits");
  if (half == Half::kAll) return *total;
  const std::uint64_t first = *total / static_cast<std::uint64_t>(modulus);
  return half == Half::kFirst ? first : *total - first;
}

std::vector<Chain> TwistSet::members() const {
  const TwistEnumerator twists(modulus, edge_count, edges);
  const auto total = twists.size();
  require(total.has_value(), ErrorKind::kBudget, "twist set does not fit in 64 bits");
  std::vector<Chain> out;
  for (std::uint64_t k = 0; k < *total; ++k) {
    Chain c = twists.at(k);
    if (contains(c)) out.push_back(std::move(c));
  }
  return out;
}

AntisymPartition antisym_partition(const MultiGraph& g, const SpanningTree& tree,
                                   std::optional<int> pinned_edge) {
  Chain canonical = canonical_element(g, tree);
  const std::vector<int> support = canonical.support();
  require(!support.empty(), ErrorKind::kPrecondition,
          "graph bipartite: antisymmetry reduction inapplicable");
  const int pinned = pinned_edge.value_or(support.front());
  require(std::find(support.begin(), support.end(), pinned) != support.end(),
          ErrorKind::kPrecondition,
          "pinned edge " + std::to_string(pinned) + " is not in the support of gamma_T");
  const auto m = static_cast<std::size_t>(g.edge_count());
  TwistSet first{tree.cotree_edges, m, 2, Half::kFirst, pinned};
  TwistSet second{tree.cotree_edges, m, 2, Half::kSecond, pinned};
  return {std::move(canonical), pinned, std::move(first), std::move(second)};
}

OrbitPartition orbit_partition(const TwistSet& set, std::span<const GraphAutomorphism> generators,
                               const std::optional<Chain>& translation,
                               std::uint64_t max_orbit_size) {
  for (const auto& tau : generators) {
    require(tau.edge_perm.size() == set.edge_count, ErrorKind::kPrecondition,
            "generator edge count does not match the graph");
  }
  require(!translation ||
              (translation->modulus() == set.modulus && translation->size() == set.edge_count),
          ErrorKind::kPrecondition, "translation does not match the twist set");

  const TwistEnumerator order(set.modulus, set.edge_count, set.edges);
  OrbitPartition out;
  std::unordered_set<Chain, ChainHash> assigned;
  for (Chain& start : set.members()) {
    if (assigned.contains(start)) continue;
    Orbit orbit{start, {}};
    std::unordered_set<Chain, ChainHash> seen{start};
    std::deque<Chain> frontier{start};
    while (!frontier.empty()) {
      Chain c = std::move(frontier.front());
      frontier.pop_front();
      if (set.contains(c)) {
        assigned.insert(c);
        orbit.members.push_back(c);
      }
      const auto push = [&](Chain next) {
        if (seen.insert(next).second) {
          require(seen.size() <= max_orbit_size, ErrorKind::kBudget, "orbit too large");
          frontier.push_back(std::move(next));
        }
      };
      for (const auto& tau : generators) push(tau.apply(c));
      if (translation) push(c + *translation);
    }
    std::sort(orbit.members.begin(), orbit.members.end(), [&](const Chain& a, const Chain& b) {
      return order.index_of(a) < order.index_of(b);
    });
    out.total += orbit.members.size();
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

const char* to_string(ReductionMode mode) {
  switch (mode) {
    case ReductionMode::kAut: return "aut";
    case ReductionMode::kAntisym: return "antisym";
    default: return "combined";
  }
}

namespace {

ReducedCount sum_over_orbits(const MultiGraph& g, OrbitPartition orbits,
                             std::vector<WeightedTwist> terms, std::uint64_t denominator,
                             int length, Method method, const CountOptions& options) {
  const TraceSum sum = sum_weighted_traces(
      g, terms.size(), [&](std::uint64_t k) { return terms[k]; }, method, length, options);
  ReducedCount out{finalize_count(sum, denominator, method, options), std::move(orbits),
                   std::move(terms)};
  out.report.length = length;
  return out;
}

// |[gamma]| * eps_t^-sigma(rep); sigma must agree across the orbit.
std::vector<WeightedTwist> sigma_weighted_terms(const OrbitPartition& orbits,
                                                std::span<const int> cotree,
                                                bool allow_translation) {
  std::vector<WeightedTwist> terms;
  for (const Orbit& orbit : orbits.orbits) {
    const int s = sigma(orbit.representative, cotree);
    const int t = orbit.representative.modulus();
    if (!allow_translation) {
      for (const Chain& c : orbit.members) {
        require(sigma(c, cotree) == s, ErrorKind::kPrecondition,
                "sigma not constant on orbit: a generator does not preserve the orientation");
      }
    }
    const auto size = static_cast<std::int64_t>(orbit.size());
    std::optional<std::int64_t> exact;
    if (t == 2) exact = s == 0 ? size : -size;
    terms.push_back({orbit.representative,
                     static_cast<double>(size) * root_of_unity(t, -s), exact});
  }
  return terms;
}

}  // namespace

ReducedCount count_eulerian_reduced(const MultiGraph& g, const SpanningTree& tree,
                                    std::span<const GraphAutomorphism> generators,
                                    const ReductionPlan& plan, Method method,
                                    const CountOptions& options) {
  require(is_eulerian(g), ErrorKind::kPrecondition, "graph not Eulerian");
  TwistSet set{tree.cotree_edges, static_cast<std::size_t>(g.edge_count()), 2, Half::kAll, -1};
  std::optional<Chain> translation;
  std::vector<GraphAutomorphism> active(generators.begin(), generators.end());

  Half half = plan.half.value_or(plan.mode == ReductionMode::kAntisym ? Half::kFirst : Half::kAll);
  if (plan.mode == ReductionMode::kAntisym) {
    require(half != Half::kAll, ErrorKind::kUsage, "antisym mode needs half first or second");
    active.clear();
  }
  if (half != Half::kAll || plan.mode == ReductionMode::kCombined) {
    const AntisymPartition parts = antisym_partition(g, tree, plan.pinned_edge);
    if (half != Half::kAll) set = half == Half::kFirst ? parts.first : parts.second;
    if (plan.mode == ReductionMode::kCombined) translation = parts.canonical;
  }

  OrbitPartition orbits = orbit_partition(set, active, translation);
  auto terms = sigma_weighted_terms(orbits, tree.cotree_edges, translation.has_value());
  std::uint64_t denominator = 0;
  require(!__builtin_mul_overflow(set.size(), static_cast<std::uint64_t>(g.edge_count()),
                                  &denominator),
          ErrorKind::kBudget, "denominator overflows 64 bits");
  ReducedCount out = sum_over_orbits(g, std::move(orbits), std::move(terms), denominator,
                                     g.edge_count(), method, options);
  out.report.formula = std::string("reduced-") + to_string(plan.mode);
  out.report.modulus = 2;
  out.report.subset = set.edges;
  return out;
}

ReducedCount count_eulerian_reduced_directed(const MultiGraph& g, const Orientation& o,
                                             const SpanningTree& tree, int modulus,
                                             std::span<const GraphAutomorphism> generators,
                                             Method method, const CountOptions& options) {
  require(modulus >= 3, ErrorKind::kPrecondition, "t must be >= 3 for directed counts");
  require(is_eulerian_orientation(g, o), ErrorKind::kPrecondition, "orientation not Eulerian");
  const MultiGraph directed = g.reoriented(o.flips);
  std::vector<GraphAutomorphism> active;
  for (const auto& tau : generators) active.push_back(reoriented(tau, o));

  const TwistSet set{tree.cotree_edges, static_cast<std::size_t>(g.edge_count()), modulus,
                     Half::kAll, -1};
  OrbitPartition orbits = orbit_partition(set, active);
  auto terms = sigma_weighted_terms(orbits, tree.cotree_edges, false);
  std::uint64_t denominator = 0;
  require(!__builtin_mul_overflow(set.size(), static_cast<std::uint64_t>(g.edge_count()),
                                  &denominator),
          ErrorKind::kBudget, "denominator overflows 64 bits");
  ReducedCount out = sum_over_orbits(directed, std::move(orbits), std::move(terms), denominator,
                                     g.edge_count(), method, options);
  out.report.formula = "reduced-directed";
  out.report.modulus = modulus;
  out.report.subset = set.edges;
  return out;
}

ReducedCount count_class_reduced(const MultiGraph& g, const std::vector<int>& subset,
                                 const Chain& alpha, int length,
                                 std::span<const GraphAutomorphism> generators, Method method,
                                 const CountOptions& options) {
  require(alpha.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "alpha length must equal the edge count");
  require(alpha.supported_on(subset), ErrorKind::kPrecondition,
          "alpha must be supported on the edge subset");
  const int t = alpha.modulus();
  const TwistSet set{subset, alpha.size(), t, Half::kAll, -1};
  OrbitPartition orbits = orbit_partition(set, generators);

  std::vector<WeightedTwist> terms;
  for (const Orbit& orbit : orbits.orbits) {
    std::complex<double> weight = 0.0;
    std::int64_t exact = 0;
    for (const Chain& c : orbit.members) {
      const int p = pairing(c, alpha);
      weight += root_of_unity(t, -p);
      exact += p == 0 ? 1 : -1;
    }
    terms.push_back({orbit.representative, weight,
                     t == 2 ? std::optional<std::int64_t>(exact) : std::nullopt});
  }
  ReducedCount out = sum_over_orbits(g, std::move(orbits), std::move(terms), set.size(), length,
                                     method, options);
  out.report.formula = "reduced-class";
  out.report.modulus = t;
  out.report.subset = subset;
  return out;
}

}  // namespace ectrace
