#ifndef ECTRACE_REDUCTIONS_HPP
#define ECTRACE_REDUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ectrace/eulerian.hpp"
#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"
#include "ectrace/trace_sum.hpp"

namespace ectrace {

// Vertex and edge permutations preserving incidence. flip[i] is set when
// the image of e_i is the inverse of the positive edge e_{edge_perm[i]}.
struct GraphAutomorphism {
  std::vector<int> vertex_perm;
  std::vector<int> edge_perm;
  std::vector<bool> flip;

  OrientedEdge apply(OrientedEdge e) const {
    const auto i = static_cast<std::size_t>(e.edge);
    return {edge_perm[i], e.positive != flip[i]};
  }
  // tau(gamma): the coefficient of e_i moves to e_{edge_perm[i]}, negated
  // when flipped.
  Chain apply(const Chain& gamma) const;

  bool is_identity() const;
};

// Validates incidence and derives flips. Loops may be flipped explicitly.
// Throws Error(kPrecondition) for an invalid generator.
GraphAutomorphism make_automorphism(const MultiGraph& g, std::vector<int> vertex_perm,
                                    std::vector<int> edge_perm,
                                    const std::vector<bool>& loop_flips = {});

// The same automorphism with flips taken relative to orientation o.
GraphAutomorphism reoriented(const GraphAutomorphism& tau, const Orientation& o);

bool stabilizes_subset(const GraphAutomorphism& tau, std::span<const int> edges);

struct AutomorphismBudget {
  int max_vertices = 8;
  std::uint64_t max_group_order = 1'000'000;
};

// Brute force: every degree- and multiplicity-preserving vertex bijection
// combined with every bijection of the parallel-edge classes. Returns the
// full group, identity first.
std::vector<GraphAutomorphism> find_automorphisms(const MultiGraph& g,
                                                  const AutomorphismBudget& budget = {});

// Which part of M_t(edges) a twist set covers. kFirst keeps the twists
// with coefficient 0 at `pinned_edge`; kSecond keeps the rest.
enum class Half { kAll, kFirst, kSecond };

struct TwistSet {
  std::vector<int> edges;
  std::size_t edge_count = 0;  // length of member chains
  int modulus = 2;
  Half half = Half::kAll;
  int pinned_edge = -1;

  bool contains(const Chain& c) const;
  std::uint64_t size() const;
  // Members in mixed-radix order over `edges`.
  std::vector<Chain> members() const;
};

struct AntisymPartition {
  Chain canonical;  // gamma_T
  int pinned_edge;
  TwistSet first;   // S_1
  TwistSet second;  // S_2 = S_1 + gamma_T
};

// S_1 = twists on the cotree vanishing at `pinned_edge` (default: lowest
// index in supp(gamma_T)). Throws when g is bipartite.
AntisymPartition antisym_partition(const MultiGraph& g, const SpanningTree& tree,
                                   std::optional<int> pinned_edge = std::nullopt);

struct Orbit {
  Chain representative;  // smallest member in enumeration order
  std::vector<Chain> members;

  std::size_t size() const { return members.size(); }
};

struct OrbitPartition {
  std::vector<Orbit> orbits;
  std::uint64_t total = 0;
};

// Orbits of S under the group generated by `generators` (and translation
// by `translation`, when given), each orbit intersected with S. The group
// acts on all of C_1; it need not map S to itself.
OrbitPartition orbit_partition(const TwistSet& set, std::span<const GraphAutomorphism> generators,
                               const std::optional<Chain>& translation = std::nullopt,
                               std::uint64_t max_orbit_size = 10'000'000);

enum class ReductionMode { kAut, kAntisym, kCombined };

const char* to_string(ReductionMode mode);

struct ReductionPlan {
  ReductionMode mode = ReductionMode::kAut;
  // kAll is only valid for kAut and kCombined; kAntisym defaults to kFirst.
  std::optional<Half> half;
  std::optional<int> pinned_edge;
};

struct ReducedCount {
  CountReport report;
  OrbitPartition orbits;
  std::vector<WeightedTwist> terms;  // one per orbit
};

// ec(G) = (m |S|)^-1 sum_{[gamma] in S/<H(, gamma_T)>} |[gamma]| (-1)^sigma(gamma) trace(M_gamma^m)
// with S = M_2(cotree) or one half of it.
ReducedCount count_eulerian_reduced(const MultiGraph& g, const SpanningTree& tree,
                                    std::span<const GraphAutomorphism> generators,
                                    const ReductionPlan& plan, Method method,
                                    const CountOptions& options = {});

// Directed analog over M_t(cotree) relative to o, weights eps_t^-sigma.
// Every generator must keep sigma constant on its orbits.
ReducedCount count_eulerian_reduced_directed(const MultiGraph& g, const Orientation& o,
                                             const SpanningTree& tree, int modulus,
                                             std::span<const GraphAutomorphism> generators,
                                             Method method, const CountOptions& options = {});

// N_{t,F}(alpha, l) with one trace per orbit of M_t(F); each orbit weight is
// the character sum over its members.
ReducedCount count_class_reduced(const MultiGraph& g, const std::vector<int>& subset,
                                 const Chain& alpha, int length,
                                 std::span<const GraphAutomorphism> generators, Method method,
                                 const CountOptions& options = {});

}  // namespace ectrace

#endif  // ECTRACE_REDUCTIONS_HPP
