#ifndef ECTRACE_EULERIAN_HPP
#define ECTRACE_EULERIAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ectrace/graph.hpp"
#include "ectrace/trace_sum.hpp"

namespace ectrace {

// flips[i] reverses the reference direction of edge i.
struct Orientation {
  std::vector<bool> flips;

  static Orientation reference(int edge_count) {
    return {std::vector<bool>(static_cast<std::size_t>(edge_count), false)};
  }
  // One '+' (keep) or '-' (reverse) per edge.
  static Orientation parse(std::string_view text, int edge_count);
  std::string to_string() const;

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

// Out-degree of each vertex; a directed loop counts once.
std::vector<int> out_degrees(const MultiGraph& g, const Orientation& o);
bool is_eulerian_orientation(const MultiGraph& g, const Orientation& o);

// ec(G) = (m 2^g)^-1 sum_{gamma in M_2(cotree)} (-1)^sigma(gamma) trace(M_gamma^m).
// Throws Error(kPrecondition) when g is not Eulerian.
CountReport count_eulerian_cycles(const MultiGraph& g, const SpanningTree& tree, Method method,
                                  const CountOptions& options = {});
CountReport count_eulerian_cycles(const MultiGraph& g, Method method,
                                  const CountOptions& options = {});

// ec(G, o) = (m t^g)^-1 sum_{gamma in M_t(cotree)} eps_t^-sigma(gamma) trace(M_gamma^m),
// with chains taken relative to o. Needs t >= 3.
CountReport count_eulerian_cycles_directed(const MultiGraph& g, const Orientation& o,
                                           const SpanningTree& tree, int modulus, Method method,
                                           const CountOptions& options = {});

struct LaplacianReport {
  std::vector<std::vector<std::int64_t>> laplacian;
  int root = 0;
  std::int64_t determinant = 0;
  std::int64_t arborescences = 0;
  std::int64_t eulerian_cycles = 0;
};

// BEST theorem: ec(G, o) = det(L_o with root row/column removed) * prod_v (outdeg(v) - 1)!.
// The root defaults to the last vertex.
LaplacianReport best_count(const MultiGraph& g, const Orientation& o,
                           std::optional<int> root = std::nullopt);

// Fraction-free (Bareiss) determinant. Throws Error(kNumerical) on overflow.
std::int64_t integer_determinant(std::vector<std::vector<std::int64_t>> matrix);

// All Eulerian orientations in lexicographic order ('+' before '-', edge 0
// most significant).
std::vector<Orientation> enumerate_eulerian_orientations(const MultiGraph& g, int max_edges = 24);

// Sum of best_count over every Eulerian orientation.
CountReport count_via_best(const MultiGraph& g, int max_edges = 24);

}  // namespace ectrace

#endif  // ECTRACE_EULERIAN_HPP
