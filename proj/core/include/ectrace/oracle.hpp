#ifndef ECTRACE_ORACLE_HPP
#define ECTRACE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"

// Brute-force ground truth by backtracking. Nothing here touches matrices.
namespace ectrace::oracle {

struct Budget {
  int max_length = 12;
  std::uint64_t max_nodes = 100'000'000;  // DFS extensions explored
};

enum class WalkKind { kCircuits, kClosedWalks };

using WalkVisitor = std::function<void(const Walk&)>;

// Circuits of length `length`, every rotation counted separately.
std::uint64_t enumerate_circuits(const MultiGraph& g, int length, const Budget& budget = {},
                                 const WalkVisitor& visit = {});

// Closed walks of length `length` (backtracks and tails allowed).
std::uint64_t enumerate_closed_walks(const MultiGraph& g, int length, const Budget& budget = {},
                                     const WalkVisitor& visit = {});

// Circuits or closed walks C of length `length` with C^ab mod t restricted
// to `subset` equal to `alpha` (t = alpha.modulus()).
std::uint64_t census_oracle(const MultiGraph& g, const std::vector<int>& subset,
                            const Chain& alpha, int length, WalkKind kind,
                            const Budget& budget = {});

// All classes at once: entry k counts walks whose restricted class has
// mixed-radix index k over `subset`.
std::vector<std::uint64_t> census_oracle_table(const MultiGraph& g, const std::vector<int>& subset,
                                               int modulus, int length, WalkKind kind,
                                               const Budget& budget = {});

// Eulerian cycles (circuits using every edge once, up to rotation).
std::uint64_t count_eulerian_oracle(const MultiGraph& g, const Budget& budget = {},
                                    const WalkVisitor& visit = {});

}  // namespace ectrace::oracle

#endif  // ECTRACE_ORACLE_HPP
