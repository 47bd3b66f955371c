#ifndef ECTRACE_CENSUS_HPP
#define ECTRACE_CENSUS_HPP

#include <vector>

#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"
#include "ectrace/trace_sum.hpp"

namespace ectrace {

// Number of circuits (edge method) or closed walks (vertex method) C of
// length `length` with C^ab mod t restricted to `subset` equal to `alpha`:
//
//   t^-|F| * sum_{gamma in M_t(F)} eps_t^-<gamma, alpha> trace(M_gamma^length)
//
// `alpha` is a full-length chain supported on `subset`; t is its modulus.
CountReport count_circuits_in_class(const MultiGraph& g, const std::vector<int>& subset,
                                    const Chain& alpha, int length, Method method,
                                    const CountOptions& options = {});

// Same count for a circulation `alpha`, summing over twists on the cotree
// of `tree` (t^g terms).
CountReport count_circuits_in_homology(const MultiGraph& g, const SpanningTree& tree,
                                       const Chain& alpha, int length, Method method,
                                       const CountOptions& options = {});

// Term k of the class sum: the k-th twist in mixed-radix order over
// `subset`, weighted by eps_t^-<gamma, alpha>.
WeightedTwist class_term(const TwistEnumerator& twists, const Chain& alpha, std::uint64_t index);

}  // namespace ectrace

#endif  // ECTRACE_CENSUS_HPP
