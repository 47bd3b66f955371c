#include "ectrace/census.hpp"

#include "ectrace/error.hpp"

namespace ectrace {

WeightedTwist class_term(const TwistEnumerator& twists, const Chain& alpha, std::uint64_t index) {
  Chain gamma = twists.at(index);
  const int t = alpha.modulus();
  const int p = pairing(gamma, alpha);
  std::optional<std::int64_t> exact;
  if (t == 2) exact = p == 0 ? 1 : -1;
  return {std::move(gamma), root_of_unity(t, -p), exact};
}

CountReport count_circuits_in_class(const MultiGraph& g, const std::vector<int>& subset,
                                    const Chain& alpha, int length, Method method,
                                    const CountOptions& options) {
  require(length >= 1, ErrorKind::kPrecondition, "length must be at least 1");
  require(alpha.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "alpha length must equal the edge count");
  require(alpha.supported_on(subset), ErrorKind::kPrecondition,
          "alpha must be supported on the edge subset");
  const TwistEnumerator twists(alpha.modulus(), alpha.size(), subset);
  const auto terms = twists.size();
  require(terms.has_value(), ErrorKind::kBudget, "t^|F| does not fit in 64 bits");
  check_term_budget(*terms, options);

  const TraceSum sum = sum_weighted_traces(
      g, *terms, [&](std::uint64_t k) { return class_term(twists, alpha, k); }, method, length,
      options);
  CountReport report = finalize_count(sum, *terms, method, options);
  report.formula = "class";
  report.modulus = alpha.modulus();
  report.length = length;
  report.subset = subset;
  return report;
}

CountReport count_circuits_in_homology(const MultiGraph& g, const SpanningTree& tree,
                                       const Chain& alpha, int length, Method method,
                                       const CountOptions& options) {
  require(alpha.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "alpha length must equal the edge count");
  require(is_circulation(g, alpha), ErrorKind::kPrecondition, "alpha not a circulation");
  CountReport report = count_circuits_in_class(g, tree.cotree_edges,
                                               alpha.restricted(tree.cotree_edges), length,
                                               method, options);
  report.formula = "homology";
  return report;
}

}  // namespace ectrace
