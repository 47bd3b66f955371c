#ifndef ECTRACE_TRACE_SUM_HPP
#define ECTRACE_TRACE_SUM_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"
#include "ectrace/twisted.hpp"

namespace ectrace {

using Method = MatrixKind;

struct CountOptions {
  TraceOptions trace;
  // Absolute bound on |raw_sum / denominator - count|.
  double tolerance = 1e-6;
  // Refuse sums with more terms than this unless `force` is set.
  std::uint64_t max_terms = std::uint64_t{1} << 28;
  bool force = false;
  // 0 = one worker per hardware thread; 1 = serial, deterministic order.
  unsigned threads = 0;
};

struct CountReport {
  std::int64_t count = 0;
  double raw_sum = 0.0;
  double raw_imag = 0.0;
  std::uint64_t denominator = 1;
  double residual = 0.0;
  std::uint64_t terms = 0;  // trace evaluations
  Method method = Method::kVertex;
  std::string formula;
  int modulus = 2;
  int length = 0;
  std::vector<int> subset;
  bool exact = false;  // raw_sum accumulated on the integer path
  std::vector<std::string> warnings;
};

// One summand: weight * trace(M_twist^length).
struct WeightedTwist {
  Chain twist;
  std::complex<double> weight;
  std::optional<std::int64_t> exact_weight;  // integer weight, when known
};

struct TraceSum {
  std::complex<double> value = 0.0;
  std::optional<__int128> exact;  // set iff every term was exact
  std::uint64_t terms = 0;
};

using TermSource = std::function<WeightedTwist(std::uint64_t)>;

// Guards `term_count` against the budget in `options`.
void check_term_budget(std::uint64_t term_count, const CountOptions& options);

// sum_{k < term_count} weight_k * trace(M_{twist_k}^length), split over
// contiguous index ranges when options.threads != 1.
TraceSum sum_weighted_traces(const MultiGraph& g, std::uint64_t term_count,
                             const TermSource& term_at, Method method, int length,
                             const CountOptions& options);

// Rounds sum / denominator to a nonnegative integer and checks the residual.
// Throws Error(kNumerical) when the residual exceeds options.tolerance.
CountReport finalize_count(const TraceSum& sum, std::uint64_t denominator, Method method,
                           const CountOptions& options);

// base^exponent, nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent);

}  // namespace ectrace

#endif  // ECTRACE_TRACE_SUM_HPP
