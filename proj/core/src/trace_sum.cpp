#include "ectrace/trace_sum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "ectrace/error.hpp"

namespace ectrace {

std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (__builtin_mul_overflow(out, base, &out)) return std::nullopt;
  }
  return out;
}

void check_term_budget(std::uint64_t term_count, const CountOptions& options) {
  if (term_count > options.max_terms && !options.force) {
    fail(ErrorKind::kBudget, "sum needs " + std::to_string(term_count) +
                                 " trace evaluations, budget is " +
                                 std::to_string(options.max_terms) + " (use --force)");
  }
}

namespace {

TraceSum sum_range(const MultiGraph& g, std::uint64_t begin, std::uint64_t end,
                   const TermSource& term_at, Method method, int length,
                   const TraceOptions& trace_options) {
  TraceSum partial;
  partial.exact = __int128{0};
  for (std::uint64_t k = begin; k < end; ++k) {
    const WeightedTwist term = term_at(k);
    ++partial.terms;
    if (term.weight == 0.0 && term.exact_weight.value_or(0) == 0) continue;
    const TraceValue tr = twisted_trace(g, term.twist, method, length, trace_options);
    partial.value += term.weight * tr.real;
    if (partial.exact && tr.exact && term.exact_weight) {
      __int128 prod = static_cast<__int128>(*tr.exact) * *term.exact_weight;
      if (__builtin_add_overflow(*partial.exact, prod, &*partial.exact)) partial.exact.reset();
    } else {
      partial.exact.reset();
    }
  }
  return partial;
}

void merge(TraceSum& into, const TraceSum& part) {
  into.value += part.value;
  into.terms += part.terms;
  if (into.exact && part.exact) {
    if (__builtin_add_overflow(*into.exact, *part.exact, &*into.exact)) into.exact.reset();
  } else {
    into.exact.reset();
  }
}

}  // namespace

TraceSum sum_weighted_traces(const MultiGraph& g, std::uint64_t term_count,
                             const TermSource& term_at, Method method, int length,
                             const CountOptions& options) {
  check_term_budget(term_count, options);
  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  if (static_cast<std::uint64_t>(workers) > term_count) {
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, term_count));
  }

  TraceSum total;
  total.exact = __int128{0};
  if (workers <= 1) {
    merge(total, sum_range(g, 0, term_count, term_at, method, length, options.trace));
    return total;
  }

  std::vector<TraceSum> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (term_count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(term_count, w * chunk);
    const std::uint64_t end = std::min(term_count, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        parts[w] = sum_range(g, begin, end, term_at, method, length, options.trace);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  // Merge in index order so a fixed worker count gives a fixed result.
  for (const auto& p : parts) merge(total, p);
  return total;
}

CountReport finalize_count(const TraceSum& sum, std::uint64_t denominator, Method method,
                           const CountOptions& options) {
  require(denominator > 0, ErrorKind::kPrecondition, "zero denominator");
  CountReport report;
  report.method = method;
  report.denominator = denominator;
  report.terms = sum.terms;
  report.raw_imag = sum.value.imag();

  double value = 0.0;
  if (sum.exact) {
    report.exact = true;
    report.raw_sum = static_cast<double>(*sum.exact);
    const auto den = static_cast<__int128>(denominator);
    const __int128 quotient = *sum.exact / den;
    const __int128 remainder = *sum.exact % den;
    value = static_cast<double>(quotient) + static_cast<double>(remainder) / static_cast<double>(den);
  } else {
    report.raw_sum = sum.value.real();
    value = report.raw_sum / static_cast<double>(denominator);
  }

  const double imag = std::abs(sum.value.imag()) / static_cast<double>(denominator);
  if (imag > options.tolerance) {
    fail(ErrorKind::kNumerical,
         "weighted trace sum has imaginary part " + std::to_string(imag) + " after division");
  }

  const double rounded = std::nearbyint(value);
  report.residual = std::abs(value - rounded);
  if (report.residual > options.tolerance) {
    fail(ErrorKind::kNumerical, "residual too large: " + std::to_string(value) +
                                    " is not within tolerance of an integer");
  }
  if (rounded < 0.0) {
    fail(ErrorKind::kNumerical, "negative count " + std::to_string(value));
  }
  if (value < 0.0) {
    report.warnings.push_back("clamped slightly negative value " + std::to_string(value) +
                              " to 0");
  }
  report.count = static_cast<std::int64_t>(rounded);
  return report;
}

}  // namespace ectrace
