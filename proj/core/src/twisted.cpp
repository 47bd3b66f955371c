#include "ectrace/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ectrace/error.hpp"

namespace ectrace {

const char* to_string(MatrixKind kind) {
  return kind == MatrixKind::kVertex ? "vertex" : "edge";
}

std::complex<double> root_of_unity(int modulus, long long k) {
  long long r = k % modulus;
  if (r < 0) r += modulus;
  if ((4 * r) % modulus == 0) {
    switch ((4 * r) / modulus) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  // Conjugate pairs come out exactly conjugate.
  if (2 * r > modulus) return std::conj(root_of_unity(modulus, modulus - r));
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / modulus);
}

namespace {

void check_twist(const MultiGraph& g, const Chain& twist) {
  require(twist.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "twist length must equal the edge count");
}

// Exponent of the character on one traversal of `e`.
long long phase(const Chain& twist, OrientedEdge e) {
  const long long c = twist[static_cast<std::size_t>(e.edge)];
  return e.positive ? c : -c;
}

// Visits every nonzero (row, col, exponent) contribution of the twisted
// matrix of the given kind.
template <typename Fn>
void for_each_entry(const MultiGraph& g, const Chain& twist, MatrixKind kind, Fn&& fn) {
  const int m = g.edge_count();
  if (kind == MatrixKind::kVertex) {
    for (int k = 0; k < 2 * m; ++k) {
      const OrientedEdge e = OrientedEdge::from_index(k, m);
      fn(g.initial(e), g.terminal(e), phase(twist, e));
    }
    return;
  }
  for (int i = 0; i < 2 * m; ++i) {
    const OrientedEdge e = OrientedEdge::from_index(i, m);
    const long long p = phase(twist, e);
    for (const OrientedEdge& f : g.outgoing(g.terminal(e))) {
      if (f == e.inverse()) continue;
      fn(i, f.index(m), p);
    }
  }
}

Eigen::Index dimension(const MultiGraph& g, MatrixKind kind) {
  return kind == MatrixKind::kVertex ? g.vertex_count() : 2 * g.edge_count();
}

}  // namespace

TwistedMatrix twisted_matrix(const MultiGraph& g, const Chain& twist, MatrixKind kind) {
  check_twist(g, twist);
  const Eigen::Index dim = dimension(g, kind);
  TwistedMatrix out{kind, twist, ComplexMatrix::Zero(dim, dim)};
  const int t = twist.modulus();
  for_each_entry(g, twist, kind, [&](Eigen::Index r, Eigen::Index c, long long p) {
    out.entries(r, c) += root_of_unity(t, p);
  });
  if (kind == MatrixKind::kVertex) {
    // Contributions arrive in conjugate pairs but are summed in different
    // orders; mirror the upper triangle so A_gamma is exactly Hermitian.
    for (Eigen::Index i = 0; i < dim; ++i) {
      out.entries(i, i).imag(0.0);
      for (Eigen::Index k = i + 1; k < dim; ++k) out.entries(k, i) = std::conj(out.entries(i, k));
    }
  }
  return out;
}

TwistedMatrix vertex_matrix(const MultiGraph& g, const Chain& twist) {
  return twisted_matrix(g, twist, MatrixKind::kVertex);
}

TwistedMatrix edge_matrix(const MultiGraph& g, const Chain& twist) {
  return twisted_matrix(g, twist, MatrixKind::kEdge);
}

SignedMatrix signed_matrix(const MultiGraph& g, const Chain& twist, MatrixKind kind) {
  check_twist(g, twist);
  require(twist.modulus() == 2, ErrorKind::kPrecondition,
          "integer twisted matrices need t = 2");
  SignedMatrix out;
  out.dim = dimension(g, kind);
  out.entries.assign(static_cast<std::size_t>(out.dim * out.dim), 0);
  for_each_entry(g, twist, kind, [&](Eigen::Index r, Eigen::Index c, long long p) {
    out.entries[static_cast<std::size_t>(r * out.dim + c)] += (p % 2 == 0) ? 1 : -1;
  });
  return out;
}

namespace {

std::optional<SignedMatrix> multiply(const SignedMatrix& a, const SignedMatrix& b) {
  const Eigen::Index n = a.dim;
  SignedMatrix c{n, std::vector<std::int64_t>(static_cast<std::size_t>(n * n), 0)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        std::int64_t prod = 0;
        auto& slot = c.entries[static_cast<std::size_t>(i * n + j)];
        if (__builtin_mul_overflow(aik, b(k, j), &prod) ||
            __builtin_add_overflow(slot, prod, &slot)) {
          return std::nullopt;
        }
      }
    }
  }
  return c;
}

ComplexMatrix matrix_power(const ComplexMatrix& base, int length) {
  ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
  ComplexMatrix square = base;
  for (int e = length; e > 0; e >>= 1) {
    if (e & 1) result = result * square;
    if (e > 1) square = square * square;
  }
  return result;
}

void check_length(int length) {
  require(length >= 1, ErrorKind::kPrecondition, "length must be at least 1");
}

TraceValue floating_trace(const ComplexMatrix& m, int length, double imag_tolerance) {
  const std::complex<double> tr = matrix_power(m, length).trace();
  if (std::abs(tr.imag()) > imag_tolerance * (1.0 + std::abs(tr.real()))) {
    // A trace that cancels to near zero carries rounding error on the scale
    // of the untwisted walk count tr(|M|^l), not of |Re|.
    const double scale = matrix_power(m.cwiseAbs().cast<std::complex<double>>(), length).trace().real();
    if (std::abs(tr.imag()) > imag_tolerance * (1.0 + scale)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "non-real trace: imaginary part %.3e (real %.6e)", tr.imag(),
                    tr.real());
      fail(ErrorKind::kNumerical, buf);
    }
  }
  return {tr.real(), tr.imag(), std::nullopt};
}

bool wants_exact(const Arithmetic a, int modulus) {
  if (a == Arithmetic::kFloating) return false;
  if (modulus != 2) {
    require(a != Arithmetic::kExact, ErrorKind::kPrecondition,
            "exact arithmetic is only available for t = 2");
    return false;
  }
  return true;
}

TraceValue from_exact(std::int64_t value) {
  return {static_cast<double>(value), 0.0, value};
}

SignedMatrix to_signed(const ComplexMatrix& m) {
  SignedMatrix out;
  out.dim = m.rows();
  out.entries.resize(static_cast<std::size_t>(out.dim * out.dim));
  for (Eigen::Index i = 0; i < out.dim; ++i) {
    for (Eigen::Index j = 0; j < out.dim; ++j) {
      out.entries[static_cast<std::size_t>(i * out.dim + j)] =
          std::llround(m(i, j).real());
    }
  }
  return out;
}

}  // namespace

std::optional<std::int64_t> exact_trace_power(const SignedMatrix& m, int length) {
  check_length(length);
  std::optional<SignedMatrix> result;
  SignedMatrix square = m;
  for (int e = length; e > 0; e >>= 1) {
    if (e & 1) {
      if (result) {
        result = multiply(*result, square);
        if (!result) return std::nullopt;
      } else {
        result = square;
      }
    }
    if (e > 1) {
      auto next = multiply(square, square);
      if (!next) return std::nullopt;
      square = std::move(*next);
    }
  }
  std::int64_t tr = 0;
  for (Eigen::Index i = 0; i < result->dim; ++i) {
    if (__builtin_add_overflow(tr, (*result)(i, i), &tr)) return std::nullopt;
  }
  return tr;
}

TraceValue trace_power(const TwistedMatrix& m, int length, const TraceOptions& options) {
  check_length(length);
  if (wants_exact(options.arithmetic, m.modulus())) {
    if (auto exact = exact_trace_power(to_signed(m.entries), length)) return from_exact(*exact);
    require(options.arithmetic != Arithmetic::kExact, ErrorKind::kNumerical,
            "64-bit overflow on the exact trace path");
  }
  return floating_trace(m.entries, length, options.imag_tolerance);
}

TraceValue twisted_trace(const MultiGraph& g, const Chain& twist, MatrixKind kind, int length,
                         const TraceOptions& options) {
  check_length(length);
  if (wants_exact(options.arithmetic, twist.modulus())) {
    if (auto exact = exact_trace_power(signed_matrix(g, twist, kind), length)) {
      return from_exact(*exact);
    }
    require(options.arithmetic != Arithmetic::kExact, ErrorKind::kNumerical,
            "64-bit overflow on the exact trace path");
  }
  return floating_trace(twisted_matrix(g, twist, kind).entries, length,
                        options.imag_tolerance);
}

std::complex<double> SpectrumSummary::power_sum(int length) const {
  std::complex<double> s = 0.0;
  for (const auto& lambda : eigenvalues) s += std::pow(lambda, length);
  return s;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

SpectrumSummary spectrum(const TwistedMatrix& m) {
  SpectrumSummary out;
  if (m.kind == MatrixKind::kVertex && is_hermitian(m.entries, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.entries, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, ErrorKind::kNumerical, "eigensolver failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      out.eigenvalues.emplace_back(solver.eigenvalues()(i), 0.0);
    }
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m.entries, false);
    require(solver.info() == Eigen::Success, ErrorKind::kNumerical, "eigensolver failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      out.eigenvalues.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const auto& a, const auto& b) {
              return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            });
  return out;
}

}  // namespace ectrace
