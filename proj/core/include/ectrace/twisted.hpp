#ifndef ECTRACE_TWISTED_HPP
#define ECTRACE_TWISTED_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"

namespace ectrace {

enum class MatrixKind { kVertex, kEdge };

const char* to_string(MatrixKind kind);

// How traces of matrix powers are evaluated.
//   kAuto     exact integers when t == 2, floating point on overflow or t > 2
//   kFloating always complex double
//   kExact    exact integers; fails on t > 2 or overflow
enum class Arithmetic { kAuto, kFloating, kExact };

using ComplexMatrix = Eigen::MatrixXcd;

// Twisted vertex (n x n) or edge (2m x 2m) adjacency matrix. Edge-kind rows
// and columns are indexed e_0..e_{m-1}, e_0^-1..e_{m-1}^-1.
struct TwistedMatrix {
  MatrixKind kind;
  Chain twist;
  ComplexMatrix entries;

  int modulus() const { return twist.modulus(); }
  Eigen::Index dim() const { return entries.rows(); }
};

// exp(2 pi i k / t). Exact for the quarter turns.
std::complex<double> root_of_unity(int modulus, long long k);

TwistedMatrix vertex_matrix(const MultiGraph& g, const Chain& twist);
TwistedMatrix edge_matrix(const MultiGraph& g, const Chain& twist);
TwistedMatrix twisted_matrix(const MultiGraph& g, const Chain& twist, MatrixKind kind);

// Integer twisted matrix for t == 2: entries are sums of +-1.
struct SignedMatrix {
  Eigen::Index dim = 0;
  std::vector<std::int64_t> entries;  // row-major

  std::int64_t operator()(Eigen::Index i, Eigen::Index j) const {
    return entries[static_cast<std::size_t>(i * dim + j)];
  }
};

SignedMatrix signed_matrix(const MultiGraph& g, const Chain& twist, MatrixKind kind);

struct TraceValue {
  double real = 0.0;
  double imag = 0.0;
  std::optional<std::int64_t> exact;  // set when computed on the integer path
};

struct TraceOptions {
  Arithmetic arithmetic = Arithmetic::kAuto;
  // Relative bound on the imaginary part: |Im| <= tol * (1 + |Re|), or
  // tol * (1 + tr(|M|^l)) when the trace cancels to near zero.
  double imag_tolerance = 1e-9;
};

// trace(M^length) by binary exponentiation.
// Throws Error(kNumerical) on a non-real trace.
TraceValue trace_power(const TwistedMatrix& m, int length, const TraceOptions& options = {});

// Same, building the matrix internally so the t == 2 path never touches
// floating point.
TraceValue twisted_trace(const MultiGraph& g, const Chain& twist, MatrixKind kind, int length,
                         const TraceOptions& options = {});

// Exact trace of the length-th power; nullopt on 64-bit overflow.
std::optional<std::int64_t> exact_trace_power(const SignedMatrix& m, int length);

struct SpectrumSummary {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (real, imag)

  // sum of lambda^length
  std::complex<double> power_sum(int length) const;
};

// Dense eigensolver; Hermitian input goes through the self-adjoint solver.
SpectrumSummary spectrum(const TwistedMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tolerance = 0.0);

}  // namespace ectrace

#endif  // ECTRACE_TWISTED_HPP
