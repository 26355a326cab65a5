#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace designforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Error with a stable machine-readable code ("B-RANGE", "S-RANGE",
/// "INFEASIBLE", ...) used by construction and classification routines.
/// Verification routines report violations as data instead of throwing.
class FrameError : public std::runtime_error {
 public:
  FrameError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// A d x d complex Hermitian matrix.
///
/// The constructor rejects inputs whose Hermiticity violation
/// max |A(i,j) - conj(A(j,i))| exceeds `tol`, then stores the exactly
/// Hermitian part (A + A')/2 so downstream eigensolvers stay on the
/// self-adjoint path. The stored trace is exactly real.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m, double tol = 1e-12);

  int dim() const noexcept { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  double trace() const { return mat_.trace().real(); }

 private:
  ComplexMatrix mat_;
};

/// A unit-trace positive semidefinite operator (quantum state).
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op, double trace_tol = 1e-12);

  int dim() const noexcept { return op_.dim(); }
  const HermitianOperator& op() const noexcept { return op_; }

 private:
  HermitianOperator op_;
};

/// Hilbert-Schmidt pairing Tr(a b). Real for Hermitian inputs; the
/// imaginary round-off is checked against 1e-10 and discarded.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

/// Kronecker product, dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The swap on C^d (x) C^d: F (x (x) y) = y (x) x. Tr F = d, F^2 = I.
HermitianOperator flip_operator(int dim);

/// Ascending eigenvalues from a self-adjoint solve. Throws on
/// non-convergence rather than returning garbage.
RealVector eigenvalues(const HermitianOperator& a);

double min_eigenvalue(const HermitianOperator& a);

/// Smallest eigenvalue >= -tol.
bool is_psd(const HermitianOperator& a, double tol);

/// Scale-aware default: smallest eigenvalue >= -1e-9 * (max |eigenvalue| + 1).
bool is_psd(const HermitianOperator& a);

/// Squared Frobenius distance (1/2) Tr[(a - b)^2].
double frobenius_distance_sq(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace designforge
