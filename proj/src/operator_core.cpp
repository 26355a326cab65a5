#include "designforge/operator_core.hpp"

#include <cmath>

namespace designforge {

namespace {

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("operator dimensions differ: " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("Hermitian operator needs a square, nonempty matrix");
  }
  const double violation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(violation <= tol)) {
    throw std::invalid_argument("matrix is not Hermitian: violation " +
                                std::to_string(violation));
  }
  mat_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(HermitianOperator op, double trace_tol)
    : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > trace_tol) {
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(op_.trace() - 1.0));
  }
  if (!is_psd(op_)) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b);
  // Tr(AB) = sum_ij A_ij conj(B_ij) for Hermitian B.
  const Complex value = (a.matrix().array() * b.matrix().array().conjugate()).sum();
  if (std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error("Hilbert-Schmidt pairing has non-real value " +
                             std::to_string(value.imag()));
  }
  return value.real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator flip_operator(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("flip operator needs dim >= 1");
  }
  ComplexMatrix f = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      f(m * dim + n, n * dim + m) = 1.0;
    }
  }
  return HermitianOperator(f);
}

RealVector eigenvalues(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const HermitianOperator& a) {
  return eigenvalues(a).minCoeff();
}

bool is_psd(const HermitianOperator& a, double tol) {
  if (tol < 0) {
    throw std::invalid_argument("PSD tolerance must be nonnegative");
  }
  return eigenvalues(a).minCoeff() >= -tol;
}

bool is_psd(const HermitianOperator& a) {
  const RealVector evs = eigenvalues(a);
  const double scale = evs.cwiseAbs().maxCoeff();
  return evs.minCoeff() >= -1e-9 * (scale + 1.0);
}

double frobenius_distance_sq(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b);
  return 0.5 * (a.matrix() - b.matrix()).squaredNorm();
}

}  // namespace designforge
