#pragma once

#include <cmath>
#include <vector>

#include "designforge/operator_core.hpp"
#include "designforge/rng.hpp"

namespace testutil {

using designforge::Complex;
using designforge::ComplexMatrix;
using designforge::HermitianOperator;

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix random_hermitian(int dim, designforge::Rng& rng) {
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  return ComplexMatrix(0.5 * (m + m.adjoint()));
}

inline Eigen::VectorXcd random_vector(int dim, designforge::Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  return v;
}

/// Haar-ish random unitary from the QR of a complex Gaussian matrix.
inline ComplexMatrix random_unitary(int dim, designforge::Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    q.col(j) *= r(j, j) / std::abs(r(j, j));
  }
  return q;
}

/// Hermitian matrix with a prescribed spectrum in a random eigenbasis.
inline ComplexMatrix hermitian_with_spectrum(const std::vector<double>& spectrum,
                                             designforge::Rng& rng) {
  const int dim = static_cast<int>(spectrum.size());
  const ComplexMatrix u = random_unitary(dim, rng);
  Eigen::VectorXd d(dim);
  for (int i = 0; i < dim; ++i) {
    d(i) = spectrum[i];
  }
  const ComplexMatrix m = u * d.asDiagonal() * u.adjoint();
  return ComplexMatrix(0.5 * (m + m.adjoint()));
}

}  // namespace testutil
