#include "designforge/hermitian_basis.hpp"

#include <cmath>
#include <numeric>

#include "designforge/rng.hpp"

namespace designforge {

std::vector<int> BasisPartition::frame_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(groups.size());
  for (const auto& g : groups) {
    sizes.push_back(static_cast<int>(g.size()) + 1);
  }
  return sizes;
}

bool BasisPartition::maximal() const {
  int used = 0;
  for (const auto& g : groups) {
    used += static_cast<int>(g.size());
  }
  return used == dim() * dim() - 1;
}

OrthonormalHermitianSet gell_mann_set(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("orthonormal Hermitian set needs dim >= 2");
  }
  const double d = static_cast<double>(dim);
  OrthonormalHermitianSet set;
  set.dim = dim;
  set.elements.reserve(dim * dim);

  set.elements.emplace_back(
      ComplexMatrix(ComplexMatrix::Identity(dim, dim) / std::sqrt(d)));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      set.elements.emplace_back(m);
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      m(j, k) = Complex(0.0, inv_sqrt2);
      m(k, j) = Complex(0.0, -inv_sqrt2);
      set.elements.emplace_back(m);
    }
  }
  for (int l = 1; l < dim; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) {
      m(j, j) = norm;
    }
    m(l, l) = -static_cast<double>(l) * norm;
    set.elements.emplace_back(m);
  }
  return set;
}

OrthonormalHermitianSet random_rotated_set(int dim, std::uint64_t seed) {
  OrthonormalHermitianSet base = gell_mann_set(dim);
  const int n = dim * dim - 1;

  Rng rng(seed);
  RealMatrix gauss(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gauss(i, j) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<RealMatrix> qr(gauss);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) {
      q.col(j) *= -1.0;
    }
  }

  OrthonormalHermitianSet out;
  out.dim = dim;
  out.elements.reserve(dim * dim);
  out.elements.push_back(base.elements[0]);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix mixed = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
      mixed += q(i, j) * base.elements[j + 1].matrix();
    }
    out.elements.emplace_back(mixed);
  }
  return out;
}

BasisPartition partition_set(const OrthonormalHermitianSet& base,
                             const std::vector<int>& sizes) {
  if (sizes.empty()) {
    throw std::invalid_argument("partition needs at least one group");
  }
  int needed = 0;
  for (int m : sizes) {
    if (m < 2) {
      throw std::invalid_argument("every frame size must be at least 2");
    }
    needed += m - 1;
  }
  const int traceless = base.size() - 1;
  const int capacity = base.dim * base.dim - 1;
  if (needed > capacity || needed > traceless) {
    throw std::invalid_argument(
        "partition needs " + std::to_string(needed) +
        " traceless elements, only " + std::to_string(std::min(traceless, capacity)) +
        " available");
  }

  BasisPartition part;
  part.base = base;
  int next = 1;
  for (int m : sizes) {
    std::vector<HermitianOperator> group;
    group.reserve(m - 1);
    for (int k = 0; k < m - 1; ++k) {
      group.push_back(base.elements[next++]);
    }
    part.groups.push_back(std::move(group));
  }
  return part;
}

}  // namespace designforge
