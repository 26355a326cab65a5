#pragma once

#include <cstdint>
#include <vector>

#include "designforge/operator_core.hpp"

namespace designforge {

/// Orthonormal Hermitian operators {G_0 = I/sqrt(d), traceless G_k}.
/// Orthonormality is with respect to the Hilbert-Schmidt pairing.
struct OrthonormalHermitianSet {
  int dim = 0;
  std::vector<HermitianOperator> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

/// A split of the traceless part of an orthonormal set into consecutive
/// groups; group alpha carries the M_alpha - 1 generators of one frame.
struct BasisPartition {
  OrthonormalHermitianSet base;
  std::vector<std::vector<HermitianOperator>> groups;

  int dim() const { return base.dim; }
  int group_count() const { return static_cast<int>(groups.size()); }

  /// M_alpha = group size + 1 for each group.
  std::vector<int> frame_sizes() const;

  /// True when sum(M_alpha - 1) = d^2 - 1, i.e. the traceless space is
  /// exhausted and the resulting family is informationally overcomplete.
  bool maximal() const;
};

/// The generalized Gell-Mann basis of d x d Hermitian operators:
/// I/sqrt(d), then (E_jk + E_kj)/sqrt(2) for j < k, then
/// i(E_jk - E_kj)/sqrt(2) (+i above the diagonal), then d - 1 diagonal
/// traceless operators. d^2 elements, pairwise orthonormal.
OrthonormalHermitianSet gell_mann_set(int dim);

/// Applies a seeded Haar-random orthogonal mix to the traceless part of
/// gell_mann_set(dim); G_0 is unchanged. Deterministic per seed: the
/// mixing matrix comes from a Gaussian sample (mt19937_64 + Box-Muller)
/// followed by QR with the sign-fixed diagonal convention.
OrthonormalHermitianSet random_rotated_set(int dim, std::uint64_t seed);

/// Assigns consecutive traceless elements of `base` to groups of sizes
/// M_alpha - 1. Requires every M_alpha >= 2 and enough traceless elements.
BasisPartition partition_set(const OrthonormalHermitianSet& base,
                             const std::vector<int>& sizes);

}  // namespace designforge
