#pragma once

#include <optional>
#include <string>
#include <vector>

#include "designforge/getf.hpp"
#include "designforge/hermitian_basis.hpp"
#include "designforge/operator_core.hpp"

namespace designforge {

using OperatorGroups = std::vector<std::vector<HermitianOperator>>;

/// N frames whose cross-group overlaps factorize with a single
/// coefficient f (= 1/d for any valid family).
struct MuGetfFamily {
  int dim = 0;
  std::vector<Getf> groups;
  double f = 0.0;            // fitted cross coefficient
  double gamma_total = 0.0;  // sum of the group gammas
  std::vector<double> s_values;  // per-group squared Frobenius distance
  double mu = 0.0;           // (1/d) sum_alpha a_alpha gamma_alpha

  int group_count() const { return static_cast<int>(groups.size()); }
  int element_count() const;
  std::vector<int> frame_sizes() const;
};

struct FamilyCheck {
  std::optional<MuGetfFamily> family;
  std::optional<Violation> violation;

  bool ok() const { return family.has_value(); }
};

/// Verifies each group as a frame, the cross-group overlap factorization
/// (f must come out at 1/d), and the cardinality bounds
/// 2N <= sum M_alpha <= d^2 + N - 1. Violations are data.
FamilyCheck verify_mu_getf(const OperatorGroups& groups, double tol = 1e-9);

/// Admissible interval (0, upper] for the common squared distance S.
struct SRange {
  double upper = 0.0;
};

SRange s_range(int dim, const std::vector<int>& counts,
               const std::vector<double>& gammas);

/// Builds one frame per partition group with the purity ratio
/// b_alpha = (1 + S M_alpha (M_alpha - 1) / (d gamma_alpha^2)) / d, so the
/// family is equidistant with common S by construction. `variants` and
/// `signs` may hold one entry per group or a single broadcast entry.
/// Throws FrameError("S-RANGE") or propagates FrameError("INFEASIBLE").
MuGetfFamily construct_mu_getf(const BasisPartition& partition,
                               const std::vector<double>& gammas, double s,
                               const std::vector<HVariant>& variants,
                               const std::vector<TauSign>& signs);

struct EquidistanceResult {
  bool equidistant = false;
  double s = 0.0;       // mean of the per-group S values
  double spread = 0.0;  // max |S_alpha - mean|
  double distance_deviation = 0.0;  // worst |pairwise D^2 - S_alpha|
};

/// Checks S_alpha = S across groups and cross-checks each S_alpha against
/// the pairwise squared Frobenius distances inside the group.
EquidistanceResult equidistance(const MuGetfFamily& family, double tol = 1e-9);

struct CoincidenceReport {
  std::vector<std::vector<double>> probabilities;  // p_{alpha,k}
  double coincidence = 0.0;  // sum of squared probabilities
  double purity = 0.0;
  double predicted = 0.0;  // (S/Gamma^2)(purity - 1/d) + mu/Gamma^2
  double residual = 0.0;
};

/// Outcome probabilities p = Tr(P rho) / Gamma and the linear
/// coincidence-purity law for equidistant families. Throws
/// FrameError("NOT-EQUIDISTANT") when the family is not equidistant.
CoincidenceReport index_of_coincidence(const MuGetfFamily& family,
                                       const DensityMatrix& rho);

struct RankReport {
  int set_size = 0;
  int rank = 0;
  std::vector<double> gram_eigenvalues;
};

/// Gram rank of {I} joined with the first M_alpha - 1 elements of every
/// group; maximal families must reach rank d^2.
RankReport reduced_linear_independence(const MuGetfFamily& family,
                                       double cutoff = 1e-9);

}  // namespace designforge
