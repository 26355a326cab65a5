#pragma once

#include <optional>
#include <string>
#include <vector>

#include "designforge/getf.hpp"
#include "designforge/mu_getf.hpp"
#include "designforge/operator_core.hpp"

namespace designforge {

enum class ConicalVerdict { ConicalDesign, NotPsd, ResidualTooLarge, KappaConstraintViolated };

std::string to_string(ConicalVerdict verdict);

/// Fitted coefficients of sum_k R_k (x) R_k against I (x) I and the flip
/// operator, with the Frobenius residual of the fit.
struct ConicalFit {
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double residual = 0.0;
  ConicalVerdict verdict = ConicalVerdict::ResidualTooLarge;

  double kappa() const;  // d kappa_plus + kappa_minus
  int dim = 0;
};

/// The d^2 x d^2 Hermitian sum of R_k (x) R_k.
ComplexMatrix tensor_sum(const std::vector<HermitianOperator>& ops);

/// Solves the 2x2 Gram system of {I (x) I, F} for (kappa_plus, kappa_minus),
/// measures the Frobenius residual, and classifies: element PSD failures
/// first, then residual above tol * (1 + |Sigma|), then the constraint
/// kappa_plus >= kappa_minus > 0.
ConicalFit fit_kappas(const std::vector<HermitianOperator>& ops, double tol = 1e-9);

/// Independent route through the operator map X -> sum_k R_k Tr(R_k X):
/// max Frobenius deviation from kappa_plus Tr(X) I + kappa_minus X over an
/// orthonormal Hermitian basis.
double choi_map_residual(const std::vector<HermitianOperator>& ops,
                         const ConicalFit& fit);

/// All pairwise trace data of a grouped operator set: traces w, the full
/// overlap Gram matrix, and the per-group constants kappa_alpha from the
/// weighted sums sum_k Tr(R_{alpha,k}) R_{alpha,k} = kappa_alpha I.
struct TraceProfile {
  int dim = 0;
  std::vector<int> group_sizes;
  std::vector<int> offsets;        // flat start index per group
  std::vector<double> traces;      // w, flat across groups
  RealMatrix overlaps;             // Tr(R_i R_j), flat indexing
  std::vector<double> group_kappas;
  double kappa_total = 0.0;

  int group_count() const { return static_cast<int>(group_sizes.size()); }
  double trace_of(int group, int k) const { return traces[offsets[group] + k]; }
  double self_overlap(int group, int k) const;
  double intra_overlap(int group, int k, int l) const;
  double cross_overlap(int ga, int k, int gb, int l) const;
};

/// Extracts the trace profile, checking the weighted group-sum hypothesis
/// first; throws FrameError("GROUP-SUM") when a group's weighted sum is not
/// proportional to the identity.
TraceProfile trace_profile(const std::vector<HermitianOperator>& ops,
                           const std::vector<int>& grouping, double tol = 1e-9);
TraceProfile trace_profile(const OperatorGroups& groups, double tol = 1e-9);

/// Deviations of the measured profile from the closed-form predictions
///   x = kappa_minus + (kappa_alpha - kappa_minus)/(d kappa_alpha) w^2
///   y = (kappa_alpha - kappa_minus)/(d kappa_alpha) w w'
///   z = w w' / d
/// plus the positivity bounds and Cauchy-Schwarz slacks. Slacks are the
/// smallest margins; negative values measure violation.
struct ProfileValidation {
  double max_deviation = 0.0;
  double bounds_slack = 0.0;
  double cauchy_schwarz_slack = 0.0;
  double kappa_sum_deviation = 0.0;
};

ProfileValidation validate_profile(const TraceProfile& profile,
                                   const ConicalFit& fit);

/// Per-group uniformity statements: equal traces, equal purities, constant
/// pairwise overlap, sum proportional to identity, homogeneity. The
/// statements are equivalent on verified designs; reporting them
/// independently makes the equivalence executable.
struct GroupUniformity {
  bool equal_traces = false;
  bool equal_purities = false;
  bool constant_overlap = false;
  bool sums_to_identity = false;
  bool homogeneous = false;
  std::optional<double> eta;  // sum coefficient when sums_to_identity holds
};

enum class DesignClass { Homogeneous, Inhomogeneous };

struct EquivalenceReport {
  std::vector<GroupUniformity> groups;
  std::optional<bool> mutually_unbiased;  // cross-group factorization, N > 1
  std::optional<double> f;                // fitted cross coefficient, N > 1
  DesignClass classification = DesignClass::Inhomogeneous;
};

EquivalenceReport equivalence_report(const OperatorGroups& groups,
                                     double tol = 1e-9);
EquivalenceReport equivalence_report(const std::vector<HermitianOperator>& ops,
                                     double tol = 1e-9);

/// Maps a verified homogeneous design of d^2 linearly independent elements
/// to its frame parameters gamma = kappa/w, a = w, b = x/w^2, c = y/w^2 and
/// cross-checks them against verify_getf. Throws FrameError with codes
/// "CARDINALITY", "NOT-CONICAL", "NOT-HOMOGENEOUS", "LINEAR-DEPENDENCE".
FrameParams conical_to_getf(const std::vector<HermitianOperator>& ops,
                            double tol = 1e-9);

/// Maps a verified grouped design with per-group equal traces and maximal
/// cardinality sum M_alpha = d^2 + N - 1 to the equidistant family with
/// a_alpha = w_alpha, gamma_alpha = w_alpha M_alpha / d and S = kappa_minus.
/// Throws FrameError with codes "NOT-CONICAL",
/// "GROUP-TRACE-INHOMOGENEOUS", "CARDINALITY", "TRACE-BOUND".
MuGetfFamily conical_to_mu_getf(const OperatorGroups& groups, double tol = 1e-9);

}  // namespace designforge
