#pragma once

#include <optional>
#include <string>
#include <vector>

#include "designforge/operator_core.hpp"

namespace designforge {

/// Which of the two traceless-operator families backs the construction.
enum class HVariant { Plus, Prime };

/// Branch sign of the scale parameter tau.
enum class TauSign { Pos, Neg };

/// The (gamma, a, b, c) tuple characterizing one generalized equiangular
/// tight frame of `count` elements in dimension `dim`, plus the
/// construction branch (variant/sign/tau) when known.
struct FrameParams {
  int dim = 0;
  int count = 0;  // number of frame elements
  double gamma = 0.0;
  double a = 0.0;  // common trace
  double b = 0.0;  // purity ratio Tr(P^2) / a^2
  double c = 0.0;  // overlap ratio Tr(P P') / a^2
  std::optional<HVariant> variant;
  std::optional<TauSign> sign;
  std::optional<double> tau;
};

/// Admissible interval for the purity ratio b: open below, closed above.
struct BRange {
  double lower = 0.0;  // excluded: b = 1/d is the trivial gamma I/M frame
  double upper = 0.0;  // included: b = 1 means rank-1, b = M/d rank-(d/M)
};

BRange b_range(int dim, int count);

/// Fills a = d gamma / M and c = (M - d b) / (d (M - 1)); tau stays unset.
/// Throws FrameError("B-RANGE") when b falls outside b_range.
FrameParams getf_params(int dim, int count, double gamma, double b);

/// Builds the M traceless combinations H_k (Plus) or H'_k (Prime) from
/// M - 1 orthonormal traceless generators. The outputs sum to zero.
std::vector<HermitianOperator> build_h_operators(
    const std::vector<HermitianOperator>& group, HVariant variant);

struct Getf {
  FrameParams params;
  std::vector<HermitianOperator> elements;
};

/// Frame elements (gamma/M) I + tau H_k at the tau determined by b and the
/// chosen branch. Throws FrameError("INFEASIBLE") when any element fails
/// positive semidefiniteness at the requested b.
Getf construct_getf(const std::vector<HermitianOperator>& group, double gamma,
                    double b, HVariant variant, TauSign sign);

/// Largest feasible |tau| in each direction, found by bisection on the
/// minimum eigenvalue of the frame elements (1e-12 absolute). Unbounded
/// directions are capped at 1e6.
struct TauBounds {
  double positive = 0.0;
  double negative = 0.0;
};

TauBounds max_feasible_tau(const std::vector<HermitianOperator>& group,
                           double gamma, int count, HVariant variant);

/// A failed verification predicate: which check, where, and by how much.
struct Violation {
  std::string code;
  std::string detail;
  std::vector<int> indices;
  double magnitude = 0.0;
};

struct GetfCheck {
  std::optional<FrameParams> params;
  std::optional<Violation> violation;

  bool ok() const { return params.has_value(); }
};

/// Runs the frame predicates in order (element PSD, equal traces, sum to
/// gamma I, constant purity ratio, constant overlap ratio, trace-relation
/// consistency, b range, linear independence) and returns either the
/// fitted parameters or the first violation. Violations are data, never
/// exceptions.
GetfCheck verify_getf(const std::vector<HermitianOperator>& elements,
                      double tol = 1e-9);

}  // namespace designforge
