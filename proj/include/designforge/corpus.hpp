#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "designforge/conical.hpp"
#include "designforge/getf.hpp"
#include "designforge/mu_getf.hpp"
#include "designforge/operator_core.hpp"

namespace designforge {

/// A golden operator family with its expected quantities, transcribed from
/// closed forms and evaluated in double precision.
struct Fixture {
  std::string name;
  int dim = 0;
  std::vector<int> group_sizes;
  std::vector<HermitianOperator> operators;  // flat, grouped consecutively
  std::map<std::string, double> expected;
  std::string expected_verdict;
  std::string expected_classification;

  OperatorGroups grouped() const;
};

std::vector<std::string> fixture_names();

/// Fixtures: "example1" (a non-PSD quadruple that still fits the design
/// coefficients), "example2" (the same matrices, kept for their
/// inhomogeneous trace structure), "example3" (a grouped [2,3] qubit
/// design: a rescaled von Neumann pair plus three full-rank operators).
Fixture fixture(const std::string& name);

/// Seeded maximal (M = d^2) frame over a randomly rotated basis, with
/// gamma in [1/2, 2], the purity ratio drawn inside the jointly admissible
/// and positivity-feasible range, and variant/sign drawn uniformly.
Getf random_getf(int dim, std::uint64_t seed);

/// Seeded equidistant family over the given partition sizes; the common
/// squared distance S is drawn inside the admissible range capped by
/// per-group positivity feasibility.
MuGetfFamily random_mu_getf(int dim, const std::vector<int>& sizes,
                            std::uint64_t seed);

/// Seeded grouped qubit design of shape [2, 3] whose second group has
/// non-constant traces: a rescaled von Neumann pair along a random axis
/// plus three full-rank operators built from in-plane Bloch vectors that
/// solve the grouped trace relations exactly. Every output passes the
/// conical fit and classifies as inhomogeneous.
OperatorGroups random_inhomogeneous_conical_qubit(std::uint64_t seed);

/// Seeded mixed state from a complex Gaussian square root.
DensityMatrix random_density_matrix(int dim, std::uint64_t seed);

}  // namespace designforge
