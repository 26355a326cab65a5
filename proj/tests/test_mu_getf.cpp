#include <doctest.h>

#include <cmath>

#include "designforge/corpus.hpp"
#include "designforge/mu_getf.hpp"
#include "test_helpers.hpp"

using namespace designforge;
using namespace testutil;

namespace {

/// The three qubit MUB projector pairs (eigenbases of the Pauli axes),
/// each scaled by `scale[alpha]`.
OperatorGroups mub_groups(const std::vector<double>& scales = {1.0, 1.0, 1.0}) {
  OperatorGroups groups;
  const ComplexMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<HermitianOperator> pair;
    pair.emplace_back(ComplexMatrix(
        scales[axis] * 0.5 * (ComplexMatrix::Identity(2, 2) + paulis[axis])));
    pair.emplace_back(ComplexMatrix(
        scales[axis] * 0.5 * (ComplexMatrix::Identity(2, 2) - paulis[axis])));
    groups.push_back(std::move(pair));
  }
  return groups;
}

}  // namespace

TEST_CASE("three qubit MUBs verify as a family") {
  const OperatorGroups groups = mub_groups();

  // brute-force overlap table as the oracle for the cross coefficient
  double cross_min = 1.0;
  double cross_max = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    for (int beta = alpha + 1; beta < 3; ++beta) {
      for (const auto& p : groups[alpha]) {
        for (const auto& q : groups[beta]) {
          const double overlap = hs_inner(p, q) / (p.trace() * q.trace());
          cross_min = std::min(cross_min, overlap);
          cross_max = std::max(cross_max, overlap);
        }
      }
    }
  }
  CHECK(cross_min == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cross_max == doctest::Approx(0.5).epsilon(1e-12));

  const FamilyCheck check = verify_mu_getf(groups, 1e-9);
  REQUIRE(check.ok());
  const MuGetfFamily& family = *check.family;
  CHECK(family.group_count() == 3);
  CHECK(family.f == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(family.gamma_total == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(family.mu == doctest::Approx(1.5).epsilon(1e-12));
  for (const auto& group : family.groups) {
    CHECK(group.params.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(group.params.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(group.params.b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(group.params.c == doctest::Approx(0.0).epsilon(1e-12));
  }
  for (double s : family.s_values) {
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("single group reduces to the frame check") {
  OperatorGroups one{mub_groups()[0]};
  const FamilyCheck check = verify_mu_getf(one, 1e-9);
  REQUIRE(check.ok());
  CHECK(check.family->f == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(check.family->group_count() == 1);
}

TEST_CASE("mismatched gammas still verify") {
  OperatorGroups groups = mub_groups({1.0, 2.0, 1.0});
  groups.pop_back();  // two groups: gamma 1 and gamma 2
  const FamilyCheck check = verify_mu_getf(groups, 1e-9);
  REQUIRE(check.ok());
  CHECK(check.family->gamma_total == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(check.family->f == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(check.family->groups[1].params.gamma == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("verify_mu_getf flags broken families") {
  OperatorGroups groups = mub_groups();
  // duplicate one group: cross overlaps no longer factorize uniformly
  groups[1] = groups[0];
  const FamilyCheck check = verify_mu_getf(groups, 1e-9);
  REQUIRE_FALSE(check.ok());
  CHECK(check.family.has_value() == false);
  CHECK(check.violation->code == "CROSS-OVERLAP");
}

TEST_CASE("s_range pinned to hand substitution") {
  CHECK(s_range(2, {2, 2, 2}, {1.0, 1.0, 1.0}).upper == 1.0);
  CHECK(s_range(2, {2, 3}, {1.0, 1.0}).upper == 1.0 / 3.0);
  CHECK(s_range(3, {9}, {1.0}).upper == 1.0 / 12.0);
}

TEST_CASE("construct_mu_getf: Pauli partition at S=1 gives the MUB family") {
  const BasisPartition part = partition_set(gell_mann_set(2), {2, 2, 2});
  const MuGetfFamily family =
      construct_mu_getf(part, {1.0, 1.0, 1.0}, 1.0, {HVariant::Plus},
                        {TauSign::Pos});
  CHECK(family.f == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& group : family.groups) {
    CHECK(group.params.b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(group.params.a == doctest::Approx(1.0).epsilon(1e-12));
  }
  const EquidistanceResult eq = equidistance(family);
  CHECK(eq.equidistant);
  CHECK(eq.s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.distance_deviation <= 1e-12);
}

TEST_CASE("construct_mu_getf: maximal [2,3] family at S=0.3") {
  const BasisPartition part = partition_set(gell_mann_set(2), {2, 3});
  const MuGetfFamily family = construct_mu_getf(part, {1.0, 1.0}, 0.3,
                                                {HVariant::Plus}, {TauSign::Pos});
  CHECK(family.element_count() == 5);  // d^2 + N - 1
  const EquidistanceResult eq = equidistance(family);
  CHECK(eq.equidistant);
  CHECK(eq.s == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(eq.spread <= 1e-12);

  const FamilyCheck recheck = verify_mu_getf(
      OperatorGroups{family.groups[0].elements, family.groups[1].elements});
  CHECK(recheck.ok());
}

TEST_CASE("construct_mu_getf range and feasibility errors") {
  const BasisPartition part = partition_set(gell_mann_set(2), {2, 3});
  CHECK_THROWS_WITH_AS(construct_mu_getf(part, {1.0, 1.0}, 0.4, {HVariant::Plus},
                                         {TauSign::Pos}),
                       doctest::Contains("S-RANGE"), FrameError);
  CHECK_THROWS_WITH_AS(construct_mu_getf(part, {1.0, 1.0}, -0.1, {HVariant::Plus},
                                         {TauSign::Pos}),
                       doctest::Contains("S-RANGE"), FrameError);

  // S inside the admissible interval but beyond positivity feasibility for
  // this basis: d=3 pairs demand tau above the feasible cap.
  const BasisPartition part3 = partition_set(gell_mann_set(3), {2, 2});
  CHECK_THROWS_WITH_AS(construct_mu_getf(part3, {1.0, 1.0}, 1.2, {HVariant::Plus},
                                         {TauSign::Pos}),
                       doctest::Contains("INFEASIBLE"), FrameError);
  CHECK_NOTHROW(construct_mu_getf(part3, {1.0, 1.0}, 0.3, {HVariant::Plus},
                                  {TauSign::Pos}));
}

TEST_CASE("equidistance flags a perturbed family") {
  const BasisPartition part = partition_set(gell_mann_set(2), {2, 3});
  const MuGetfFamily family = construct_mu_getf(part, {1.0, 1.0}, 0.25,
                                                {HVariant::Plus}, {TauSign::Pos});

  // rebuild group 2 at a shifted purity ratio; the family stays mutually
  // unbiased but the distances split
  const double b2 = family.groups[1].params.b + 0.05;
  const Getf bumped =
      construct_getf(part.groups[1], 1.0, b2, HVariant::Plus, TauSign::Pos);
  const FamilyCheck check = verify_mu_getf(
      OperatorGroups{family.groups[0].elements, bumped.elements});
  REQUIRE(check.ok());
  const EquidistanceResult eq = equidistance(*check.family);
  CHECK_FALSE(eq.equidistant);
  CHECK(eq.spread > 1e-3);

  const MuGetfFamily single{family.dim,
                            {family.groups[0]},
                            0.5,
                            family.groups[0].params.gamma,
                            {family.s_values[0]},
                            family.groups[0].params.a *
                                family.groups[0].params.gamma / family.dim};
  CHECK(equidistance(single).equidistant);
}

TEST_CASE("index of coincidence: pure state on the MUB family") {
  const FamilyCheck check = verify_mu_getf(mub_groups(), 1e-9);
  REQUIRE(check.ok());
  const MuGetfFamily& family = *check.family;

  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  const CoincidenceReport report =
      index_of_coincidence(family, DensityMatrix(HermitianOperator(ground)));

  // hand-evaluated probabilities: x/y groups give 1/6 each, z group {1/3, 0}
  CHECK(report.probabilities[0][0] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(report.probabilities[0][1] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(report.probabilities[1][0] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(report.probabilities[1][1] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  const double z_hi = std::max(report.probabilities[2][0], report.probabilities[2][1]);
  const double z_lo = std::min(report.probabilities[2][0], report.probabilities[2][1]);
  CHECK(z_hi == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(z_lo == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(report.coincidence == doctest::Approx(2.0 / 9).epsilon(1e-12));
  CHECK(report.predicted == doctest::Approx(2.0 / 9).epsilon(1e-12));
  CHECK(report.residual <= 1e-14);

  // per-group totals equal gamma_alpha / Gamma; everything sums to one
  double total = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    double group_total = 0.0;
    for (double p : report.probabilities[alpha]) {
      group_total += p;
    }
    CHECK(group_total == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    total += group_total;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("index of coincidence: maximally mixed state") {
  const FamilyCheck check = verify_mu_getf(mub_groups(), 1e-9);
  REQUIRE(check.ok());
  const CoincidenceReport report = index_of_coincidence(
      *check.family, DensityMatrix(HermitianOperator(
                         ComplexMatrix(0.5 * ComplexMatrix::Identity(2, 2)))));
  // purity term vanishes; C = mu / Gamma^2 = (3/2) / 9
  CHECK(report.coincidence == doctest::Approx(1.0 / 6).epsilon(1e-13));
  CHECK(report.residual <= 1e-14);
}

TEST_CASE("index of coincidence: law holds on random mixed states") {
  const FamilyCheck check = verify_mu_getf(mub_groups(), 1e-9);
  REQUIRE(check.ok());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CoincidenceReport report =
        index_of_coincidence(*check.family, random_density_matrix(2, seed));
    CHECK(report.residual <= 1e-10);
  }
}

TEST_CASE("index of coincidence refuses non-equidistant families") {
  const BasisPartition part = partition_set(gell_mann_set(2), {2, 3});
  const Getf g1 =
      construct_getf(part.groups[0], 1.0, 0.8, HVariant::Plus, TauSign::Pos);
  const Getf g2 =
      construct_getf(part.groups[1], 1.0, 0.7, HVariant::Plus, TauSign::Pos);
  const FamilyCheck check =
      verify_mu_getf(OperatorGroups{g1.elements, g2.elements});
  REQUIRE(check.ok());
  CHECK_THROWS_WITH_AS(
      index_of_coincidence(*check.family, random_density_matrix(2, 1)),
      doctest::Contains("NOT-EQUIDISTANT"), FrameError);
}

TEST_CASE("family identities on verified families") {
  // c_alpha - f = -(b_alpha - c_alpha)/M_alpha, and all elements sum to
  // gamma_total times the identity.
  const std::vector<MuGetfFamily> families{
      *verify_mu_getf(mub_groups()).family,
      construct_mu_getf(partition_set(gell_mann_set(2), {2, 3}), {1.0, 1.3}, 0.2,
                        {HVariant::Plus, HVariant::Prime},
                        {TauSign::Pos, TauSign::Neg}),
      random_mu_getf(3, {3, 3, 5}, 21),
  };
  for (const auto& family : families) {
    for (const auto& group : family.groups) {
      const FrameParams& p = group.params;
      CHECK(std::abs((p.c - family.f) + (p.b - p.c) / p.count) <= 1e-12);
      if (p.tau.has_value()) {
        REQUIRE(p.variant.has_value());
        const double root = std::sqrt(static_cast<double>(p.count));
        const double branch =
            (*p.variant == HVariant::Plus) ? (root + 1.0) : (root - 1.0);
        const double tau_sq =
            p.a * p.a * (p.b - p.c) / (p.count * branch * branch);
        CHECK(std::abs(*p.tau * *p.tau - tau_sq) <= 1e-12);
      }
    }
    ComplexMatrix total = ComplexMatrix::Zero(family.dim, family.dim);
    for (const auto& group : family.groups) {
      for (const auto& el : group.elements) {
        total += el.matrix();
      }
    }
    CHECK((total - family.gamma_total *
                       ComplexMatrix::Identity(family.dim, family.dim))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
}

TEST_CASE("construction at the boundary S works") {
  // the closed upper end of the admissible S interval must be reachable
  const std::vector<int> sizes{2, 2, 2};
  const std::vector<double> gammas{1.0, 1.0, 1.0};
  const double upper = s_range(2, sizes, gammas).upper;
  const MuGetfFamily family =
      construct_mu_getf(partition_set(gell_mann_set(2), sizes), gammas, upper,
                        {HVariant::Plus}, {TauSign::Pos});
  CHECK(equidistance(family).s == doctest::Approx(upper).epsilon(1e-12));
}

TEST_CASE("reduced linear independence") {
  const FamilyCheck check = verify_mu_getf(mub_groups(), 1e-9);
  REQUIRE(check.ok());
  const RankReport report = reduced_linear_independence(*check.family);
  CHECK(report.set_size == 4);
  CHECK(report.rank == 4);

  // duplicated group: assembled by hand since verification rejects it
  MuGetfFamily duplicated = *check.family;
  duplicated.groups[1] = duplicated.groups[0];
  const RankReport deficient = reduced_linear_independence(duplicated);
  CHECK(deficient.set_size == 4);
  CHECK(deficient.rank < 4);

  const MuGetfFamily maximal = random_mu_getf(3, {3, 3, 3, 3}, 5);
  const RankReport full = reduced_linear_independence(maximal);
  CHECK(full.set_size == 9);
  CHECK(full.rank == 9);
}
