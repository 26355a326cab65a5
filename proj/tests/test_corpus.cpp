#include <doctest.h>

#include <cmath>
#include <set>

#include "designforge/conical.hpp"
#include "designforge/corpus.hpp"
#include "test_helpers.hpp"

using namespace designforge;
using namespace testutil;

TEST_CASE("fixture catalogue") {
  CHECK(fixture_names() == std::vector<std::string>{"example1", "example2",
                                                    "example3"});
  CHECK_THROWS_AS(fixture("example9"), std::invalid_argument);

  const Fixture fx1 = fixture("example1");
  CHECK(fx1.dim == 2);
  CHECK(fx1.operators.size() == 4);
  CHECK(fx1.expected.at("kappa_plus") == 1.0 / 3.0);
  CHECK(fx1.expected.at("kappa_minus") == 1.0 / 6.0);
  CHECK(fx1.expected_verdict == "NotPsd");

  const Fixture fx3 = fixture("example3");
  CHECK(fx3.group_sizes == std::vector<int>{2, 3});
  CHECK(fx3.grouped()[1].size() == 3);
  CHECK(fx3.expected.at("group_kappa_0") == 1.0 / 6.0);
  CHECK(fx3.expected.at("group_kappa_1") == 2.0 / 3.0);
}

TEST_CASE("fixture expectations are what the operators deliver") {
  for (const auto& name : fixture_names()) {
    const Fixture fx = fixture(name);
    const ConicalFit fit = fit_kappas(fx.operators);
    CHECK(fit.kappa_plus ==
          doctest::Approx(fx.expected.at("kappa_plus")).epsilon(1e-12));
    CHECK(fit.kappa_minus ==
          doctest::Approx(fx.expected.at("kappa_minus")).epsilon(1e-12));
    CHECK(to_string(fit.verdict) == fx.expected_verdict);
    if (!fx.expected_classification.empty()) {
      const EquivalenceReport report = equivalence_report(fx.grouped());
      const char* label =
          report.classification == DesignClass::Homogeneous ? "Homogeneous"
                                                            : "Inhomogeneous";
      CHECK(fx.expected_classification == label);
    }
  }
}

TEST_CASE("random_getf contract") {
  const Getf frame = random_getf(2, 0);
  const GetfCheck check = verify_getf(frame.elements, 1e-9);
  CHECK(check.ok());

  // determinism
  const Getf again = random_getf(2, 0);
  CHECK(frame.params.b == again.params.b);
  for (std::size_t k = 0; k < frame.elements.size(); ++k) {
    CHECK((frame.elements[k].matrix().array() ==
           again.elements[k].matrix().array())
              .all());
  }

  const Getf other = random_getf(2, 1);
  CHECK(frame.params.b != other.params.b);

  const Getf qutrit = random_getf(3, 12);
  CHECK(qutrit.elements.size() == 9);
  CHECK(verify_getf(qutrit.elements, 1e-9).ok());

  const Getf ququart = random_getf(4, 8);
  CHECK(ququart.elements.size() == 16);
  CHECK(verify_getf(ququart.elements, 1e-9).ok());
  CHECK(fit_kappas(ququart.elements).verdict == ConicalVerdict::ConicalDesign);

  // the seeds explore both traceless-combination families and both signs
  bool saw_plus = false, saw_prime = false, saw_pos = false, saw_neg = false;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const Getf frame = random_getf(2, seed);
    REQUIRE(frame.params.variant.has_value());
    REQUIRE(frame.params.sign.has_value());
    saw_plus = saw_plus || *frame.params.variant == HVariant::Plus;
    saw_prime = saw_prime || *frame.params.variant == HVariant::Prime;
    saw_pos = saw_pos || *frame.params.sign == TauSign::Pos;
    saw_neg = saw_neg || *frame.params.sign == TauSign::Neg;
  }
  CHECK(saw_plus);
  CHECK(saw_prime);
  CHECK(saw_pos);
  CHECK(saw_neg);
}

TEST_CASE("random_mu_getf contract") {
  const MuGetfFamily family = random_mu_getf(2, {2, 3}, 1);
  CHECK(family.element_count() == 5);
  const EquidistanceResult eq = equidistance(family);
  CHECK(eq.equidistant);

  const MuGetfFamily qutrit = random_mu_getf(3, {3, 3, 3, 3}, 2);
  std::vector<HermitianOperator> flat;
  OperatorGroups groups;
  for (const auto& g : qutrit.groups) {
    flat.insert(flat.end(), g.elements.begin(), g.elements.end());
    groups.push_back(g.elements);
  }
  const ConicalFit fit = fit_kappas(flat);
  CHECK(fit.verdict == ConicalVerdict::ConicalDesign);
  CHECK(std::abs(equidistance(qutrit).s - fit.kappa_minus) <= 1e-9);
  CHECK(std::abs(fit.kappa_plus - (qutrit.mu - fit.kappa_minus / 3.0)) <= 1e-9);

  // determinism
  const MuGetfFamily again = random_mu_getf(3, {3, 3, 3, 3}, 2);
  CHECK((qutrit.groups[0].elements[0].matrix().array() ==
         again.groups[0].elements[0].matrix().array())
            .all());
}

TEST_CASE("random_inhomogeneous_conical_qubit contract") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const OperatorGroups groups = random_inhomogeneous_conical_qubit(seed);
    REQUIRE(groups.size() == 2);
    std::vector<HermitianOperator> flat;
    for (const auto& g : groups) {
      flat.insert(flat.end(), g.begin(), g.end());
    }

    const ConicalFit fit = fit_kappas(flat);
    CHECK(fit.verdict == ConicalVerdict::ConicalDesign);
    CHECK(fit.residual <= 1e-12);

    // at least two distinct traces inside the second group
    std::set<long long> rounded;
    for (const auto& op : groups[1]) {
      rounded.insert(std::llround(op.trace() * 1e9));
    }
    CHECK(rounded.size() >= 2);

    const EquivalenceReport report = equivalence_report(groups);
    CHECK(report.classification == DesignClass::Inhomogeneous);

    // positivity bounds and overlap relations within 1e-10
    const TraceProfile profile = trace_profile(groups);
    const ProfileValidation validation = validate_profile(profile, fit);
    CHECK(validation.bounds_slack >= -1e-10);
    CHECK(validation.max_deviation <= 1e-10);
  }

  const OperatorGroups a = random_inhomogeneous_conical_qubit(9);
  const OperatorGroups b = random_inhomogeneous_conical_qubit(9);
  CHECK((a[1][2].matrix().array() == b[1][2].matrix().array()).all());
}

TEST_CASE("random_density_matrix contract") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (int dim : {2, 3}) {
      const DensityMatrix rho = random_density_matrix(dim, seed);
      CHECK(rho.op().trace() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(min_eigenvalue(rho.op()) >= -1e-12);
    }
  }
  const DensityMatrix a = random_density_matrix(2, 4);
  const DensityMatrix b = random_density_matrix(2, 4);
  CHECK((a.op().matrix().array() == b.op().matrix().array()).all());
}
