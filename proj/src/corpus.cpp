#include "designforge/corpus.hpp"

#include <array>
#include <cmath>

#include "designforge/hermitian_basis.hpp"
#include "designforge/rng.hpp"

namespace designforge {

namespace {

constexpr int kRetries = 100;

ComplexMatrix qubit(Complex m00, Complex m01, Complex m10, Complex m11) {
  ComplexMatrix m(2, 2);
  m << m00, m01, m10, m11;
  return m;
}

std::vector<HermitianOperator> nonpsd_quadruple() {
  const double s5 = std::sqrt(5.0);
  const double c1 = 1.0 / (4.0 * std::sqrt(3.0));
  const double c2 = 1.0 / (12.0 * std::sqrt(3.0));
  std::vector<HermitianOperator> ops;
  ops.emplace_back(ComplexMatrix(
      c1 * qubit({1.0 + s5, 0.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0 + s5, 0.0})));
  ops.emplace_back(ComplexMatrix(
      c2 * qubit({1.0 + 3.0 * s5, 0.0}, {-5.0, -1.0}, {-5.0, 1.0},
                 {-1.0 + 3.0 * s5, 0.0})));
  ops.emplace_back(ComplexMatrix(
      c2 * qubit({-1.0 - 3.0 * s5, 0.0}, {-1.0, -5.0}, {-1.0, 5.0},
                 {1.0 - 3.0 * s5, 0.0})));
  ops.emplace_back(ComplexMatrix(
      c2 * qubit({5.0 - 3.0 * s5, 0.0}, {-1.0, 1.0}, {-1.0, -1.0},
                 {-5.0 - 3.0 * s5, 0.0})));
  return ops;
}

std::vector<HermitianOperator> grouped_qubit_design() {
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  const double s5 = std::sqrt(5.0);
  const double c1 = 1.0 / std::sqrt(6.0);
  const double c2 = 1.0 / (2.0 * std::sqrt(30.0));
  const double c3 = 1.0 / (2.0 * std::sqrt(15.0));
  std::vector<HermitianOperator> ops;
  ops.emplace_back(ComplexMatrix(c1 * qubit({1, 0}, {0, 0}, {0, 0}, {0, 0})));
  ops.emplace_back(ComplexMatrix(c1 * qubit({0, 0}, {0, 0}, {0, 0}, {1, 0})));
  ops.emplace_back(ComplexMatrix(
      c2 * qubit({2.0 * s3, 0.0}, {s5, -s2}, {s5, s2}, {2.0 * s3, 0.0})));
  ops.emplace_back(ComplexMatrix(
      c2 * qubit({2.0 * s3, 0.0}, {-s5, -s2}, {-s5, s2}, {2.0 * s3, 0.0})));
  ops.emplace_back(ComplexMatrix(
      c3 * qubit({2.0 * s2, 0.0}, {0.0, s3}, {0.0, -s3}, {2.0 * s2, 0.0})));
  return ops;
}

using Vec3 = std::array<double, 3>;

Vec3 normalized(const Vec3& v) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / norm, v[1] / norm, v[2] / norm};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// alpha I + x . sigma as a 2x2 matrix.
ComplexMatrix bloch(double alpha, const Vec3& x) {
  return qubit({alpha + x[2], 0.0}, {x[0], -x[1]}, {x[0], x[1]},
               {alpha - x[2], 0.0});
}

}  // namespace

OperatorGroups Fixture::grouped() const {
  OperatorGroups groups;
  int offset = 0;
  for (int size : group_sizes) {
    groups.emplace_back(operators.begin() + offset,
                        operators.begin() + offset + size);
    offset += size;
  }
  return groups;
}

std::vector<std::string> fixture_names() {
  return {"example1", "example2", "example3"};
}

Fixture fixture(const std::string& name) {
  Fixture f;
  f.name = name;
  f.dim = 2;
  if (name == "example1") {
    f.group_sizes = {4};
    f.operators = nonpsd_quadruple();
    f.expected = {{"kappa_plus", 1.0 / 3.0}, {"kappa_minus", 1.0 / 6.0}};
    f.expected_verdict = "NotPsd";
  } else if (name == "example2") {
    // Same matrices as example1; what they genuinely exhibit is the
    // inhomogeneous trace structure and the single-group trace relations
    // with kappa = 5/6.
    f.group_sizes = {4};
    f.operators = nonpsd_quadruple();
    f.expected = {{"kappa_plus", 1.0 / 3.0},
                  {"kappa_minus", 1.0 / 6.0},
                  {"group_kappa_0", 5.0 / 6.0}};
    f.expected_verdict = "NotPsd";
    f.expected_classification = "Inhomogeneous";
  } else if (name == "example3") {
    f.group_sizes = {2, 3};
    f.operators = grouped_qubit_design();
    f.expected = {{"kappa_plus", 1.0 / 3.0},
                  {"kappa_minus", 1.0 / 6.0},
                  {"group_kappa_0", 1.0 / 6.0},
                  {"group_kappa_1", 2.0 / 3.0}};
    f.expected_verdict = "ConicalDesign";
    f.expected_classification = "Inhomogeneous";
  } else {
    throw std::invalid_argument("unknown fixture: " + name);
  }
  return f;
}

Getf random_getf(int dim, std::uint64_t seed) {
  Rng rng(seed);
  const int count = dim * dim;
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const OrthonormalHermitianSet base = random_rotated_set(dim, rng.next_seed());
    const BasisPartition part = partition_set(base, {count});
    const auto& group = part.groups.front();

    const double gamma = rng.uniform(0.5, 2.0);
    const HVariant variant = rng.coin() ? HVariant::Plus : HVariant::Prime;
    const TauSign sign = rng.coin() ? TauSign::Pos : TauSign::Neg;

    const TauBounds bounds = max_feasible_tau(group, gamma, count, variant);
    const double tau_cap =
        (sign == TauSign::Pos) ? bounds.positive : bounds.negative;

    const double d = static_cast<double>(dim);
    const double m = static_cast<double>(count);
    const double root = std::sqrt(m);
    const double branch =
        (variant == HVariant::Plus) ? (root + 1.0) : (root - 1.0);
    const double a = d * gamma / m;
    const double b_cap =
        (1.0 + tau_cap * tau_cap * d * (m - 1.0) * branch * branch / (a * a)) / d;

    const BRange range = b_range(dim, count);
    const double b_hi = std::min(range.upper, b_cap);
    const double b =
        range.lower + rng.uniform(0.05, 1.0) * (b_hi - range.lower);
    try {
      return construct_getf(group, gamma, b, variant, sign);
    } catch (const FrameError& err) {
      last_error = err.what();
    }
  }
  throw FrameError("GENERATOR", "no feasible frame after " +
                                    std::to_string(kRetries) +
                                    " attempts; last: " + last_error);
}

MuGetfFamily random_mu_getf(int dim, const std::vector<int>& sizes,
                            std::uint64_t seed) {
  Rng rng(seed);
  const int n = static_cast<int>(sizes.size());
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const OrthonormalHermitianSet base = random_rotated_set(dim, rng.next_seed());
    const BasisPartition part = partition_set(base, sizes);

    std::vector<double> gammas;
    std::vector<HVariant> variants;
    std::vector<TauSign> signs;
    for (int alpha = 0; alpha < n; ++alpha) {
      gammas.push_back(rng.uniform(0.5, 2.0));
      variants.push_back(rng.coin() ? HVariant::Plus : HVariant::Prime);
      signs.push_back(rng.coin() ? TauSign::Pos : TauSign::Neg);
    }

    double s_cap = s_range(dim, sizes, gammas).upper;
    for (int alpha = 0; alpha < n; ++alpha) {
      const double m = static_cast<double>(sizes[alpha]);
      const double root = std::sqrt(m);
      const double branch =
          (variants[alpha] == HVariant::Plus) ? (root + 1.0) : (root - 1.0);
      const TauBounds bounds =
          max_feasible_tau(part.groups[alpha], gammas[alpha], sizes[alpha],
                           variants[alpha]);
      const double tau_cap =
          (signs[alpha] == TauSign::Pos) ? bounds.positive : bounds.negative;
      s_cap = std::min(s_cap, tau_cap * tau_cap * m * branch * branch);
    }

    const double s = rng.uniform(0.05, 1.0) * s_cap;
    try {
      return construct_mu_getf(part, gammas, s, variants, signs);
    } catch (const FrameError& err) {
      last_error = err.what();
    }
  }
  throw FrameError("GENERATOR", "no feasible family after " +
                                    std::to_string(kRetries) +
                                    " attempts; last: " + last_error);
}

OperatorGroups random_inhomogeneous_conical_qubit(std::uint64_t seed) {
  Rng rng(seed);
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const double kappa_minus = rng.uniform(0.15, 0.45);
    const double kappa_plus = kappa_minus * rng.uniform(1.3, 2.5);

    // Random orthonormal triple: measurement axis plus the in-plane basis.
    const Vec3 axis =
        normalized({rng.gaussian(), rng.gaussian(), rng.gaussian()});
    Vec3 e1{rng.gaussian(), rng.gaussian(), rng.gaussian()};
    const double along = dot(e1, axis);
    e1 = normalized({e1[0] - along * axis[0], e1[1] - along * axis[1],
                     e1[2] - along * axis[2]});
    const Vec3 e2 = cross(axis, e1);

    // Unequal traces p with sum of squares 4 kappa_plus.
    std::array<double, 3> p{};
    bool distinct = false;
    for (int tries = 0; tries < 20 && !distinct; ++tries) {
      for (double& v : p) {
        v = 1.0 + 0.8 * rng.uniform();
      }
      distinct = std::abs(p[0] - p[1]) > 0.08 && std::abs(p[0] - p[2]) > 0.08 &&
                 std::abs(p[1] - p[2]) > 0.08;
    }
    if (!distinct) {
      continue;
    }
    const double p_scale =
        std::sqrt(4.0 * kappa_plus / (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
    for (double& v : p) {
      v *= p_scale;
    }

    // In-plane Bloch vectors as complex numbers zeta with
    //   sum p zeta = 0, sum zeta^2 = 0, sum |zeta|^2 = 4 kappa_minus.
    // Writing zeta_1 = lambda zeta_2 reduces the first two to a quadratic.
    const double q1 = p[0] / p[2];
    const double q2 = p[1] / p[2];
    const Complex lambda(-q1 * q2 / (1.0 + q1 * q1),
                         std::sqrt(1.0 + q1 * q1 + q2 * q2) / (1.0 + q1 * q1));
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::array<Complex, 3> zeta{};
    zeta[1] = Complex(std::cos(phase), std::sin(phase));
    zeta[0] = lambda * zeta[1];
    zeta[2] = -(q1 * zeta[0] + q2 * zeta[1]);
    const double norm_sq = std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]);
    const double zeta_scale = std::sqrt(4.0 * kappa_minus / norm_sq);
    for (Complex& z : zeta) {
      z *= zeta_scale;
    }

    bool psd = true;
    for (int l = 0; l < 3; ++l) {
      if (std::abs(zeta[l]) > p[l]) {
        psd = false;
        break;
      }
    }
    if (!psd) {
      last_error = "in-plane vector exceeds the positivity radius";
      continue;
    }

    const double t = std::sqrt(kappa_minus);
    OperatorGroups groups(2);
    groups[0].emplace_back(bloch(t / 2.0, {t / 2.0 * axis[0], t / 2.0 * axis[1],
                                           t / 2.0 * axis[2]}));
    groups[0].emplace_back(bloch(t / 2.0, {-t / 2.0 * axis[0], -t / 2.0 * axis[1],
                                           -t / 2.0 * axis[2]}));
    for (int l = 0; l < 3; ++l) {
      const double u = zeta[l].real();
      const double v = zeta[l].imag();
      groups[1].emplace_back(
          bloch(p[l] / 2.0, {0.5 * (u * e1[0] + v * e2[0]),
                             0.5 * (u * e1[1] + v * e2[1]),
                             0.5 * (u * e1[2] + v * e2[2])}));
    }

    // Generator contract: exact design fit, inhomogeneous classification.
    std::vector<HermitianOperator> flat;
    for (const auto& g : groups) {
      flat.insert(flat.end(), g.begin(), g.end());
    }
    const ConicalFit fit = fit_kappas(flat);
    if (fit.verdict != ConicalVerdict::ConicalDesign || fit.residual > 1e-12) {
      last_error = "design fit failed (" + to_string(fit.verdict) + ")";
      continue;
    }
    const EquivalenceReport report = equivalence_report(groups);
    if (report.classification != DesignClass::Inhomogeneous) {
      last_error = "output classified as homogeneous";
      continue;
    }
    return groups;
  }
  throw FrameError("GENERATOR", "no inhomogeneous design after " +
                                    std::to_string(kRetries) +
                                    " attempts; last: " + last_error);
}

DensityMatrix random_density_matrix(int dim, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix root(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      root(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  ComplexMatrix rho = root * root.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianOperator(rho));
}

}  // namespace designforge
