#include "designforge/mu_getf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace designforge {

namespace {

int family_dim(const OperatorGroups& groups) {
  if (groups.empty()) {
    throw std::invalid_argument("family needs at least one group");
  }
  int dim = 0;
  for (const auto& group : groups) {
    for (const auto& op : group) {
      if (dim == 0) {
        dim = op.dim();
      } else if (op.dim() != dim) {
        throw std::invalid_argument("operator dimensions differ across groups");
      }
    }
  }
  if (dim == 0) {
    throw std::invalid_argument("family has no operators");
  }
  return dim;
}

template <typename T>
void check_broadcastable(const std::vector<T>& values, std::size_t n,
                         const char* what) {
  if (values.size() != 1 && values.size() != n) {
    throw std::invalid_argument(std::string(what) +
                                " needs one entry per group or a single entry");
  }
}

}  // namespace

int MuGetfFamily::element_count() const {
  int total = 0;
  for (const auto& g : groups) {
    total += static_cast<int>(g.elements.size());
  }
  return total;
}

std::vector<int> MuGetfFamily::frame_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(groups.size());
  for (const auto& g : groups) {
    sizes.push_back(static_cast<int>(g.elements.size()));
  }
  return sizes;
}

FamilyCheck verify_mu_getf(const OperatorGroups& groups, double tol) {
  const int dim = family_dim(groups);
  const int n = static_cast<int>(groups.size());

  FamilyCheck check;
  const auto fail = [&](std::string code, std::string detail,
                        std::vector<int> indices, double magnitude) {
    check.violation = Violation{std::move(code), std::move(detail),
                                std::move(indices), magnitude};
    return check;
  };

  MuGetfFamily family;
  family.dim = dim;
  for (int alpha = 0; alpha < n; ++alpha) {
    GetfCheck group_check = verify_getf(groups[alpha], tol);
    if (!group_check.ok()) {
      Violation inner = *group_check.violation;
      std::vector<int> indices{alpha};
      indices.insert(indices.end(), inner.indices.begin(), inner.indices.end());
      return fail(inner.code, "group " + std::to_string(alpha) + ": " + inner.detail,
                  std::move(indices), inner.magnitude);
    }
    Getf group;
    group.params = *group_check.params;
    group.elements = groups[alpha];
    family.groups.push_back(std::move(group));
  }

  int total = 0;
  for (const auto& g : family.groups) {
    total += g.params.count;
  }
  if (total < 2 * n || total > dim * dim + n - 1) {
    return fail("CARDINALITY",
                "element count " + std::to_string(total) +
                    " outside [2N, d^2 + N - 1]",
                {}, static_cast<double>(total));
  }

  // Cross-group overlaps must factorize with one coefficient.
  double f = 0.0;
  int pairs = 0;
  if (n > 1) {
    for (int alpha = 0; alpha < n; ++alpha) {
      for (int beta = alpha + 1; beta < n; ++beta) {
        const double aa = family.groups[alpha].params.a;
        const double ab = family.groups[beta].params.a;
        for (const auto& p : groups[alpha]) {
          for (const auto& q : groups[beta]) {
            f += hs_inner(p, q) / (aa * ab);
            ++pairs;
          }
        }
      }
    }
    f /= pairs;
    for (int alpha = 0; alpha < n; ++alpha) {
      for (int beta = alpha + 1; beta < n; ++beta) {
        const double aa = family.groups[alpha].params.a;
        const double ab = family.groups[beta].params.a;
        for (std::size_t k = 0; k < groups[alpha].size(); ++k) {
          for (std::size_t l = 0; l < groups[beta].size(); ++l) {
            const double dev =
                std::abs(hs_inner(groups[alpha][k], groups[beta][l]) / (aa * ab) - f);
            if (dev > tol * std::max(1.0, std::abs(f))) {
              return fail("CROSS-OVERLAP",
                          "cross-group overlaps do not factorize",
                          {alpha, static_cast<int>(k), beta, static_cast<int>(l)},
                          dev);
            }
          }
        }
      }
    }
    const double f_dev = std::abs(f - 1.0 / dim);
    if (f_dev > std::max(tol, 1e-10)) {
      return fail("UNBIASEDNESS", "cross coefficient differs from 1/d", {}, f_dev);
    }
  } else {
    f = 1.0 / dim;  // vacuous for a single group
  }

  family.f = f;
  family.gamma_total = 0.0;
  family.mu = 0.0;
  for (const auto& g : family.groups) {
    family.gamma_total += g.params.gamma;
    family.mu += g.params.a * g.params.gamma / dim;
    family.s_values.push_back(g.params.a * g.params.a * (g.params.b - g.params.c));
  }
  check.family = std::move(family);
  return check;
}

SRange s_range(int dim, const std::vector<int>& counts,
               const std::vector<double>& gammas) {
  if (counts.size() != gammas.size() || counts.empty()) {
    throw std::invalid_argument("counts and gammas must have equal, nonzero length");
  }
  const double d = static_cast<double>(dim);
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t alpha = 0; alpha < counts.size(); ++alpha) {
    const double m = static_cast<double>(counts[alpha]);
    const double base = d * gammas[alpha] * gammas[alpha] / m;
    const double steep = (d - 1.0) / (m - 1.0) * base;
    upper = std::min(upper, std::min(base, steep));
  }
  return {upper};
}

MuGetfFamily construct_mu_getf(const BasisPartition& partition,
                               const std::vector<double>& gammas, double s,
                               const std::vector<HVariant>& variants,
                               const std::vector<TauSign>& signs) {
  const int n = partition.group_count();
  const int dim = partition.dim();
  if (static_cast<int>(gammas.size()) != n) {
    throw std::invalid_argument("needs one gamma per group");
  }
  check_broadcastable(variants, n, "variants");
  check_broadcastable(signs, n, "signs");

  const std::vector<int> counts = partition.frame_sizes();
  const SRange range = s_range(dim, counts, gammas);
  if (!(s > 0.0) || s > range.upper * (1.0 + 1e-12)) {
    throw FrameError("S-RANGE", "S = " + std::to_string(s) + " outside (0, " +
                                    std::to_string(range.upper) + "]");
  }

  OperatorGroups groups;
  const double d = static_cast<double>(dim);
  for (int alpha = 0; alpha < n; ++alpha) {
    const double m = static_cast<double>(counts[alpha]);
    const double gamma = gammas[alpha];
    double b = (1.0 + s * m * (m - 1.0) / (d * gamma * gamma)) / d;
    // an S at the closed upper bound may overshoot b's own bound by 1 ulp
    const double b_upper = b_range(dim, counts[alpha]).upper;
    if (b > b_upper && b <= b_upper * (1.0 + 1e-12)) {
      b = b_upper;
    }
    const HVariant variant = variants.size() == 1 ? variants.front() : variants[alpha];
    const TauSign sign = signs.size() == 1 ? signs.front() : signs[alpha];
    Getf frame = construct_getf(partition.groups[alpha], gamma, b, variant, sign);
    groups.push_back(std::move(frame.elements));
  }

  FamilyCheck check = verify_mu_getf(groups);
  if (!check.ok()) {
    throw FrameError("CONSTRUCTION", "constructed family failed verification: " +
                                         check.violation->code + " (" +
                                         check.violation->detail + ")");
  }
  return std::move(*check.family);
}

EquidistanceResult equidistance(const MuGetfFamily& family, double tol) {
  EquidistanceResult result;
  const int n = family.group_count();
  double mean = 0.0;
  for (double s : family.s_values) {
    mean += s;
  }
  mean /= n;
  result.s = mean;
  for (double s : family.s_values) {
    result.spread = std::max(result.spread, std::abs(s - mean));
  }
  for (int alpha = 0; alpha < n; ++alpha) {
    const auto& elements = family.groups[alpha].elements;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      for (std::size_t l = k + 1; l < elements.size(); ++l) {
        const double dist = frobenius_distance_sq(elements[k], elements[l]);
        result.distance_deviation = std::max(
            result.distance_deviation, std::abs(dist - family.s_values[alpha]));
      }
    }
  }
  result.equidistant = result.spread <= tol * std::max(mean, 1e-300);
  return result;
}

CoincidenceReport index_of_coincidence(const MuGetfFamily& family,
                                       const DensityMatrix& rho) {
  if (rho.dim() != family.dim) {
    throw std::invalid_argument("state dimension does not match the family");
  }
  const EquidistanceResult eq = equidistance(family);
  if (!eq.equidistant) {
    throw FrameError("NOT-EQUIDISTANT",
                     "coincidence law needs an equidistant family (spread " +
                         std::to_string(eq.spread) + ")");
  }

  CoincidenceReport report;
  const double gamma_total = family.gamma_total;
  for (const auto& group : family.groups) {
    std::vector<double> probs;
    probs.reserve(group.elements.size());
    for (const auto& element : group.elements) {
      const double p = hs_inner(element, rho.op()) / gamma_total;
      probs.push_back(p);
      report.coincidence += p * p;
    }
    report.probabilities.push_back(std::move(probs));
  }
  report.purity = hs_inner(rho.op(), rho.op());
  const double scale = gamma_total * gamma_total;
  report.predicted = (eq.s / scale) * (report.purity - 1.0 / family.dim) +
                     family.mu / scale;
  report.residual = std::abs(report.coincidence - report.predicted);
  return report;
}

RankReport reduced_linear_independence(const MuGetfFamily& family, double cutoff) {
  std::vector<HermitianOperator> reduced;
  reduced.emplace_back(
      ComplexMatrix(ComplexMatrix::Identity(family.dim, family.dim)));
  for (const auto& group : family.groups) {
    for (std::size_t k = 0; k + 1 < group.elements.size(); ++k) {
      reduced.push_back(group.elements[k]);
    }
  }
  const int size = static_cast<int>(reduced.size());
  RealMatrix gram(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      gram(i, j) = gram(j, i) = hs_inner(reduced[i], reduced[j]);
    }
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Gram eigensolver failed to converge");
  }
  RankReport report;
  report.set_size = size;
  const double sigma_max = solver.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < size; ++i) {
    const double sigma = solver.eigenvalues()(i);
    report.gram_eigenvalues.push_back(sigma);
    if (sigma > cutoff * sigma_max) {
      ++report.rank;
    }
  }
  return report;
}

}  // namespace designforge
