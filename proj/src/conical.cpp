#include "designforge/conical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "designforge/hermitian_basis.hpp"

namespace designforge {

namespace {

int common_dim(const std::vector<HermitianOperator>& ops) {
  if (ops.empty()) {
    throw std::invalid_argument("operator list is empty");
  }
  const int d = ops.front().dim();
  for (const auto& op : ops) {
    if (op.dim() != d) {
      throw std::invalid_argument("operator dimensions differ within one list");
    }
  }
  return d;
}

std::vector<HermitianOperator> flatten(const OperatorGroups& groups) {
  std::vector<HermitianOperator> ops;
  for (const auto& group : groups) {
    ops.insert(ops.end(), group.begin(), group.end());
  }
  return ops;
}

}  // namespace

std::string to_string(ConicalVerdict verdict) {
  switch (verdict) {
    case ConicalVerdict::ConicalDesign: return "ConicalDesign";
    case ConicalVerdict::NotPsd: return "NotPsd";
    case ConicalVerdict::ResidualTooLarge: return "ResidualTooLarge";
    case ConicalVerdict::KappaConstraintViolated: return "KappaConstraintViolated";
  }
  return "?";
}

double ConicalFit::kappa() const { return dim * kappa_plus + kappa_minus; }

ComplexMatrix tensor_sum(const std::vector<HermitianOperator>& ops) {
  const int d = common_dim(ops);
  ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& op : ops) {
    sum += kron(op.matrix(), op.matrix());
  }
  return sum;
}

ConicalFit fit_kappas(const std::vector<HermitianOperator>& ops, double tol) {
  const int dim = common_dim(ops);
  if (dim < 2) {
    throw std::invalid_argument("conical fit needs dim >= 2 (Gram system is "
                                "singular at d = 1)");
  }
  const double d = static_cast<double>(dim);

  const ComplexMatrix sigma = tensor_sum(ops);
  const ComplexMatrix flip = flip_operator(dim).matrix();

  // Gram system of {I (x) I, F}: Tr(I) = d^2, Tr(F) = d, Tr(F^2) = d^2.
  const double t_identity = sigma.trace().real();
  const double t_flip = (sigma.array() * flip.array()).sum().real();
  const double det = d * d * (d * d - 1.0);

  ConicalFit fit;
  fit.dim = dim;
  fit.kappa_plus = (d * d * t_identity - d * t_flip) / det;
  fit.kappa_minus = (d * d * t_flip - d * t_identity) / det;
  fit.residual = (sigma -
                  fit.kappa_plus * ComplexMatrix::Identity(dim * dim, dim * dim) -
                  fit.kappa_minus * flip)
                     .norm();

  bool all_psd = true;
  for (const auto& op : ops) {
    const RealVector evs = eigenvalues(op);
    if (evs.minCoeff() < -tol * (evs.cwiseAbs().maxCoeff() + 1.0)) {
      all_psd = false;
      break;
    }
  }

  const double kappa_scale =
      std::max({1.0, std::abs(fit.kappa_plus), std::abs(fit.kappa_minus)});
  if (!all_psd) {
    fit.verdict = ConicalVerdict::NotPsd;
  } else if (fit.residual > tol * (1.0 + sigma.norm())) {
    fit.verdict = ConicalVerdict::ResidualTooLarge;
  } else if (fit.kappa_minus <= tol * kappa_scale ||
             fit.kappa_plus < fit.kappa_minus - tol * kappa_scale) {
    fit.verdict = ConicalVerdict::KappaConstraintViolated;
  } else {
    fit.verdict = ConicalVerdict::ConicalDesign;
  }
  return fit;
}

double choi_map_residual(const std::vector<HermitianOperator>& ops,
                         const ConicalFit& fit) {
  const int dim = common_dim(ops);
  if (!std::isfinite(fit.kappa_plus) || !std::isfinite(fit.kappa_minus)) {
    throw std::invalid_argument("conical fit has non-finite coefficients");
  }
  const OrthonormalHermitianSet basis = gell_mann_set(dim);
  double worst = 0.0;
  for (const auto& x : basis.elements) {
    ComplexMatrix mapped = ComplexMatrix::Zero(dim, dim);
    for (const auto& op : ops) {
      mapped += hs_inner(op, x) * op.matrix();
    }
    const ComplexMatrix target =
        fit.kappa_plus * x.trace() * ComplexMatrix::Identity(dim, dim) +
        fit.kappa_minus * x.matrix();
    worst = std::max(worst, (mapped - target).norm());
  }
  return worst;
}

double TraceProfile::self_overlap(int group, int k) const {
  const int i = offsets[group] + k;
  return overlaps(i, i);
}

double TraceProfile::intra_overlap(int group, int k, int l) const {
  return overlaps(offsets[group] + k, offsets[group] + l);
}

double TraceProfile::cross_overlap(int ga, int k, int gb, int l) const {
  return overlaps(offsets[ga] + k, offsets[gb] + l);
}

TraceProfile trace_profile(const std::vector<HermitianOperator>& ops,
                           const std::vector<int>& grouping, double tol) {
  const int dim = common_dim(ops);
  int total = 0;
  for (int size : grouping) {
    if (size < 1) {
      throw std::invalid_argument("group sizes must be positive");
    }
    total += size;
  }
  if (total != static_cast<int>(ops.size())) {
    throw std::invalid_argument("grouping does not partition the operator list");
  }

  TraceProfile profile;
  profile.dim = dim;
  profile.group_sizes = grouping;
  profile.traces.reserve(ops.size());
  for (const auto& op : ops) {
    profile.traces.push_back(op.trace());
  }

  int offset = 0;
  for (std::size_t alpha = 0; alpha < grouping.size(); ++alpha) {
    profile.offsets.push_back(offset);
    ComplexMatrix weighted = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < grouping[alpha]; ++k) {
      weighted += profile.traces[offset + k] * ops[offset + k].matrix();
    }
    const double kappa_alpha = weighted.trace().real() / dim;
    const double dev =
        (weighted - kappa_alpha * ComplexMatrix::Identity(dim, dim))
            .cwiseAbs()
            .maxCoeff();
    if (dev > tol * std::max(1.0, std::abs(kappa_alpha)) || !(kappa_alpha > 0.0)) {
      throw FrameError("GROUP-SUM",
                       "group " + std::to_string(alpha) +
                           ": weighted sum is not a positive multiple of the "
                           "identity (deviation " +
                           std::to_string(dev) + ")");
    }
    profile.group_kappas.push_back(kappa_alpha);
    profile.kappa_total += kappa_alpha;
    offset += grouping[alpha];
  }

  const int n = static_cast<int>(ops.size());
  profile.overlaps.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      profile.overlaps(i, j) = profile.overlaps(j, i) = hs_inner(ops[i], ops[j]);
    }
  }
  return profile;
}

TraceProfile trace_profile(const OperatorGroups& groups, double tol) {
  std::vector<int> grouping;
  grouping.reserve(groups.size());
  for (const auto& g : groups) {
    grouping.push_back(static_cast<int>(g.size()));
  }
  return trace_profile(flatten(groups), grouping, tol);
}

ProfileValidation validate_profile(const TraceProfile& profile,
                                   const ConicalFit& fit) {
  ProfileValidation out;
  out.bounds_slack = std::numeric_limits<double>::infinity();
  out.cauchy_schwarz_slack = std::numeric_limits<double>::infinity();

  const double d = static_cast<double>(profile.dim);
  const double km = fit.kappa_minus;
  const int n_groups = profile.group_count();

  for (int alpha = 0; alpha < n_groups; ++alpha) {
    const double ka = profile.group_kappas[alpha];
    const double ratio = (ka - km) / (d * ka);
    out.bounds_slack = std::min(out.bounds_slack, ka - km);
    for (int k = 0; k < profile.group_sizes[alpha]; ++k) {
      const double w = profile.trace_of(alpha, k);
      const double x = profile.self_overlap(alpha, k);
      out.max_deviation =
          std::max(out.max_deviation, std::abs(x - (km + ratio * w * w)));
      // positivity window for the squared trace
      const double lower = d * km * ka / ((d - 1.0) * ka + km);
      out.bounds_slack = std::min(out.bounds_slack, w * w - lower);
      out.bounds_slack = std::min(out.bounds_slack, d * ka - w * w);
      out.cauchy_schwarz_slack =
          std::min(out.cauchy_schwarz_slack, d * x - w * w);
      for (int l = k + 1; l < profile.group_sizes[alpha]; ++l) {
        const double wl = profile.trace_of(alpha, l);
        const double y = profile.intra_overlap(alpha, k, l);
        out.max_deviation =
            std::max(out.max_deviation, std::abs(y - ratio * w * wl));
        out.cauchy_schwarz_slack = std::min(
            out.cauchy_schwarz_slack,
            x * profile.self_overlap(alpha, l) - y * y);
      }
    }
    for (int beta = alpha + 1; beta < n_groups; ++beta) {
      for (int k = 0; k < profile.group_sizes[alpha]; ++k) {
        for (int l = 0; l < profile.group_sizes[beta]; ++l) {
          const double z = profile.cross_overlap(alpha, k, beta, l);
          const double predicted =
              profile.trace_of(alpha, k) * profile.trace_of(beta, l) / d;
          out.max_deviation = std::max(out.max_deviation, std::abs(z - predicted));
          out.cauchy_schwarz_slack =
              std::min(out.cauchy_schwarz_slack,
                       profile.self_overlap(alpha, k) *
                               profile.self_overlap(beta, l) -
                           z * z);
        }
      }
    }
  }

  out.kappa_sum_deviation = std::abs(profile.kappa_total - fit.kappa());
  return out;
}

EquivalenceReport equivalence_report(const OperatorGroups& groups, double tol) {
  if (groups.empty()) {
    throw std::invalid_argument("equivalence report needs at least one group");
  }
  int dim = 0;
  for (const auto& g : groups) {
    for (const auto& op : g) {
      if (dim == 0) {
        dim = op.dim();
      } else if (op.dim() != dim) {
        throw std::invalid_argument("operator dimensions differ across groups");
      }
    }
  }
  if (dim == 0) {
    throw std::invalid_argument("equivalence report needs operators");
  }

  EquivalenceReport report;
  double global_trace_min = std::numeric_limits<double>::infinity();
  double global_trace_max = -std::numeric_limits<double>::infinity();
  double global_purity_min = std::numeric_limits<double>::infinity();
  double global_purity_max = -std::numeric_limits<double>::infinity();

  for (const auto& group : groups) {
    if (group.empty()) {
      throw std::invalid_argument("groups must be nonempty");
    }
    GroupUniformity u;
    const int m = static_cast<int>(group.size());

    double w_mean = 0.0;
    double x_mean = 0.0;
    std::vector<double> traces;
    std::vector<double> purities;
    for (const auto& op : group) {
      traces.push_back(op.trace());
      purities.push_back(hs_inner(op, op));
      w_mean += traces.back();
      x_mean += purities.back();
      global_trace_min = std::min(global_trace_min, traces.back());
      global_trace_max = std::max(global_trace_max, traces.back());
      global_purity_min = std::min(global_purity_min, purities.back());
      global_purity_max = std::max(global_purity_max, purities.back());
    }
    w_mean /= m;
    x_mean /= m;

    u.equal_traces = true;
    for (double w : traces) {
      if (std::abs(w - w_mean) > tol * std::max(1.0, std::abs(w_mean))) {
        u.equal_traces = false;
      }
    }
    u.equal_purities = true;
    for (double x : purities) {
      if (std::abs(x - x_mean) > tol * std::max(1.0, std::abs(x_mean))) {
        u.equal_purities = false;
      }
    }

    u.constant_overlap = true;
    if (m >= 2) {
      double y_mean = 0.0;
      int pairs = 0;
      for (int k = 0; k < m; ++k) {
        for (int l = k + 1; l < m; ++l) {
          y_mean += hs_inner(group[k], group[l]);
          ++pairs;
        }
      }
      y_mean /= pairs;
      for (int k = 0; k < m && u.constant_overlap; ++k) {
        for (int l = k + 1; l < m; ++l) {
          if (std::abs(hs_inner(group[k], group[l]) - y_mean) >
              tol * std::max(1.0, std::abs(y_mean))) {
            u.constant_overlap = false;
            break;
          }
        }
      }
    }

    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& op : group) {
      sum += op.matrix();
    }
    const double eta = sum.trace().real() / dim;
    const double sum_dev =
        (sum - eta * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    u.sums_to_identity = sum_dev <= tol * std::max(1.0, std::abs(eta)) && eta > 0.0;
    if (u.sums_to_identity) {
      u.eta = eta;
    }

    u.homogeneous = u.equal_traces && u.equal_purities;
    report.groups.push_back(std::move(u));
  }

  if (groups.size() > 1) {
    double f = 0.0;
    int pairs = 0;
    bool unbiased = true;
    for (std::size_t alpha = 0; alpha < groups.size(); ++alpha) {
      for (std::size_t beta = alpha + 1; beta < groups.size(); ++beta) {
        for (const auto& p : groups[alpha]) {
          for (const auto& q : groups[beta]) {
            f += hs_inner(p, q) / (p.trace() * q.trace());
            ++pairs;
          }
        }
      }
    }
    f /= pairs;
    for (std::size_t alpha = 0; alpha < groups.size() && unbiased; ++alpha) {
      for (std::size_t beta = alpha + 1; beta < groups.size() && unbiased; ++beta) {
        for (const auto& p : groups[alpha]) {
          for (const auto& q : groups[beta]) {
            if (std::abs(hs_inner(p, q) / (p.trace() * q.trace()) - f) >
                tol * std::max(1.0, std::abs(f))) {
              unbiased = false;
              break;
            }
          }
          if (!unbiased) break;
        }
      }
    }
    report.f = f;
    report.mutually_unbiased = unbiased;
  }

  const double trace_scale = std::max(1.0, std::abs(global_trace_max));
  const double purity_scale = std::max(1.0, std::abs(global_purity_max));
  const bool homogeneous =
      (global_trace_max - global_trace_min) <= tol * trace_scale &&
      (global_purity_max - global_purity_min) <= tol * purity_scale;
  report.classification =
      homogeneous ? DesignClass::Homogeneous : DesignClass::Inhomogeneous;
  return report;
}

EquivalenceReport equivalence_report(const std::vector<HermitianOperator>& ops,
                                     double tol) {
  return equivalence_report(OperatorGroups{ops}, tol);
}

FrameParams conical_to_getf(const std::vector<HermitianOperator>& ops, double tol) {
  const int dim = common_dim(ops);
  const int count = static_cast<int>(ops.size());
  if (count != dim * dim) {
    throw FrameError("CARDINALITY", "needs exactly d^2 elements, got " +
                                        std::to_string(count));
  }

  const ConicalFit fit = fit_kappas(ops, tol);
  if (fit.verdict != ConicalVerdict::ConicalDesign) {
    throw FrameError("NOT-CONICAL", "fit verdict is " + to_string(fit.verdict));
  }

  const EquivalenceReport report = equivalence_report(ops, tol);
  if (!report.groups.front().homogeneous) {
    throw FrameError("NOT-HOMOGENEOUS",
                     "element traces or purities are not constant");
  }

  RealMatrix gram(count, count);
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  for (int i = 0; i < count; ++i) {
    w += ops[i].trace();
    for (int j = i; j < count; ++j) {
      gram(i, j) = gram(j, i) = hs_inner(ops[i], ops[j]);
    }
    x += gram(i, i);
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      y += gram(i, j);
    }
  }
  w /= count;
  x /= count;
  y /= 0.5 * count * (count - 1.0);

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Gram eigensolver failed to converge");
  }
  const double sigma_max = solver.eigenvalues().cwiseAbs().maxCoeff();
  int rank = 0;
  for (int i = 0; i < count; ++i) {
    if (solver.eigenvalues()(i) > tol * sigma_max) {
      ++rank;
    }
  }
  if (rank < count) {
    throw FrameError("LINEAR-DEPENDENCE", "element Gram rank " +
                                              std::to_string(rank) + " < " +
                                              std::to_string(count));
  }

  const double d = static_cast<double>(dim);
  const double kappa = fit.kappa();
  // Closed forms for homogeneous designs.
  const double w_predicted = std::sqrt(kappa / d);
  const double x_predicted = fit.kappa_minus + fit.kappa_plus / d;
  const double y_predicted = fit.kappa_plus / d;
  if (std::abs(w - w_predicted) > tol * std::max(1.0, w) ||
      std::abs(x - x_predicted) > tol * std::max(1.0, x) ||
      std::abs(y - y_predicted) > tol * std::max(1.0, std::abs(y))) {
    throw FrameError("TRACE-RELATION",
                     "homogeneous trace relations violated beyond tolerance");
  }

  FrameParams params;
  params.dim = dim;
  params.count = count;
  params.gamma = kappa / w;
  params.a = w;
  params.b = x / (w * w);
  params.c = y / (w * w);

  const GetfCheck check = verify_getf(ops, tol);
  if (!check.ok()) {
    throw FrameError("GETF-MISMATCH", "frame verification failed: " +
                                          check.violation->code);
  }
  const FrameParams& fitted = *check.params;
  const double mismatch = std::max(
      {std::abs(fitted.gamma - params.gamma), std::abs(fitted.a - params.a),
       std::abs(fitted.b - params.b), std::abs(fitted.c - params.c)});
  if (mismatch > tol * std::max({1.0, params.gamma, params.a})) {
    throw FrameError("GETF-MISMATCH",
                     "fitted frame parameters disagree with the design map");
  }
  return params;
}

MuGetfFamily conical_to_mu_getf(const OperatorGroups& groups, double tol) {
  const std::vector<HermitianOperator> ops = flatten(groups);
  const int dim = common_dim(ops);
  const int n = static_cast<int>(groups.size());

  const ConicalFit fit = fit_kappas(ops, tol);
  if (fit.verdict != ConicalVerdict::ConicalDesign) {
    throw FrameError("NOT-CONICAL", "fit verdict is " + to_string(fit.verdict));
  }

  const TraceProfile profile = trace_profile(groups, tol);

  const int total = static_cast<int>(ops.size());
  if (total != dim * dim + n - 1) {
    throw FrameError("CARDINALITY", "needs d^2 + N - 1 elements, got " +
                                        std::to_string(total));
  }

  std::vector<double> group_traces;
  for (int alpha = 0; alpha < n; ++alpha) {
    double mean = 0.0;
    for (int k = 0; k < profile.group_sizes[alpha]; ++k) {
      mean += profile.trace_of(alpha, k);
    }
    mean /= profile.group_sizes[alpha];
    for (int k = 0; k < profile.group_sizes[alpha]; ++k) {
      if (std::abs(profile.trace_of(alpha, k) - mean) >
          tol * std::max(1.0, mean)) {
        throw FrameError("GROUP-TRACE-INHOMOGENEOUS",
                         "group " + std::to_string(alpha) +
                             " has non-constant traces");
      }
    }
    group_traces.push_back(mean);
  }

  const double d = static_cast<double>(dim);
  for (int alpha = 0; alpha < n; ++alpha) {
    const double m = static_cast<double>(profile.group_sizes[alpha]);
    const double bound = std::sqrt(d * fit.kappa_minus / m) *
                         std::max(1.0, std::sqrt((m - 1.0) / (d - 1.0)));
    if (group_traces[alpha] < bound - tol * std::max(1.0, bound)) {
      throw FrameError("TRACE-BOUND",
                       "group " + std::to_string(alpha) +
                           " trace below the positivity bound");
    }
  }

  FamilyCheck check = verify_mu_getf(groups, tol);
  if (!check.ok()) {
    throw FrameError("FAMILY", "family verification failed: " +
                                   check.violation->code + " (" +
                                   check.violation->detail + ")");
  }
  MuGetfFamily family = std::move(*check.family);

  const EquidistanceResult eq = equidistance(family, tol);
  if (!eq.equidistant ||
      std::abs(eq.s - fit.kappa_minus) > tol * std::max(1.0, fit.kappa_minus)) {
    throw FrameError("EQUIDISTANCE",
                     "family is not equidistant at S = kappa_minus");
  }
  return family;
}

}  // namespace designforge
