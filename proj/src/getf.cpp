#include "designforge/getf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace designforge {

namespace {

constexpr double kTauCap = 1e6;       // reported bound for unconstrained tau
constexpr double kTauBisect = 1e-12;  // absolute bisection resolution

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

void require_orthonormal_traceless(const std::vector<HermitianOperator>& group) {
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (std::abs(group[i].trace()) > 1e-8) {
      throw std::invalid_argument("generator " + std::to_string(i) +
                                  " is not traceless");
    }
    for (std::size_t j = i; j < group.size(); ++j) {
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(hs_inner(group[i], group[j]) - want) > 1e-8) {
        throw std::invalid_argument("generators are not orthonormal");
      }
    }
  }
}

double tau_magnitude(const FrameParams& p, HVariant variant) {
  const double m = static_cast<double>(p.count);
  const double root = std::sqrt(m);
  const double denom_root = (variant == HVariant::Plus) ? (root + 1.0) : (root - 1.0);
  return std::sqrt(p.a * p.a * (p.b - p.c) / (m * denom_root * denom_root));
}

std::vector<HermitianOperator> build_h_unchecked(
    const std::vector<HermitianOperator>& group, HVariant variant) {
  const int dim = group.front().dim();
  const int count = static_cast<int>(group.size()) + 1;
  const double root = std::sqrt(static_cast<double>(count));

  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (const auto& g : group) {
    total += g.matrix();
  }

  // Plus: H_k = G - sqrt(M)(1 + sqrt(M)) G_k, H_M = (1 + sqrt(M)) G.
  // Prime: H_k = G + sqrt(M)(1 - sqrt(M)) G_k, H_M = (1 - sqrt(M)) G.
  const double coeff = (variant == HVariant::Plus) ? -root * (1.0 + root)
                                                   : root * (1.0 - root);
  const double last = (variant == HVariant::Plus) ? (1.0 + root) : (1.0 - root);

  std::vector<HermitianOperator> out;
  out.reserve(count);
  for (const auto& g : group) {
    out.emplace_back(ComplexMatrix(total + coeff * g.matrix()));
  }
  out.emplace_back(ComplexMatrix(last * total));
  return out;
}

}  // namespace

BRange b_range(int dim, int count) {
  if (dim < 2 || count < 2) {
    throw std::invalid_argument("b range needs dim >= 2 and count >= 2");
  }
  const double d = static_cast<double>(dim);
  return {1.0 / d, std::min(d, static_cast<double>(count)) / d};
}

FrameParams getf_params(int dim, int count, double gamma, double b) {
  if (dim < 2) {
    throw std::invalid_argument("frame dimension must be at least 2");
  }
  if (count < 2 || count > dim * dim) {
    throw std::invalid_argument("element count must lie in [2, d^2]");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }
  const BRange range = b_range(dim, count);
  if (!(b > range.lower) || !(b <= range.upper)) {
    throw FrameError("B-RANGE", "b = " + std::to_string(b) +
                                    " outside (" + std::to_string(range.lower) +
                                    ", " + std::to_string(range.upper) + "]");
  }
  const double d = static_cast<double>(dim);
  const double m = static_cast<double>(count);
  FrameParams p;
  p.dim = dim;
  p.count = count;
  p.gamma = gamma;
  p.b = b;
  p.a = d * gamma / m;
  p.c = (m - d * b) / (d * (m - 1.0));
  return p;
}

std::vector<HermitianOperator> build_h_operators(
    const std::vector<HermitianOperator>& group, HVariant variant) {
  common_dim(group);
  require_orthonormal_traceless(group);
  return build_h_unchecked(group, variant);
}

Getf construct_getf(const std::vector<HermitianOperator>& group, double gamma,
                    double b, HVariant variant, TauSign sign) {
  const int dim = common_dim(group);
  const int count = static_cast<int>(group.size()) + 1;

  FrameParams params = getf_params(dim, count, gamma, b);
  params.variant = variant;
  params.sign = sign;
  const double tau =
      (sign == TauSign::Pos ? 1.0 : -1.0) * tau_magnitude(params, variant);
  params.tau = tau;

  const std::vector<HermitianOperator> h = build_h_operators(group, variant);
  const ComplexMatrix offset =
      (gamma / static_cast<double>(count)) * ComplexMatrix::Identity(dim, dim);

  Getf frame;
  frame.params = params;
  frame.elements.reserve(count);
  for (int k = 0; k < count; ++k) {
    HermitianOperator element{ComplexMatrix(offset + tau * h[k].matrix())};
    if (!is_psd(element)) {
      throw FrameError("INFEASIBLE",
                       "element " + std::to_string(k) +
                           " is not positive semidefinite at b = " +
                           std::to_string(b) + " (min eigenvalue " +
                           std::to_string(min_eigenvalue(element)) + ")");
    }
    frame.elements.push_back(std::move(element));
  }

  // Sanity on the defining trace identities; violations mean a broken build.
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& el : frame.elements) {
    sum += el.matrix();
  }
  const double sum_dev =
      (sum - gamma * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  double trace_dev = 0.0;
  double purity_dev = 0.0;
  double overlap_dev = 0.0;
  const double a_sq = params.a * params.a;
  for (int k = 0; k < count; ++k) {
    const auto& el = frame.elements[k];
    trace_dev = std::max(trace_dev, std::abs(el.trace() - params.a));
    purity_dev =
        std::max(purity_dev, std::abs(hs_inner(el, el) - params.b * a_sq));
    for (int l = k + 1; l < count; ++l) {
      overlap_dev = std::max(
          overlap_dev,
          std::abs(hs_inner(el, frame.elements[l]) - params.c * a_sq));
    }
  }
  const double scale = std::max(1.0, gamma);
  if (sum_dev > 1e-10 * scale || trace_dev > 1e-10 * scale ||
      purity_dev > 1e-10 * scale || overlap_dev > 1e-10 * scale) {
    throw FrameError("CONSTRUCTION",
                     "frame identities violated (sum " + std::to_string(sum_dev) +
                         ", trace " + std::to_string(trace_dev) + ", purity " +
                         std::to_string(purity_dev) + ", overlap " +
                         std::to_string(overlap_dev) + ")");
  }
  return frame;
}

TauBounds max_feasible_tau(const std::vector<HermitianOperator>& group,
                           double gamma, int count, HVariant variant) {
  const int dim = common_dim(group);
  if (count != static_cast<int>(group.size()) + 1) {
    throw std::invalid_argument("count must equal group size + 1");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }
  // Degenerate groups (e.g. all-zero operators) are allowed here: the
  // feasible range is then unbounded and reported at the cap.
  const std::vector<HermitianOperator> h = build_h_unchecked(group, variant);
  const ComplexMatrix offset =
      (gamma / static_cast<double>(count)) * ComplexMatrix::Identity(dim, dim);

  const auto min_eig_at = [&](double tau) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& hk : h) {
      worst = std::min(worst, min_eigenvalue(HermitianOperator(
                                  ComplexMatrix(offset + tau * hk.matrix()))));
    }
    return worst;
  };

  // min_k lambda_min is concave in tau and positive at tau = 0, so the
  // feasible set per direction is an interval and bisection applies.
  const auto solve_direction = [&](double direction) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi < kTauCap && min_eig_at(direction * hi) >= 0.0) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi >= kTauCap) {
      return kTauCap;
    }
    while (hi - lo > kTauBisect) {
      const double mid = 0.5 * (lo + hi);
      if (min_eig_at(direction * mid) >= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  };

  return {solve_direction(1.0), solve_direction(-1.0)};
}

GetfCheck verify_getf(const std::vector<HermitianOperator>& elements, double tol) {
  const int dim = common_dim(elements);
  const int count = static_cast<int>(elements.size());
  if (count < 2) {
    throw std::invalid_argument("a frame needs at least two elements");
  }
  const double d = static_cast<double>(dim);
  const double m = static_cast<double>(count);

  GetfCheck check;
  const auto fail = [&](std::string code, std::string detail,
                        std::vector<int> indices, double magnitude) {
    check.violation = Violation{std::move(code), std::move(detail),
                                std::move(indices), magnitude};
    return check;
  };

  for (int k = 0; k < count; ++k) {
    const double min_eig = min_eigenvalue(elements[k]);
    const double scale = eigenvalues(elements[k]).cwiseAbs().maxCoeff();
    if (min_eig < -tol * (scale + 1.0)) {
      return fail("PSD", "element not positive semidefinite", {k}, -min_eig);
    }
  }

  double a = 0.0;
  for (const auto& el : elements) {
    a += el.trace();
  }
  a /= m;
  if (!(a > tol)) {
    return fail("TRACE", "mean trace is not positive", {}, a);
  }
  for (int k = 0; k < count; ++k) {
    const double dev = std::abs(elements[k].trace() - a);
    if (dev > tol * a) {
      return fail("TRACE", "element traces are not constant", {k}, dev);
    }
  }

  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& el : elements) {
    sum += el.matrix();
  }
  const double gamma = sum.trace().real() / d;
  const double sum_dev =
      (sum - gamma * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (sum_dev > tol * std::max(1.0, std::abs(gamma))) {
    return fail("SUM", "elements do not sum to a multiple of the identity", {},
                sum_dev);
  }

  RealMatrix gram(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = i; j < count; ++j) {
      gram(i, j) = gram(j, i) = hs_inner(elements[i], elements[j]);
    }
  }

  double b = 0.0;
  for (int k = 0; k < count; ++k) {
    b += gram(k, k);
  }
  b /= m * a * a;
  for (int k = 0; k < count; ++k) {
    const double dev = std::abs(gram(k, k) / (a * a) - b);
    if (dev > tol * std::max(1.0, b)) {
      return fail("PURITY", "purity ratio is not constant", {k}, dev);
    }
  }

  double c = 0.0;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      c += gram(i, j);
    }
  }
  c /= 0.5 * m * (m - 1.0) * a * a;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const double dev = std::abs(gram(i, j) / (a * a) - c);
      if (dev > tol * std::max(1.0, std::abs(c))) {
        return fail("OVERLAP", "pairwise overlap ratio is not constant", {i, j},
                    dev);
      }
    }
  }

  const double a_predicted = d * gamma / m;
  if (std::abs(a - a_predicted) > tol * std::max(1.0, a)) {
    return fail("PARAM-CONSISTENCY", "trace does not match d gamma / M", {},
                std::abs(a - a_predicted));
  }
  const double c_predicted = (m - d * b) / (d * (m - 1.0));
  if (std::abs(c - c_predicted) > tol * std::max(1.0, std::abs(c))) {
    return fail("PARAM-CONSISTENCY",
                "overlap does not match (M - d b) / (d (M - 1))", {},
                std::abs(c - c_predicted));
  }

  const BRange range = b_range(dim, count);
  if (b <= range.lower + tol || b > range.upper + tol) {
    return fail("B-RANGE", "purity ratio outside the admissible interval", {}, b);
  }

  Eigen::SelfAdjointEigenSolver<RealMatrix> gram_eigs(gram, Eigen::EigenvaluesOnly);
  if (gram_eigs.info() != Eigen::Success) {
    throw std::runtime_error("Gram eigensolver failed to converge");
  }
  const double sigma_max = gram_eigs.eigenvalues().cwiseAbs().maxCoeff();
  int rank = 0;
  for (int i = 0; i < count; ++i) {
    if (gram_eigs.eigenvalues()(i) > tol * sigma_max) {
      ++rank;
    }
  }
  if (rank < count) {
    return fail("LINEAR-DEPENDENCE", "element Gram matrix is rank deficient", {},
                static_cast<double>(rank));
  }

  FrameParams params;
  params.dim = dim;
  params.count = count;
  params.gamma = gamma;
  params.a = a;
  params.b = b;
  params.c = c;
  check.params = params;
  return check;
}

}  // namespace designforge
