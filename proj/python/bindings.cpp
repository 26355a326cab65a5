#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "designforge/conical.hpp"
#include "designforge/corpus.hpp"
#include "designforge/getf.hpp"
#include "designforge/hermitian_basis.hpp"
#include "designforge/mu_getf.hpp"
#include "designforge/operator_core.hpp"

namespace py = pybind11;
using namespace designforge;

namespace {

constexpr double kBoundaryHermTol = 1e-10;

HermitianOperator to_op(const ComplexMatrix& m) {
  return HermitianOperator(m, kBoundaryHermTol);
}

std::vector<HermitianOperator> to_ops(const std::vector<ComplexMatrix>& ms) {
  std::vector<HermitianOperator> ops;
  ops.reserve(ms.size());
  for (const auto& m : ms) {
    ops.push_back(to_op(m));
  }
  return ops;
}

OperatorGroups to_groups(const std::vector<std::vector<ComplexMatrix>>& raw) {
  OperatorGroups groups;
  groups.reserve(raw.size());
  for (const auto& g : raw) {
    groups.push_back(to_ops(g));
  }
  return groups;
}

std::vector<ComplexMatrix> from_ops(const std::vector<HermitianOperator>& ops) {
  std::vector<ComplexMatrix> ms;
  ms.reserve(ops.size());
  for (const auto& op : ops) {
    ms.push_back(op.matrix());
  }
  return ms;
}

std::vector<std::vector<ComplexMatrix>> from_groups(const OperatorGroups& groups) {
  std::vector<std::vector<ComplexMatrix>> raw;
  raw.reserve(groups.size());
  for (const auto& g : groups) {
    raw.push_back(from_ops(g));
  }
  return raw;
}

}  // namespace

PYBIND11_MODULE(designforge, m) {
  m.doc() = "equiangular operator frames, mutually unbiased families, and "
            "conical 2-designs";
  m.attr("__version__") = "0.1.0";

  py::register_exception<FrameError>(m, "FrameError");

  py::enum_<HVariant>(m, "HVariant")
      .value("Plus", HVariant::Plus)
      .value("Prime", HVariant::Prime);
  py::enum_<TauSign>(m, "TauSign")
      .value("Pos", TauSign::Pos)
      .value("Neg", TauSign::Neg);
  py::enum_<ConicalVerdict>(m, "ConicalVerdict")
      .value("ConicalDesign", ConicalVerdict::ConicalDesign)
      .value("NotPsd", ConicalVerdict::NotPsd)
      .value("ResidualTooLarge", ConicalVerdict::ResidualTooLarge)
      .value("KappaConstraintViolated", ConicalVerdict::KappaConstraintViolated);
  py::enum_<DesignClass>(m, "DesignClass")
      .value("Homogeneous", DesignClass::Homogeneous)
      .value("Inhomogeneous", DesignClass::Inhomogeneous);

  py::class_<FrameParams>(m, "FrameParams")
      .def_readonly("dim", &FrameParams::dim)
      .def_readonly("count", &FrameParams::count)
      .def_readonly("gamma", &FrameParams::gamma)
      .def_readonly("a", &FrameParams::a)
      .def_readonly("b", &FrameParams::b)
      .def_readonly("c", &FrameParams::c)
      .def_readonly("variant", &FrameParams::variant)
      .def_readonly("sign", &FrameParams::sign)
      .def_readonly("tau", &FrameParams::tau)
      .def("__repr__", [](const FrameParams& p) {
        return "FrameParams(dim=" + std::to_string(p.dim) +
               ", count=" + std::to_string(p.count) +
               ", gamma=" + std::to_string(p.gamma) + ", a=" +
               std::to_string(p.a) + ", b=" + std::to_string(p.b) +
               ", c=" + std::to_string(p.c) + ")";
      });

  py::class_<Getf>(m, "Getf")
      .def_readonly("params", &Getf::params)
      .def_property_readonly(
          "elements", [](const Getf& g) { return from_ops(g.elements); });

  py::class_<Violation>(m, "Violation")
      .def_readonly("code", &Violation::code)
      .def_readonly("detail", &Violation::detail)
      .def_readonly("indices", &Violation::indices)
      .def_readonly("magnitude", &Violation::magnitude)
      .def("__repr__", [](const Violation& v) {
        return "Violation(" + v.code + ": " + v.detail + ")";
      });

  py::class_<GetfCheck>(m, "GetfCheck")
      .def_readonly("params", &GetfCheck::params)
      .def_readonly("violation", &GetfCheck::violation)
      .def_property_readonly("ok", &GetfCheck::ok);

  py::class_<MuGetfFamily>(m, "MuGetfFamily")
      .def_readonly("dim", &MuGetfFamily::dim)
      .def_readonly("groups", &MuGetfFamily::groups)
      .def_readonly("f", &MuGetfFamily::f)
      .def_readonly("gamma_total", &MuGetfFamily::gamma_total)
      .def_readonly("s_values", &MuGetfFamily::s_values)
      .def_readonly("mu", &MuGetfFamily::mu)
      .def_property_readonly("frame_sizes", &MuGetfFamily::frame_sizes)
      .def_property_readonly("element_count", &MuGetfFamily::element_count);

  py::class_<FamilyCheck>(m, "FamilyCheck")
      .def_readonly("family", &FamilyCheck::family)
      .def_readonly("violation", &FamilyCheck::violation)
      .def_property_readonly("ok", &FamilyCheck::ok);

  py::class_<BRange>(m, "BRange")
      .def_readonly("lower", &BRange::lower)
      .def_readonly("upper", &BRange::upper);
  py::class_<SRange>(m, "SRange").def_readonly("upper", &SRange::upper);
  py::class_<TauBounds>(m, "TauBounds")
      .def_readonly("positive", &TauBounds::positive)
      .def_readonly("negative", &TauBounds::negative);

  py::class_<EquidistanceResult>(m, "EquidistanceResult")
      .def_readonly("equidistant", &EquidistanceResult::equidistant)
      .def_readonly("s", &EquidistanceResult::s)
      .def_readonly("spread", &EquidistanceResult::spread)
      .def_readonly("distance_deviation", &EquidistanceResult::distance_deviation);

  py::class_<CoincidenceReport>(m, "CoincidenceReport")
      .def_readonly("probabilities", &CoincidenceReport::probabilities)
      .def_readonly("coincidence", &CoincidenceReport::coincidence)
      .def_readonly("purity", &CoincidenceReport::purity)
      .def_readonly("predicted", &CoincidenceReport::predicted)
      .def_readonly("residual", &CoincidenceReport::residual);

  py::class_<RankReport>(m, "RankReport")
      .def_readonly("set_size", &RankReport::set_size)
      .def_readonly("rank", &RankReport::rank)
      .def_readonly("gram_eigenvalues", &RankReport::gram_eigenvalues);

  py::class_<ConicalFit>(m, "ConicalFit")
      .def_readonly("kappa_plus", &ConicalFit::kappa_plus)
      .def_readonly("kappa_minus", &ConicalFit::kappa_minus)
      .def_readonly("residual", &ConicalFit::residual)
      .def_readonly("verdict", &ConicalFit::verdict)
      .def_readonly("dim", &ConicalFit::dim)
      .def("kappa", &ConicalFit::kappa);

  py::class_<TraceProfile>(m, "TraceProfile")
      .def_readonly("dim", &TraceProfile::dim)
      .def_readonly("group_sizes", &TraceProfile::group_sizes)
      .def_readonly("traces", &TraceProfile::traces)
      .def_readonly("overlaps", &TraceProfile::overlaps)
      .def_readonly("group_kappas", &TraceProfile::group_kappas)
      .def_readonly("kappa_total", &TraceProfile::kappa_total)
      .def("trace_of", &TraceProfile::trace_of)
      .def("self_overlap", &TraceProfile::self_overlap)
      .def("intra_overlap", &TraceProfile::intra_overlap)
      .def("cross_overlap", &TraceProfile::cross_overlap);

  py::class_<ProfileValidation>(m, "ProfileValidation")
      .def_readonly("max_deviation", &ProfileValidation::max_deviation)
      .def_readonly("bounds_slack", &ProfileValidation::bounds_slack)
      .def_readonly("cauchy_schwarz_slack", &ProfileValidation::cauchy_schwarz_slack)
      .def_readonly("kappa_sum_deviation", &ProfileValidation::kappa_sum_deviation);

  py::class_<GroupUniformity>(m, "GroupUniformity")
      .def_readonly("equal_traces", &GroupUniformity::equal_traces)
      .def_readonly("equal_purities", &GroupUniformity::equal_purities)
      .def_readonly("constant_overlap", &GroupUniformity::constant_overlap)
      .def_readonly("sums_to_identity", &GroupUniformity::sums_to_identity)
      .def_readonly("homogeneous", &GroupUniformity::homogeneous)
      .def_readonly("eta", &GroupUniformity::eta);

  py::class_<EquivalenceReport>(m, "EquivalenceReport")
      .def_readonly("groups", &EquivalenceReport::groups)
      .def_readonly("mutually_unbiased", &EquivalenceReport::mutually_unbiased)
      .def_readonly("f", &EquivalenceReport::f)
      .def_readonly("classification", &EquivalenceReport::classification);

  py::class_<Fixture>(m, "Fixture")
      .def_readonly("name", &Fixture::name)
      .def_readonly("dim", &Fixture::dim)
      .def_readonly("group_sizes", &Fixture::group_sizes)
      .def_property_readonly(
          "operators", [](const Fixture& f) { return from_ops(f.operators); })
      .def_property_readonly(
          "grouped", [](const Fixture& f) { return from_groups(f.grouped()); })
      .def_readonly("expected", &Fixture::expected)
      .def_readonly("expected_verdict", &Fixture::expected_verdict)
      .def_readonly("expected_classification", &Fixture::expected_classification);

  // ---- operator core ----
  m.def("hs_inner",
        [](const ComplexMatrix& a, const ComplexMatrix& b) {
          return hs_inner(to_op(a), to_op(b));
        },
        py::arg("a"), py::arg("b"), "Hilbert-Schmidt pairing Tr(a b)");
  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def("flip_operator",
        [](int dim) { return flip_operator(dim).matrix(); }, py::arg("dim"));
  m.def("is_psd",
        [](const ComplexMatrix& a, std::optional<double> tol) {
          return tol ? is_psd(to_op(a), *tol) : is_psd(to_op(a));
        },
        py::arg("a"), py::arg("tol") = std::nullopt);
  m.def("min_eigenvalue",
        [](const ComplexMatrix& a) { return min_eigenvalue(to_op(a)); },
        py::arg("a"));
  m.def("frobenius_distance_sq",
        [](const ComplexMatrix& a, const ComplexMatrix& b) {
          return frobenius_distance_sq(to_op(a), to_op(b));
        },
        py::arg("a"), py::arg("b"));

  // ---- bases ----
  m.def("gell_mann_set",
        [](int dim) { return from_ops(gell_mann_set(dim).elements); },
        py::arg("dim"));
  m.def("random_rotated_set",
        [](int dim, std::uint64_t seed) {
          return from_ops(random_rotated_set(dim, seed).elements);
        },
        py::arg("dim"), py::arg("seed"));

  // ---- frames ----
  m.def("b_range", &b_range, py::arg("dim"), py::arg("count"));
  m.def("getf_params", &getf_params, py::arg("dim"), py::arg("count"),
        py::arg("gamma"), py::arg("b"));
  m.def("build_h_operators",
        [](const std::vector<ComplexMatrix>& group, HVariant variant) {
          return from_ops(build_h_operators(to_ops(group), variant));
        },
        py::arg("group"), py::arg("variant"));
  m.def("construct_getf",
        [](const std::vector<ComplexMatrix>& group, double gamma, double b,
           HVariant variant, TauSign sign) {
          return construct_getf(to_ops(group), gamma, b, variant, sign);
        },
        py::arg("group"), py::arg("gamma"), py::arg("b"),
        py::arg("variant") = HVariant::Plus, py::arg("sign") = TauSign::Pos);
  m.def("max_feasible_tau",
        [](const std::vector<ComplexMatrix>& group, double gamma, int count,
           HVariant variant) {
          return max_feasible_tau(to_ops(group), gamma, count, variant);
        },
        py::arg("group"), py::arg("gamma"), py::arg("count"),
        py::arg("variant") = HVariant::Plus);
  m.def("verify_getf",
        [](const std::vector<ComplexMatrix>& elements, double tol) {
          return verify_getf(to_ops(elements), tol);
        },
        py::arg("elements"), py::arg("tol") = 1e-9);

  // ---- families ----
  m.def("s_range", &s_range, py::arg("dim"), py::arg("counts"), py::arg("gammas"));
  m.def("verify_mu_getf",
        [](const std::vector<std::vector<ComplexMatrix>>& groups, double tol) {
          return verify_mu_getf(to_groups(groups), tol);
        },
        py::arg("groups"), py::arg("tol") = 1e-9);
  m.def("construct_mu_getf",
        [](int dim, const std::vector<int>& sizes,
           const std::vector<double>& gammas, double s,
           const std::vector<HVariant>& variants,
           const std::vector<TauSign>& signs, std::optional<std::uint64_t> seed) {
          const OrthonormalHermitianSet basis =
              seed ? random_rotated_set(dim, *seed) : gell_mann_set(dim);
          std::vector<double> g = gammas;
          if (g.empty()) {
            g.assign(sizes.size(), 1.0);
          }
          return construct_mu_getf(partition_set(basis, sizes), g, s, variants,
                                   signs);
        },
        py::arg("dim"), py::arg("sizes"), py::arg("gammas") = std::vector<double>{},
        py::arg("s"), py::arg("variants") = std::vector<HVariant>{HVariant::Plus},
        py::arg("signs") = std::vector<TauSign>{TauSign::Pos},
        py::arg("seed") = std::nullopt,
        "Builds one frame per partition group over the generalized Gell-Mann "
        "basis (or a seeded rotation of it)");
  m.def("equidistance", &equidistance, py::arg("family"), py::arg("tol") = 1e-9);
  m.def("index_of_coincidence",
        [](const MuGetfFamily& family, const ComplexMatrix& rho) {
          return index_of_coincidence(family,
                                      DensityMatrix(to_op(rho)));
        },
        py::arg("family"), py::arg("rho"));
  m.def("reduced_linear_independence", &reduced_linear_independence,
        py::arg("family"), py::arg("cutoff") = 1e-9);

  // ---- designs ----
  m.def("tensor_sum",
        [](const std::vector<ComplexMatrix>& ops) { return tensor_sum(to_ops(ops)); },
        py::arg("ops"));
  m.def("fit_kappas",
        [](const std::vector<ComplexMatrix>& ops, double tol) {
          return fit_kappas(to_ops(ops), tol);
        },
        py::arg("ops"), py::arg("tol") = 1e-9);
  m.def("choi_map_residual",
        [](const std::vector<ComplexMatrix>& ops, const ConicalFit& fit) {
          return choi_map_residual(to_ops(ops), fit);
        },
        py::arg("ops"), py::arg("fit"));
  m.def("trace_profile",
        [](const std::vector<ComplexMatrix>& ops, const std::vector<int>& grouping,
           double tol) { return trace_profile(to_ops(ops), grouping, tol); },
        py::arg("ops"), py::arg("grouping"), py::arg("tol") = 1e-9);
  m.def("validate_profile", &validate_profile, py::arg("profile"), py::arg("fit"));
  m.def("equivalence_report",
        [](const std::vector<std::vector<ComplexMatrix>>& groups, double tol) {
          return equivalence_report(to_groups(groups), tol);
        },
        py::arg("groups"), py::arg("tol") = 1e-9);
  m.def("conical_to_getf",
        [](const std::vector<ComplexMatrix>& ops, double tol) {
          return conical_to_getf(to_ops(ops), tol);
        },
        py::arg("ops"), py::arg("tol") = 1e-9);
  m.def("conical_to_mu_getf",
        [](const std::vector<std::vector<ComplexMatrix>>& groups, double tol) {
          return conical_to_mu_getf(to_groups(groups), tol);
        },
        py::arg("groups"), py::arg("tol") = 1e-9);

  // ---- corpus ----
  m.def("fixture_names", &fixture_names);
  m.def("fixture", &fixture, py::arg("name"));
  m.def("random_getf", &random_getf, py::arg("dim"), py::arg("seed"));
  m.def("random_mu_getf", &random_mu_getf, py::arg("dim"), py::arg("sizes"),
        py::arg("seed"));
  m.def("random_inhomogeneous_conical_qubit",
        [](std::uint64_t seed) {
          return from_groups(random_inhomogeneous_conical_qubit(seed));
        },
        py::arg("seed"));
  m.def("random_density_matrix",
        [](int dim, std::uint64_t seed) {
          return random_density_matrix(dim, seed).op().matrix();
        },
        py::arg("dim"), py::arg("seed"));
}
