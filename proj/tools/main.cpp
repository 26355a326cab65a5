// design-forge: construct and verify equiangular operator frames, mutually
// unbiased families, and conical 2-designs stored as JSON documents.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "designforge/conical.hpp"
#include "designforge/corpus.hpp"
#include "designforge/family_document.hpp"
#include "designforge/getf.hpp"
#include "designforge/hermitian_basis.hpp"
#include "designforge/mu_getf.hpp"

using namespace designforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitBadInput = 2;

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

nlohmann::json violation_json(const Violation& violation) {
  return {{"code", violation.code},
          {"detail", violation.detail},
          {"indices", violation.indices},
          {"magnitude", violation.magnitude}};
}

nlohmann::json params_json(const FrameParams& params) {
  return {{"dim", params.dim},     {"count", params.count},
          {"gamma", params.gamma}, {"a", params.a},
          {"b", params.b},         {"c", params.c}};
}

struct VerifyOutcome {
  int exit_code = kExitOk;
  std::string text;
  nlohmann::json report;
};

VerifyOutcome verify_document(const std::string& path, const FamilyDocument& doc,
                              const std::string& mode, double tol) {
  VerifyOutcome outcome;
  std::ostringstream text;
  nlohmann::json& report = outcome.report;
  report["path"] = path;
  report["mode"] = mode;
  report["dimension"] = doc.dim;
  report["group_sizes"] = doc.group_sizes();

  const OperatorGroups groups = doc.operator_groups();
  text << "== " << path << ": dimension " << doc.dim << ", groups [";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    text << (g ? ", " : "") << groups[g].size();
  }
  text << "]\n";

  bool groups_ok = true;
  report["groups"] = nlohmann::json::array();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    GetfCheck check;
    try {
      check = verify_getf(groups[g], tol);
    } catch (const std::invalid_argument& err) {
      check.violation = Violation{"PRECONDITION", err.what(), {}, 0.0};
    }
    nlohmann::json entry;
    if (check.ok()) {
      entry = {{"ok", true}, {"params", params_json(*check.params)}};
      text << "group " << g << ": getf ok (gamma=" << fmt(check.params->gamma)
           << ", a=" << fmt(check.params->a) << ", b=" << fmt(check.params->b)
           << ", c=" << fmt(check.params->c) << ")\n";
    } else {
      groups_ok = false;
      entry = {{"ok", false}, {"violation", violation_json(*check.violation)}};
      text << "group " << g << ": getf violation " << check.violation->code
           << " (" << check.violation->detail << ")\n";
    }
    report["groups"].push_back(std::move(entry));
  }

  FamilyCheck family_check;
  try {
    family_check = verify_mu_getf(groups, tol);
  } catch (const std::invalid_argument& err) {
    family_check.violation = Violation{"PRECONDITION", err.what(), {}, 0.0};
  }
  bool family_ok = family_check.ok();
  if (family_ok) {
    const MuGetfFamily& family = *family_check.family;
    nlohmann::json s_values = nlohmann::json::array();
    text << "mu-getf: ok (f=" << fmt(family.f)
         << ", Gamma=" << fmt(family.gamma_total) << ", mu=" << fmt(family.mu)
         << ", S=[";
    for (std::size_t alpha = 0; alpha < family.s_values.size(); ++alpha) {
      text << (alpha ? ", " : "") << fmt(family.s_values[alpha]);
      s_values.push_back(family.s_values[alpha]);
    }
    text << "])\n";
    report["mu_getf"] = {{"ok", true},
                         {"f", family.f},
                         {"gamma_total", family.gamma_total},
                         {"mu", family.mu},
                         {"s_values", std::move(s_values)}};

    const EquidistanceResult eq = equidistance(family, tol);
    text << "equidistance: " << (eq.equidistant ? "yes" : "no")
         << " (S=" << fmt(eq.s) << ", spread=" << fmt(eq.spread) << ")\n";
    report["equidistance"] = {{"equidistant", eq.equidistant},
                              {"s", eq.s},
                              {"spread", eq.spread}};
  } else {
    text << "mu-getf: violation " << family_check.violation->code << " ("
         << family_check.violation->detail << ")\n";
    report["mu_getf"] = {{"ok", false},
                         {"violation", violation_json(*family_check.violation)}};
  }

  std::vector<HermitianOperator> flat;
  for (const auto& g : groups) {
    flat.insert(flat.end(), g.begin(), g.end());
  }
  const ConicalFit fit = fit_kappas(flat, tol);
  const bool conical_ok = fit.verdict == ConicalVerdict::ConicalDesign;
  text << "conical: " << to_string(fit.verdict)
       << " (kappa_plus=" << fmt(fit.kappa_plus)
       << ", kappa_minus=" << fmt(fit.kappa_minus)
       << ", residual=" << fmt(fit.residual) << ")\n";
  report["conical"] = {{"verdict", to_string(fit.verdict)},
                       {"kappa_plus", fit.kappa_plus},
                       {"kappa_minus", fit.kappa_minus},
                       {"residual", fit.residual}};

  try {
    const TraceProfile profile = trace_profile(groups, tol);
    const ProfileValidation validation = validate_profile(profile, fit);
    nlohmann::json kappas = nlohmann::json::array();
    text << "group sums: kappa=[";
    for (int alpha = 0; alpha < profile.group_count(); ++alpha) {
      text << (alpha ? ", " : "") << fmt(profile.group_kappas[alpha]);
      kappas.push_back(profile.group_kappas[alpha]);
    }
    text << "], trace-relation deviation " << fmt(validation.max_deviation)
         << "\n";
    report["trace_profile"] = {
        {"group_kappas", std::move(kappas)},
        {"kappa_total", profile.kappa_total},
        {"max_deviation", validation.max_deviation},
        {"bounds_slack", validation.bounds_slack}};
  } catch (const FrameError& err) {
    text << "group sums: " << err.code() << " (" << err.what() << ")\n";
    report["trace_profile"] = {{"error", err.code()}};
  }

  const EquivalenceReport equivalence = equivalence_report(groups, tol);
  nlohmann::json uniformity = nlohmann::json::array();
  text << "equivalence: ";
  for (std::size_t g = 0; g < equivalence.groups.size(); ++g) {
    const GroupUniformity& u = equivalence.groups[g];
    text << (g ? ", " : "") << "group " << g << " "
         << (u.homogeneous ? "uniform" : "non-uniform");
    uniformity.push_back({{"equal_traces", u.equal_traces},
                          {"equal_purities", u.equal_purities},
                          {"constant_overlap", u.constant_overlap},
                          {"sums_to_identity", u.sums_to_identity},
                          {"homogeneous", u.homogeneous}});
  }
  const char* classification =
      equivalence.classification == DesignClass::Homogeneous ? "Homogeneous"
                                                             : "Inhomogeneous";
  text << "; classification " << classification;
  if (equivalence.mutually_unbiased.has_value()) {
    text << "; mutually unbiased " << (*equivalence.mutually_unbiased ? "yes" : "no");
  }
  text << "\n";
  report["equivalence"] = {{"groups", std::move(uniformity)},
                           {"classification", classification}};
  if (equivalence.mutually_unbiased.has_value()) {
    report["equivalence"]["mutually_unbiased"] = *equivalence.mutually_unbiased;
  }

  bool ok;
  if (mode == "getf") {
    ok = groups_ok;
  } else if (mode == "mu-getf") {
    ok = family_ok;
  } else if (mode == "conical") {
    ok = conical_ok;
  } else {  // auto: a valid family of frames; design classification reported
    ok = groups_ok && family_ok;
  }
  report["ok"] = ok;
  text << "verdict: " << (ok ? "ok" : "failed") << " (mode " << mode << ")\n";
  outcome.exit_code = ok ? kExitOk : kExitVerificationFailed;
  outcome.text = text.str();
  return outcome;
}

VerifyOutcome verify_path(const std::string& path, const std::string& mode,
                          double tol, double hermiticity_tol) {
  try {
    FamilyDocument doc;
    if (path == "-") {
      doc = FamilyDocument::load(std::cin, hermiticity_tol);
    } else {
      std::ifstream in(path);
      if (!in) {
        throw DocumentError("cannot open " + path);
      }
      doc = FamilyDocument::load(in, hermiticity_tol);
    }
    return verify_document(path == "-" ? "<stdin>" : path, doc, mode, tol);
  } catch (const DocumentError& err) {
    VerifyOutcome outcome;
    outcome.exit_code = kExitBadInput;
    outcome.text = "== " + path + ": document error: " + err.what() + "\n";
    outcome.report = {{"path", path}, {"ok", false}, {"error", err.what()}};
    return outcome;
  }
}

void write_document(const FamilyDocument& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    doc.save(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw DocumentError("cannot write " + out_path);
  }
  doc.save(out);
}

OrthonormalHermitianSet pick_basis(int dim, const std::optional<std::uint64_t>& seed) {
  return seed ? random_rotated_set(dim, *seed) : gell_mann_set(dim);
}

HVariant parse_variant(const std::string& name) {
  if (name == "plus") return HVariant::Plus;
  if (name == "prime") return HVariant::Prime;
  throw CLI::ValidationError("variant must be plus or prime");
}

TauSign parse_sign(const std::string& name) {
  if (name == "pos") return TauSign::Pos;
  if (name == "neg") return TauSign::Neg;
  throw CLI::ValidationError("sign must be pos or neg");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator frame and conical 2-design toolkit"};
  app.require_subcommand(1);

  // ---- verify ----
  auto* verify = app.add_subcommand(
      "verify", "verify a JSON operator family (reads stdin when no path)");
  std::vector<std::string> paths;
  std::string mode = "auto";
  std::string format = "text";
  double tol = 1e-9;
  double hermiticity_tol = 1e-10;
  verify->add_option("paths", paths, "documents to verify ('-' for stdin)");
  verify->add_option("--mode", mode, "getf | mu-getf | conical | auto")
      ->check(CLI::IsMember({"getf", "mu-getf", "conical", "auto"}))
      ->capture_default_str();
  verify->add_option("--tol", tol, "verification tolerance")
      ->capture_default_str();
  verify->add_option("--hermiticity-tol", hermiticity_tol,
                     "Hermiticity tolerance applied at load")
      ->capture_default_str();
  verify->add_option("--format", format, "text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "construct a frame or family");
  construct->require_subcommand(1);

  auto* cgetf = construct->add_subcommand("getf", "one frame of M operators");
  int getf_d = 2;
  int getf_m = 4;
  double getf_gamma = 1.0;
  double getf_b = 1.0;
  std::string getf_variant = "plus";
  std::string getf_sign = "pos";
  std::optional<std::uint64_t> getf_seed;
  std::string getf_out;
  cgetf->add_option("--d", getf_d, "Hilbert space dimension")->required();
  cgetf->add_option("--m", getf_m, "number of frame elements")->required();
  cgetf->add_option("--gamma", getf_gamma, "frame weight gamma")
      ->capture_default_str();
  cgetf->add_option("--b", getf_b, "purity ratio b")->required();
  cgetf->add_option("--variant", getf_variant, "plus | prime")
      ->check(CLI::IsMember({"plus", "prime"}))
      ->capture_default_str();
  cgetf->add_option("--sign", getf_sign, "pos | neg")
      ->check(CLI::IsMember({"pos", "neg"}))
      ->capture_default_str();
  cgetf->add_option("--seed", getf_seed,
                    "rotate the generator basis with this seed (default: "
                    "generalized Gell-Mann basis)");
  cgetf->add_option("--out", getf_out, "output path (default stdout)");

  auto* cmu = construct->add_subcommand("mu-getf", "a mutually unbiased family");
  int mu_d = 2;
  std::vector<int> mu_sizes;
  std::vector<double> mu_gammas;
  double mu_s = 0.0;
  std::vector<std::string> mu_variants{"plus"};
  std::vector<std::string> mu_signs{"pos"};
  std::optional<std::uint64_t> mu_seed;
  std::string mu_out;
  cmu->add_option("--d", mu_d, "Hilbert space dimension")->required();
  cmu->add_option("--sizes", mu_sizes, "frame sizes, e.g. 2,3")
      ->required()
      ->delimiter(',');
  cmu->add_option("--gammas", mu_gammas, "per-group gammas (default all 1)")
      ->delimiter(',');
  cmu->add_option("--s", mu_s, "common squared Frobenius distance S")->required();
  cmu->add_option("--variants", mu_variants, "plus|prime per group or once")
      ->delimiter(',');
  cmu->add_option("--signs", mu_signs, "pos|neg per group or once")
      ->delimiter(',');
  cmu->add_option("--seed", mu_seed, "rotate the generator basis with this seed");
  cmu->add_option("--out", mu_out, "output path (default stdout)");

  // ---- fixtures ----
  auto* fixtures = app.add_subcommand("fixtures", "bundled golden families");
  fixtures->require_subcommand(1);
  fixtures->add_subcommand("list", "list fixture names");
  auto* dump = fixtures->add_subcommand("dump", "write a fixture as a document");
  std::string fixture_name;
  std::string fixture_out;
  dump->add_option("name", fixture_name, "fixture name")->required();
  dump->add_option("--out", fixture_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (verify->parsed()) {
      if (paths.empty()) {
        paths.push_back("-");
      }
      std::vector<std::future<VerifyOutcome>> jobs;
      jobs.reserve(paths.size());
      for (const auto& path : paths) {
        jobs.push_back(std::async(paths.size() > 1 ? std::launch::async
                                                   : std::launch::deferred,
                                  verify_path, path, mode, tol, hermiticity_tol));
      }
      int exit_code = kExitOk;
      nlohmann::json reports = nlohmann::json::array();
      for (auto& job : jobs) {
        VerifyOutcome outcome = job.get();
        exit_code = std::max(exit_code, outcome.exit_code);
        if (format == "text") {
          std::cout << outcome.text;
        } else {
          reports.push_back(std::move(outcome.report));
        }
      }
      if (format == "json") {
        std::cout << (reports.size() == 1 ? reports.front().dump(2)
                                          : reports.dump(2))
                  << "\n";
      }
      return exit_code;
    }

    if (cgetf->parsed()) {
      const OrthonormalHermitianSet basis = pick_basis(getf_d, getf_seed);
      const BasisPartition part = partition_set(basis, {getf_m});
      const Getf frame =
          construct_getf(part.groups[0], getf_gamma, getf_b,
                         parse_variant(getf_variant), parse_sign(getf_sign));
      FamilyDocument doc = FamilyDocument::from_groups(
          getf_d, OperatorGroups{frame.elements});
      doc.groups[0].gamma = frame.params.gamma;
      write_document(doc, getf_out);
      return kExitOk;
    }

    if (cmu->parsed()) {
      if (mu_gammas.empty()) {
        mu_gammas.assign(mu_sizes.size(), 1.0);
      }
      std::vector<HVariant> variants;
      for (const auto& name : mu_variants) {
        variants.push_back(parse_variant(name));
      }
      std::vector<TauSign> signs;
      for (const auto& name : mu_signs) {
        signs.push_back(parse_sign(name));
      }
      const OrthonormalHermitianSet basis = pick_basis(mu_d, mu_seed);
      const BasisPartition part = partition_set(basis, mu_sizes);
      const MuGetfFamily family =
          construct_mu_getf(part, mu_gammas, mu_s, variants, signs);
      OperatorGroups groups;
      for (const auto& g : family.groups) {
        groups.push_back(g.elements);
      }
      FamilyDocument doc = FamilyDocument::from_groups(mu_d, groups);
      for (std::size_t g = 0; g < family.groups.size(); ++g) {
        doc.groups[g].gamma = family.groups[g].params.gamma;
      }
      write_document(doc, mu_out);
      return kExitOk;
    }

    if (fixtures->parsed()) {
      if (fixtures->get_subcommand("list")->parsed()) {
        for (const auto& name : fixture_names()) {
          std::cout << name << "\n";
        }
        return kExitOk;
      }
      Fixture fx;
      try {
        fx = fixture(fixture_name);
      } catch (const std::invalid_argument& err) {
        std::cerr << err.what() << "\n";
        return kExitBadInput;
      }
      write_document(FamilyDocument::from_groups(fx.dim, fx.grouped()),
                     fixture_out);
      return kExitOk;
    }
  } catch (const FrameError& err) {
    std::cerr << err.what() << "\n";
    return kExitVerificationFailed;
  } catch (const DocumentError& err) {
    std::cerr << err.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& err) {
    std::cerr << err.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
