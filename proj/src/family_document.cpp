#include "designforge/family_document.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace designforge {

namespace {

double finite_number(const nlohmann::json& j, const char* where) {
  if (!j.is_number()) {
    throw DocumentError(std::string(where) + ": expected a number");
  }
  const double value = j.get<double>();
  if (!std::isfinite(value)) {
    throw DocumentError(std::string(where) + ": non-finite number");
  }
  return value;
}

HermitianOperator parse_matrix(const nlohmann::json& j, int dim,
                               double hermiticity_tol, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw DocumentError(where + ": expected " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw DocumentError(where + ": row " + std::to_string(r) + " needs " +
                          std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2) {
        throw DocumentError(where + ": entry (" + std::to_string(r) + "," +
                            std::to_string(c) + ") must be a [re, im] pair");
      }
      m(r, c) = Complex(finite_number(entry[0], where.c_str()),
                        finite_number(entry[1], where.c_str()));
    }
  }
  try {
    return HermitianOperator(m, hermiticity_tol);
  } catch (const std::invalid_argument& err) {
    throw DocumentError(where + ": " + err.what());
  }
}

nlohmann::json matrix_to_json(const HermitianOperator& op) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < op.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < op.dim(); ++c) {
      const Complex value = op.matrix()(r, c);
      row.push_back({value.real(), value.imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

FamilyDocument FamilyDocument::from_json(const nlohmann::json& j,
                                         double hermiticity_tol) {
  if (!j.is_object()) {
    throw DocumentError("document root must be an object");
  }
  if (j.contains("format") && j.at("format") != kFormat) {
    throw DocumentError("unsupported format tag: " + j.at("format").dump());
  }
  if (!j.contains("dimension") || !j.at("dimension").is_number_integer()) {
    throw DocumentError("document needs an integer \"dimension\"");
  }
  const int dim = j.at("dimension").get<int>();
  if (dim < 1) {
    throw DocumentError("dimension must be positive");
  }
  if (!j.contains("groups") || !j.at("groups").is_array() || j.at("groups").empty()) {
    throw DocumentError("document needs a nonempty \"groups\" array");
  }

  FamilyDocument doc;
  doc.dim = dim;
  int group_index = 0;
  for (const auto& jgroup : j.at("groups")) {
    if (!jgroup.is_object()) {
      throw DocumentError("groups entries must be objects");
    }
    Group group;
    if (jgroup.contains("label")) {
      if (!jgroup.at("label").is_string()) {
        throw DocumentError("group label must be a string");
      }
      group.label = jgroup.at("label").get<std::string>();
    }
    if (jgroup.contains("gamma")) {
      group.gamma = finite_number(jgroup.at("gamma"), "gamma");
    }
    if (!jgroup.contains("operators") || !jgroup.at("operators").is_array() ||
        jgroup.at("operators").empty()) {
      throw DocumentError("group " + std::to_string(group_index) +
                          " needs a nonempty \"operators\" array");
    }
    int op_index = 0;
    for (const auto& jop : jgroup.at("operators")) {
      group.operators.push_back(parse_matrix(
          jop, dim, hermiticity_tol,
          "group " + std::to_string(group_index) + " operator " +
              std::to_string(op_index)));
      ++op_index;
    }
    doc.groups.push_back(std::move(group));
    ++group_index;
  }
  return doc;
}

nlohmann::json FamilyDocument::to_json() const {
  nlohmann::json j;
  j["format"] = kFormat;
  j["dimension"] = dim;
  j["groups"] = nlohmann::json::array();
  for (const auto& group : groups) {
    nlohmann::json jgroup;
    if (group.label) {
      jgroup["label"] = *group.label;
    }
    if (group.gamma) {
      jgroup["gamma"] = *group.gamma;
    }
    jgroup["operators"] = nlohmann::json::array();
    for (const auto& op : group.operators) {
      jgroup["operators"].push_back(matrix_to_json(op));
    }
    j["groups"].push_back(std::move(jgroup));
  }
  return j;
}

FamilyDocument FamilyDocument::load(std::istream& in, double hermiticity_tol) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    throw DocumentError(std::string("JSON parse error: ") + err.what());
  }
  return from_json(j, hermiticity_tol);
}

void FamilyDocument::save(std::ostream& out) const {
  out << to_json().dump(2) << "\n";
}

OperatorGroups FamilyDocument::operator_groups() const {
  OperatorGroups out;
  out.reserve(groups.size());
  for (const auto& group : groups) {
    out.push_back(group.operators);
  }
  return out;
}

std::vector<int> FamilyDocument::group_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(groups.size());
  for (const auto& group : groups) {
    sizes.push_back(static_cast<int>(group.operators.size()));
  }
  return sizes;
}

FamilyDocument FamilyDocument::from_groups(int dim, const OperatorGroups& groups) {
  FamilyDocument doc;
  doc.dim = dim;
  for (const auto& group : groups) {
    Group g;
    g.operators = group;
    doc.groups.push_back(std::move(g));
  }
  return doc;
}

}  // namespace designforge
