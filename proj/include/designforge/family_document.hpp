#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "designforge/mu_getf.hpp"
#include "designforge/operator_core.hpp"

namespace designforge {

/// Malformed or out-of-schema input; the CLI maps this to exit code 2.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// On-disk operator family: grouped d x d Hermitian matrices with entries
/// stored as [re, im] pairs. The format tag is "design-forge/1".
/// Serialization uses shortest round-trip decimals, so dump -> load
/// preserves every entry bit-exactly.
struct FamilyDocument {
  static constexpr const char* kFormat = "design-forge/1";

  struct Group {
    std::optional<std::string> label;
    std::optional<double> gamma;
    std::vector<HermitianOperator> operators;
  };

  int dim = 0;
  std::vector<Group> groups;

  static FamilyDocument from_json(const nlohmann::json& j,
                                  double hermiticity_tol = 1e-10);
  nlohmann::json to_json() const;

  static FamilyDocument load(std::istream& in, double hermiticity_tol = 1e-10);
  void save(std::ostream& out) const;

  OperatorGroups operator_groups() const;
  std::vector<int> group_sizes() const;

  static FamilyDocument from_groups(int dim, const OperatorGroups& groups);
};

}  // namespace designforge
