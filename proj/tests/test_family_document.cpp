#include <doctest.h>

#include <sstream>

#include "designforge/corpus.hpp"
#include "designforge/family_document.hpp"
#include "designforge/hermitian_basis.hpp"

using namespace designforge;

TEST_CASE("document round trip is bit-exact") {
  const Fixture fx = fixture("example3");
  const FamilyDocument doc = FamilyDocument::from_groups(fx.dim, fx.grouped());

  std::stringstream buffer;
  doc.save(buffer);
  const FamilyDocument reloaded = FamilyDocument::load(buffer);

  REQUIRE(reloaded.dim == doc.dim);
  REQUIRE(reloaded.groups.size() == doc.groups.size());
  for (std::size_t g = 0; g < doc.groups.size(); ++g) {
    for (std::size_t k = 0; k < doc.groups[g].operators.size(); ++k) {
      CHECK((reloaded.groups[g].operators[k].matrix().array() ==
             doc.groups[g].operators[k].matrix().array())
                .all());
    }
  }

  // also for generic rotated operators
  const OrthonormalHermitianSet set = random_rotated_set(3, 77);
  FamilyDocument generic = FamilyDocument::from_groups(
      3, {{set.elements[1], set.elements[2]}, {set.elements[3]}});
  std::stringstream buffer2;
  generic.save(buffer2);
  const FamilyDocument reloaded2 = FamilyDocument::load(buffer2);
  CHECK((reloaded2.groups[0].operators[1].matrix().array() ==
         generic.groups[0].operators[1].matrix().array())
            .all());
}

TEST_CASE("document parsing rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return FamilyDocument::load(in);
  };

  CHECK_THROWS_AS(parse("not json"), DocumentError);
  CHECK_THROWS_AS(parse("{}"), DocumentError);
  CHECK_THROWS_AS(parse(R"({"dimension": 2, "groups": []})"), DocumentError);
  CHECK_THROWS_AS(parse(R"({"format": "other/9", "dimension": 2,
    "groups": [{"operators": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}]})"),
                  DocumentError);
  // row count mismatch
  CHECK_THROWS_AS(parse(R"({"dimension": 2,
    "groups": [{"operators": [[[[1,0],[0,0]]]]}]})"),
                  DocumentError);
  // entry not a [re, im] pair
  CHECK_THROWS_AS(parse(R"({"dimension": 2,
    "groups": [{"operators": [[[[1,0],[0]],[[0,0],[1,0]]]]}]})"),
                  DocumentError);
  // not Hermitian beyond the load tolerance
  CHECK_THROWS_AS(parse(R"({"dimension": 2,
    "groups": [{"operators": [[[[1,0],[0.5,0]],[[0.2,0],[1,0]]]]}]})"),
                  DocumentError);

  const FamilyDocument ok = parse(R"({"format": "design-forge/1",
    "dimension": 2, "groups": [
      {"label": "pair", "gamma": 1.0,
       "operators": [[[[1,0],[0,0]],[[0,0],[0,0]]],
                      [[[0,0],[0,0]],[[0,0],[1,0]]]]}]})");
  CHECK(ok.dim == 2);
  CHECK(ok.group_sizes() == std::vector<int>{2});
  CHECK(ok.groups[0].label == "pair");
  CHECK(ok.groups[0].gamma == 1.0);
  CHECK(ok.operator_groups()[0][0].trace() == 1.0);
}
