#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "csfm/brute.hpp"
#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"
#include "csfm/generator.hpp"
#include "csfm/instance.hpp"
#include "csfm/solver.hpp"

using namespace csfm;
using nlohmann::json;

namespace {

json minimal_instance() {
  return json::parse(R"({
    "schema_version": 1,
    "n": 2,
    "function": {"kind": "cut", "directed": false, "edges": [[0, 1, 1]]},
    "constraint": {"kind": "none"},
    "k": 0,
    "value_bound": 1
  })");
}

}  // namespace

TEST_CASE("minimal instance parses") {
  const Instance inst = parse_instance(minimal_instance());
  CHECK(inst.ground.size() == 2);
  CHECK(inst.kind == ConstraintKind::None);
  CHECK(inst.declared_k == 0);
  CHECK(inst.oracle->evaluate(SubsetMask::single(0)) == 1);
  CHECK(inst.family.member(SubsetMask::empty_set()));
  CHECK_FALSE(inst.digest.empty());
}

TEST_CASE("ring constraint maps to the declared hierarchy bound") {
  json doc = minimal_instance();
  doc["n"] = 3;
  doc["function"]["edges"] = json::array({json::array({0, 1, 1}), json::array({1, 2, 2})});
  doc["constraint"] = json::parse(R"({
    "kind": "complement_of_rings",
    "rings": [
      {"forced_in": [], "allowed": [0, 1], "implications": [[0, 1]]},
      {"forced_in": [2], "allowed": [0, 1, 2], "implications": []}
    ]
  })");
  doc["k"] = 2;
  doc["value_bound"] = 3;
  const Instance inst = parse_instance(doc);
  CHECK(inst.kind == ConstraintKind::ComplementOfRings);
  CHECK(inst.family.hierarchy_bound == 2);
  CHECK(inst.rings.size() == 2);
  // {2} is in the second ring, so it is not a member of the complement.
  CHECK_FALSE(inst.family.member(SubsetMask::single(2)));
  CHECK(inst.family.member(SubsetMask::single(0)));
}

TEST_CASE("table and modular shift functions parse") {
  json doc = minimal_instance();
  doc["n"] = 3;
  doc["function"] = json::parse(R"({
    "kind": "modular_shift",
    "base": {"kind": "table", "values": [0, 1, 1, 2, 1, 2, 2, 3]},
    "weights": [-5, 0, 5]
  })");
  doc["value_bound"] = 13;
  const Instance inst = parse_instance(doc);
  CHECK(inst.oracle->evaluate(SubsetMask::single(0)) == -4);
  CHECK(inst.oracle->evaluate(SubsetMask::full(3)) == 3);
  CHECK(inst.value_bound == 13);
}

TEST_CASE("malformed instances raise ParseError with a field path") {
  SUBCASE("oversized ground set") {
    json doc = minimal_instance();
    doc["n"] = 65;
    CHECK_THROWS_AS(parse_instance(doc), ParseError);
  }
  SUBCASE("edge endpoint out of range") {
    json doc = minimal_instance();
    doc["function"]["edges"] = json::array({json::array({0, 7, 1})});
    CHECK_THROWS_WITH_AS(parse_instance(doc),
                         doctest::Contains("function.edges"), ParseError);
  }
  SUBCASE("forced_in outside allowed") {
    json doc = minimal_instance();
    doc["constraint"] = json::parse(
        R"({"kind": "complement_of_rings",
            "rings": [{"forced_in": [0], "allowed": [1], "implications": []}]})");
    doc["k"] = 1;
    CHECK_THROWS_WITH_AS(parse_instance(doc), doctest::Contains("rings[0]"), ParseError);
  }
  SUBCASE("wrong table length") {
    json doc = minimal_instance();
    doc["function"] = json::parse(R"({"kind": "table", "values": [0, 1, 2]})");
    CHECK_THROWS_AS(parse_instance(doc), ParseError);
  }
  SUBCASE("unknown kinds") {
    json doc = minimal_instance();
    doc["function"]["kind"] = "entropy";
    CHECK_THROWS_AS(parse_instance(doc), ParseError);
    json doc2 = minimal_instance();
    doc2["constraint"]["kind"] = "complement_of_everything";
    CHECK_THROWS_AS(parse_instance(doc2), ParseError);
  }
  SUBCASE("k inconsistent with the constraint kind") {
    json doc = minimal_instance();
    doc["k"] = 1;  // none requires 0
    CHECK_THROWS_AS(parse_instance(doc), ParseError);
  }
  SUBCASE("declared value bound understates the range") {
    json doc = minimal_instance();
    doc["value_bound"] = 0;
    CHECK_THROWS_AS(parse_instance(doc), ParseError);
  }
  SUBCASE("element index out of range in a set") {
    json doc = minimal_instance();
    doc["constraint"] =
        json::parse(R"({"kind": "explicit", "excluded": [[0, 5]]})");
    doc["k"] = 1;
    CHECK_THROWS_AS(parse_instance(doc), ParseError);
  }
}

TEST_CASE("labelled ground sets round through reports") {
  json doc = minimal_instance();
  doc.erase("n");
  doc["ground_set"] = json::array({"left", "right"});
  const Instance inst = parse_instance(doc);
  CHECK(inst.ground.label(0) == "left");
  SolveReport report;
  report.status = SolveStatus::Optimal;
  report.minimizer = SubsetMask::single(1);
  report.value = 0;
  const json out = report_to_json(report, inst);
  CHECK(out["minimizer_labels"] == json::array({"right"}));
  CHECK(out["instance_digest"] == inst.digest);
  CHECK(out["status"] == "optimal");
}

TEST_CASE("generation is deterministic and reparses cleanly") {
  for (const char* kind : {"cut+rings", "coverage+rings", "table+intersecting",
                           "table+crossing", "cut+explicit"}) {
    for (std::uint64_t seed : {1ull, 7ull, 23ull}) {
      GenParams params;
      params.kind = kind;
      params.n = 6;
      params.k = 2;
      params.seed = seed;
      const json a = generate_instance(params);
      const json b = generate_instance(params);
      CAPTURE(kind);
      CAPTURE(seed);
      CHECK(a.dump() == b.dump());

      const Instance inst = parse_instance(a);
      CHECK(inst.ground.size() == 6);
      CHECK(inst.value_bound >= inst.oracle->value_bound());
      // Parsing is deterministic too: same digest, same oracle table.
      const Instance again = parse_instance(a);
      CHECK(inst.digest == again.digest);
      for_each_subset(6, [&](SubsetMask x) {
        CHECK(inst.oracle->evaluate(x) == again.oracle->evaluate(x));
        CHECK(inst.family.member(x) == again.family.member(x));
      });
    }
  }
}

TEST_CASE("k = 0 generation degenerates to an unconstrained instance") {
  GenParams params;
  params.kind = "cut+rings";
  params.n = 5;
  params.k = 0;
  params.seed = 3;
  const json doc = generate_instance(params);
  CHECK(doc["constraint"]["kind"] == "none");
  CHECK(doc["k"] == 0);
  const Instance inst = parse_instance(doc);
  CHECK(inst.family.member(SubsetMask::empty_set()));
}

TEST_CASE("generated instances solve to the brute optimum") {
  for (const char* kind : {"cut+rings", "table+intersecting", "cut+explicit"}) {
    for (std::uint64_t seed : {2ull, 11ull}) {
      GenParams params;
      params.kind = kind;
      params.n = 6;
      params.k = 2;
      params.seed = seed;
      const Instance inst = parse_instance(generate_instance(params));
      SolveReport report;
      switch (inst.kind) {
        case ConstraintKind::ComplementOfIntersecting:
          report = minimize_over_intersecting_complement(*inst.oracle, *inst.excluded_list);
          break;
        case ConstraintKind::ComplementOfCrossing:
          report = minimize_over_crossing_complement(*inst.oracle, *inst.excluded_list);
          break;
        default:
          report = minimize_over_hierarchical_complement(*inst.oracle, inst.family);
      }
      const BruteReport expected = brute_min(*inst.oracle, inst.family.member);
      CAPTURE(kind);
      CAPTURE(seed);
      if (expected.feasible) {
        REQUIRE(report.status == SolveStatus::Optimal);
        CHECK(report.value == expected.min_value);
      } else {
        CHECK(report.status == SolveStatus::Infeasible);
      }
    }
  }
}
