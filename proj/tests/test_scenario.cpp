#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ncineq/scenario.hpp"
#include "ncineq/scenario_io.hpp"
#include "support/generators.hpp"

using namespace ncineq;

namespace {

bool has_code(const std::vector<Violation>& violations, const std::string& c) {
  for (const Violation& v : violations) {
    if (v.code == c) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("n-cycle construction has the documented shape") {
  Scenario s = build_n_cycle(5);
  REQUIRE(s.measurements.size() == 5);
  REQUIRE(s.contexts.size() == 5);
  CHECK(s.measurements[0].id == "M1");
  CHECK(s.measurements[4].id == "M5");
  for (const Measurement& m : s.measurements) CHECK(m.outcome_count == 2);
  CHECK(s.contexts[0].member_ids == std::vector<std::string>{"M1", "M2"});
  CHECK(s.contexts[4].member_ids == std::vector<std::string>{"M5", "M1"});
  CHECK(s.functional.terms.size() == 10);
  for (const FunctionalTerm& t : s.functional.terms) {
    CHECK(t.coeff == Rat(1, 5));
    CHECK(t.outcomes[0] != t.outcomes[1]);
  }
  CHECK(s.corr_pairing.size() == 5);
  CHECK(validate(s).empty());
}

TEST_CASE("n-cycle rejects even and too-small sizes") {
  CHECK_THROWS_AS(build_n_cycle(4), ArgumentError);
  CHECK_THROWS_AS(build_n_cycle(2), ArgumentError);
  CHECK_THROWS_AS(build_n_cycle(1), ArgumentError);
  CHECK_THROWS_AS(build_n_cycle(0), ArgumentError);
  CHECK_THROWS_AS(build_n_cycle(-5), ArgumentError);
}

TEST_CASE("n-cycle coefficients sum to 2/n per context and 2 overall") {
  for (int n = 3; n <= 15; n += 2) {
    Scenario s = build_n_cycle(n);
    CHECK(validate(s).empty());
    std::map<int, Rat> per_context;
    Rat total = 0;
    for (const FunctionalTerm& t : s.functional.terms) {
      per_context[t.context_index] += t.coeff;
      total += t.coeff;
    }
    REQUIRE(per_context.size() == static_cast<size_t>(n));
    for (const auto& [ctx, sum] : per_context) CHECK(sum == Rat(2, n));
    CHECK(total == 2);
  }
}

TEST_CASE("joint outcome flattening is lexicographic and inverts") {
  Scenario s = build_n_cycle(3);
  const int pairs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int flat = 0; flat < 4; ++flat) {
    CHECK(flat_outcome_index(s, 0, pairs[flat]) == flat);
    CHECK(unflatten_outcome(s, 0, flat) ==
          std::vector<int>{pairs[flat][0], pairs[flat][1]});
  }
  CHECK(context_table_offsets(s) == std::vector<int>{0, 4, 8, 12});
}

TEST_CASE("validation flags every broken invariant with its code") {
  Scenario s = build_n_cycle(3);

  SUBCASE("duplicate measurement id") {
    s.measurements.push_back({"M1", 2});
    CHECK(has_code(validate(s), "measurement.duplicate-id"));
  }
  SUBCASE("bad outcome count") {
    s.measurements[0].outcome_count = 1;
    CHECK(has_code(validate(s), "measurement.outcome-count"));
  }
  SUBCASE("empty context") {
    s.contexts.push_back({});
    CHECK(has_code(validate(s), "context.empty"));
  }
  SUBCASE("unknown member") {
    s.contexts[0].member_ids[0] = "M9";
    CHECK(has_code(validate(s), "context.unknown-measurement"));
  }
  SUBCASE("repeated member") {
    s.contexts[0].member_ids = {"M1", "M1"};
    CHECK(has_code(validate(s), "context.duplicate-member"));
  }
  SUBCASE("measurement in no context") {
    s.measurements.push_back({"M9", 2});
    CHECK(has_code(validate(s), "measurement.unused"));
  }
  SUBCASE("term with bad context index") {
    s.functional.terms[0].context_index = 7;
    CHECK(has_code(validate(s), "functional.bad-context"));
  }
  SUBCASE("term with wrong tuple length") {
    s.functional.terms[0].outcomes = {0};
    CHECK(has_code(validate(s), "functional.bad-outcome"));
  }
  SUBCASE("term with out-of-range outcome") {
    s.functional.terms[0].outcomes = {0, 2};
    CHECK(has_code(validate(s), "functional.bad-outcome"));
  }
  SUBCASE("duplicate term key") {
    s.functional.terms.push_back(s.functional.terms[0]);
    CHECK(has_code(validate(s), "functional.duplicate-key"));
  }
  SUBCASE("empty pairing") {
    s.corr_pairing.clear();
    CHECK(has_code(validate(s), "corr-pairing.empty"));
  }
  SUBCASE("unknown paired id") {
    s.corr_pairing.push_back("M9");
    CHECK(has_code(validate(s), "corr-pairing.unknown-measurement"));
  }
  SUBCASE("repeated paired id") {
    s.corr_pairing.push_back("M1");
    CHECK(has_code(validate(s), "corr-pairing.duplicate"));
  }
}

TEST_CASE("serialization round-trips the n-cycles exactly") {
  for (int n = 3; n <= 15; n += 2) {
    Scenario s = build_n_cycle(n);
    Scenario back = load_scenario(serialize_scenario(s));
    CHECK(back == s);
  }
}

TEST_CASE("serialization round-trips 200 random scenarios") {
  gen::ScenarioGen generator(20240817);
  for (int i = 0; i < 200; ++i) {
    Scenario s = generator.next();
    REQUIRE(validate(s).empty());
    Scenario back = load_scenario(serialize_scenario(s));
    CHECK(back == s);
  }
}

TEST_CASE("loading reports parse errors with a location") {
  try {
    load_scenario("{\n  \"measurements\": [,]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 0);
  }
  CHECK_THROWS_AS(load_scenario("[]"), ParseError);
  CHECK_THROWS_AS(load_scenario("{}"), ParseError);
  CHECK_THROWS_AS(
      load_scenario("{\"measurements\": 3, \"contexts\": [], "
                    "\"functional\": {\"offset\": \"0\", \"terms\": []}, "
                    "\"corr_pairing\": []}"),
      ParseError);
}

TEST_CASE("loading reports invariant violations") {
  Scenario s = build_n_cycle(3);
  std::string text = serialize_scenario(s);
  // Point a context at an unknown measurement and reserialize by hand.
  std::string broken = text;
  auto pos = broken.find("\"M3\"");
  REQUIRE(pos != std::string::npos);
  broken.replace(pos, 4, "\"M9\"");
  try {
    load_scenario(broken);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(!e.violations.empty());
    CHECK(has_code(e.violations, "context.unknown-measurement"));
  }
}

TEST_CASE("measurement lookup by id") {
  Scenario s = build_n_cycle(3);
  CHECK(measurement_index(s, "M1") == 0);
  CHECK(measurement_index(s, "M3") == 2);
  CHECK(measurement_index(s, "nope") == -1);
}
