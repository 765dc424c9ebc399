#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ncineq/polytope.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ncineq;

namespace {

// A single binary measurement in a single context.
Scenario single_binary() {
  Scenario s;
  s.measurements = {{"Q", 2}};
  s.contexts = {{{"Q"}}};
  s.functional.terms = {{0, {0}, Rat(1)}};
  s.corr_pairing = {"Q"};
  return s;
}

Rat row_value(const LinearRow& row, const std::vector<Rat>& x) {
  Rat value = 0;
  for (size_t j = 0; j < x.size(); ++j) value += row.coeffs[j] * x[j];
  return value;
}

}  // namespace

TEST_CASE("halfspace description has the expected shape") {
  SUBCASE("5-cycle") {
    HRep h = build_hrep(build_n_cycle(5));
    CHECK(h.columns == 20);
    CHECK(h.equalities.size() == 15);    // 5 normalization + 10 marginal
    CHECK(h.inequalities.size() == 20);  // nonnegativity
  }
  SUBCASE("3-cycle") {
    HRep h = build_hrep(build_n_cycle(3));
    CHECK(h.columns == 12);
    CHECK(h.equalities.size() == 9);  // 3 + 6
    CHECK(h.inequalities.size() == 12);
  }
  SUBCASE("single binary measurement") {
    HRep h = build_hrep(single_binary());
    CHECK(h.columns == 2);
    CHECK(h.equalities.size() == 1);
    CHECK(h.inequalities.size() == 2);
  }
}

TEST_CASE("column addressing follows the flat layout") {
  Scenario s = build_n_cycle(5);
  HRep h = build_hrep(s);
  CHECK(h.column_of(0, 0) == 0);
  CHECK(h.column_of(0, 3) == 3);
  CHECK(h.column_of(1, 0) == 4);
  CHECK(h.column_of(4, 3) == 19);
}

TEST_CASE("vertex counts for the small scenarios") {
  CHECK(enumerate_vertices(build_hrep(build_n_cycle(3))).size() == 12);
  CHECK(enumerate_vertices(build_hrep(build_n_cycle(5))).size() == 48);
  CHECK(enumerate_vertices(build_hrep(single_binary())).size() == 2);
}

TEST_CASE("single measurement vertices are the two point masses") {
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(single_binary()));
  REQUIRE(vertices.size() == 2);
  CHECK(vertices[0].coords == std::vector<Rat>{0, 1});
  CHECK(vertices[1].coords == std::vector<Rat>{1, 0});
  CHECK(vertices[0].kind == VertexKind::Deterministic);
  CHECK(vertices[1].kind == VertexKind::Deterministic);
}

TEST_CASE("enumeration matches the explicit cycle construction up to n = 7") {
  for (int n : {3, 5, 7}) {
    CAPTURE(n);
    std::vector<Vertex> vertices =
        enumerate_vertices(build_hrep(build_n_cycle(n)));
    std::vector<std::vector<Rat>> expected = oracle::ncycle_vertex_tables(n);
    REQUIRE(vertices.size() == expected.size());
    for (size_t i = 0; i < vertices.size(); ++i) {
      CHECK(vertices[i].coords == expected[i]);
    }
  }
}

TEST_CASE("cycle vertex census and indeterministic structure") {
  for (int n : {3, 5}) {
    CAPTURE(n);
    Scenario s = build_n_cycle(n);
    std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
    int det = 0, ind = 0;
    for (const Vertex& v : vertices) {
      if (v.kind == VertexKind::Deterministic) {
        ++det;
        continue;
      }
      ++ind;
      // Even-weight marginals everywhere, and each context supported either
      // on the correlated or on the anticorrelated outcome pair.
      int anticorrelated = 0;
      for (int c = 0; c < n; ++c) {
        for (const std::string& id : s.contexts[c].member_ids) {
          CHECK(marginal_response(v, s, id, c) ==
                std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
        }
        const Rat* table = &v.coords[4 * c];
        bool corr = table[0] == Rat(1, 2) && table[3] == Rat(1, 2) &&
                    table[1] == 0 && table[2] == 0;
        bool anti = table[1] == Rat(1, 2) && table[2] == Rat(1, 2) &&
                    table[0] == 0 && table[3] == 0;
        CHECK((corr || anti));
        if (anti) ++anticorrelated;
      }
      CHECK(anticorrelated % 2 == 1);
    }
    CHECK(det == (1 << n));
    CHECK(ind == (1 << (n - 1)));
  }
}

TEST_CASE("classification is the 0/1 test") {
  Vertex det{{Rat(1), Rat(0), Rat(0), Rat(1)}, VertexKind::Deterministic};
  CHECK(classify_vertex(det) == VertexKind::Deterministic);
  Vertex ind{{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)},
             VertexKind::Deterministic};
  CHECK(classify_vertex(ind) == VertexKind::Indeterministic);
}

TEST_CASE("marginals require membership") {
  Scenario s = build_n_cycle(5);
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  CHECK_THROWS_AS(marginal_response(vertices[0], s, "M3", 0), ArgumentError);
}

TEST_CASE("every vertex satisfies every constraint on 200 random scenarios") {
  gen::ScenarioGen generator(911);
  for (int i = 0; i < 200; ++i) {
    Scenario s = generator.next();
    REQUIRE(validate(s).empty());
    HRep h = build_hrep(s);
    std::vector<Vertex> vertices = enumerate_vertices(h);
    REQUIRE(!vertices.empty());

    for (size_t k = 0; k < vertices.size(); ++k) {
      const Vertex& v = vertices[k];
      CAPTURE(i);
      CAPTURE(k);
      for (const LinearRow& eq : h.equalities) {
        CHECK(row_value(eq, v.coords) == eq.rhs);
      }
      for (const LinearRow& ineq : h.inequalities) {
        CHECK(row_value(ineq, v.coords) >= ineq.rhs);
      }
      for (const Rat& entry : v.coords) {
        CHECK(entry >= 0);
        CHECK(entry <= 1);
      }

      // Classification agrees with the 0/1 test, and marginals agree across
      // all contexts sharing a measurement.
      CHECK(v.kind == classify_vertex(v));
      for (const Measurement& m : s.measurements) {
        std::vector<std::vector<Rat>> seen;
        for (size_t c = 0; c < s.contexts.size(); ++c) {
          const auto& members = s.contexts[c].member_ids;
          if (std::find(members.begin(), members.end(), m.id) == members.end())
            continue;
          seen.push_back(
              marginal_response(v, s, m.id, static_cast<int>(c)));
        }
        for (size_t j = 1; j < seen.size(); ++j) CHECK(seen[j] == seen[0]);
      }
    }

    // Sorted strictly ascending means deduplicated output.
    for (size_t k = 1; k < vertices.size(); ++k) {
      CHECK(vertices[k - 1].coords < vertices[k].coords);
    }
  }
}

TEST_CASE("vertex dump is one labelled line per table entry") {
  Scenario s = single_binary();
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  std::string csv = vertex_table_csv(vertices, s);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "vertex,context,outcome_tuple,value_num,value_den,kind");
  std::getline(lines, line);
  CHECK(line == "0,0,0,0,1,deterministic");
  std::getline(lines, line);
  CHECK(line == "0,0,1,1,1,deterministic");
  std::getline(lines, line);
  CHECK(line == "1,0,0,1,1,deterministic");
  std::getline(lines, line);
  CHECK(line == "1,0,1,0,1,deterministic");
  CHECK(!std::getline(lines, line));
}

TEST_CASE("pair outcome tuples are colon-joined in the dump") {
  Scenario s = build_n_cycle(3);
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  std::string csv = vertex_table_csv(vertices, s);
  CHECK(csv.find(",0:1,") != std::string::npos);
  CHECK(csv.find(",1:0,") != std::string::npos);
}
