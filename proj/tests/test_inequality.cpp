#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncineq/inequality.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ncineq;

namespace {

struct CyclePolytope {
  Scenario scenario;
  std::vector<Vertex> vertices;
};

CyclePolytope cycle(int n) {
  Scenario s = build_n_cycle(n);
  return {s, enumerate_vertices(build_hrep(s))};
}

// The deterministic vertex of an n-cycle that assigns `bits` (bit i is the
// outcome of measurement i), built from the oracle construction.
Vertex deterministic_cycle_vertex(int n, std::uint32_t bits) {
  std::vector<Rat> coords(4 * n, Rat(0));
  for (int c = 0; c < n; ++c) {
    int a = (bits >> c) & 1;
    int b = (bits >> ((c + 1) % n)) & 1;
    coords[4 * c + 2 * a + b] = 1;
  }
  return {std::move(coords), VertexKind::Deterministic};
}

std::vector<Vertex> keep_if(const std::vector<Vertex>& vertices,
                            bool (*pred)(const Vertex&)) {
  std::vector<Vertex> kept;
  std::copy_if(vertices.begin(), vertices.end(), std::back_inserter(kept),
               pred);
  return kept;
}

}  // namespace

TEST_CASE("correlation and witness of hand-picked cycle vertices") {
  CyclePolytope p = cycle(5);

  SUBCASE("all-zero assignment: perfect correlation, zero witness") {
    Vertex v = deterministic_cycle_vertex(5, 0u);
    CHECK(corr_of_vertex(v, p.scenario) == Rat(1));
    CHECK(r_of_vertex(v, p.scenario) == Rat(0));
  }
  SUBCASE("alternating assignment reaches the deterministic maximum") {
    // 0,1,0,1,0 anticorrelates four of the five contexts.
    Vertex v = deterministic_cycle_vertex(5, 0b01010u);
    CHECK(corr_of_vertex(v, p.scenario) == Rat(1));
    CHECK(r_of_vertex(v, p.scenario) == Rat(4, 5));
  }
  SUBCASE("every deterministic vertex correlates perfectly") {
    for (const Vertex& v : p.vertices) {
      if (v.kind != VertexKind::Deterministic) continue;
      CHECK(corr_of_vertex(v, p.scenario) == Rat(1));
    }
  }
  SUBCASE("every indeterministic vertex sits at one half") {
    int seen = 0;
    for (const Vertex& v : p.vertices) {
      if (v.kind != VertexKind::Indeterministic) continue;
      CHECK(corr_of_vertex(v, p.scenario) == Rat(1, 2));
      ++seen;
    }
    CHECK(seen == 16);
  }
  SUBCASE("the all-anticorrelated vertex attains witness one") {
    bool found = false;
    for (const Vertex& v : p.vertices) {
      if (v.kind == VertexKind::Indeterministic &&
          r_of_vertex(v, p.scenario) == Rat(1)) {
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("empty pairing makes the correlation undefined") {
  CyclePolytope p = cycle(3);
  Scenario s = p.scenario;
  s.corr_pairing.clear();
  CHECK_THROWS_AS(corr_of_vertex(p.vertices[0], s), ArgumentError);
}

TEST_CASE("score_vertices lines up with the per-vertex functions") {
  CyclePolytope p = cycle(3);
  std::vector<VertexScores> scores = score_vertices(p.vertices, p.scenario);
  REQUIRE(scores.size() == p.vertices.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    CHECK(scores[i].vertex_index == static_cast<int>(i));
    CHECK(scores[i].corr == corr_of_vertex(p.vertices[i], p.scenario));
    CHECK(scores[i].r == r_of_vertex(p.vertices[i], p.scenario));
    CHECK(scores[i].kind == p.vertices[i].kind);
  }
}

TEST_CASE("cycle parameters are (n-1)/n, 1, 1/2 with the known counts") {
  for (int n : {3, 5, 7, 9}) {
    CAPTURE(n);
    CyclePolytope p = cycle(n);
    InequalityParameters params = compute_parameters(p.vertices, p.scenario);
    CHECK(params.r_det == Rat(n - 1, n));
    CHECK(params.r_ind == Rat(1));
    CHECK(params.corr_ind == Rat(1, 2));
    CHECK(params.n_det_vertices == (1 << n));
    CHECK(params.n_ind_vertices == (1 << (n - 1)));
  }
}

TEST_CASE("parameter extraction rejects defective vertex lists") {
  CyclePolytope p = cycle(5);

  SUBCASE("empty list") {
    CHECK_THROWS_AS(compute_parameters({}, p.scenario), ArgumentError);
  }
  SUBCASE("no deterministic vertex leaves only the logical bound") {
    std::vector<Vertex> only_ind = keep_if(p.vertices, [](const Vertex& v) {
      return v.kind == VertexKind::Indeterministic;
    });
    CHECK_THROWS_AS(compute_parameters(only_ind, p.scenario),
                    LogicalProofError);
    // The logical escape hatch still works on the same list.
    CHECK(logical_bound(only_ind, p.scenario) == Rat(1, 2));
  }
  SUBCASE("no indeterministic vertex") {
    std::vector<Vertex> only_det = keep_if(p.vertices, [](const Vertex& v) {
      return v.kind == VertexKind::Deterministic;
    });
    CHECK_THROWS_AS(compute_parameters(only_det, p.scenario),
                    DegenerateScenarioError);
  }
  SUBCASE("indeterministic vertices that fail to beat the deterministic ones") {
    // Drop the witness-one indeterministic vertices; the best survivor sits
    // at 3/5, below the deterministic 4/5.
    std::vector<Vertex> capped;
    for (const Vertex& v : p.vertices) {
      if (v.kind == VertexKind::Indeterministic &&
          r_of_vertex(v, p.scenario) > Rat(3, 5)) {
        continue;
      }
      capped.push_back(v);
    }
    CHECK_THROWS_WITH_AS(compute_parameters(capped, p.scenario),
                         doctest::Contains("3/5"), NotAStatisticalProofError);
  }
  SUBCASE("an indeterministic vertex with perfect correlation") {
    // A deterministic table mislabelled as indeterministic scores corr = 1,
    // which voids the inequality.
    std::vector<Vertex> tainted = p.vertices;
    Vertex fake = deterministic_cycle_vertex(5, 0u);
    fake.kind = VertexKind::Indeterministic;
    tainted.push_back(fake);
    CHECK_THROWS_AS(compute_parameters(tainted, p.scenario),
                    DegenerateScenarioError);
  }
}

TEST_CASE("a logical proof is a statistical failure too") {
  CyclePolytope p = cycle(3);
  std::vector<Vertex> only_ind = keep_if(p.vertices, [](const Vertex& v) {
    return v.kind == VertexKind::Indeterministic;
  });
  CHECK_THROWS_AS(compute_parameters(only_ind, p.scenario),
                  NotAStatisticalProofError);
}

TEST_CASE("bound evaluation for the 5-cycle") {
  CyclePolytope p = cycle(5);
  InequalityParameters params = compute_parameters(p.vertices, p.scenario);

  SUBCASE("pinned values") {
    CHECK(bound_rhs(params, 1.0 / 3.0, 1.0) ==
          doctest::Approx(0.8333333333333334).epsilon(1e-14));
    CHECK(bound_rhs(params, 1.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-14));
    // At the deterministic ceiling the subtracted term vanishes.
    CHECK(bound_rhs(params, 1.0 / 3.0, 0.8) == doctest::Approx(1.0));
    // Below it the bound exceeds one, by design.
    CHECK(bound_rhs(params, 1.0 / 3.0, 0.0) > 1.0);
  }
  SUBCASE("p_star outside the unit interval") {
    CHECK_THROWS_AS(bound_rhs(params, -0.1, 1.0), ArgumentError);
    CHECK_THROWS_AS(bound_rhs(params, 1.1, 1.0), ArgumentError);
  }
  SUBCASE("affine in the witness value") {
    for (double r1 : {0.1, 0.5, 0.9}) {
      for (double r2 : {0.2, 0.85, 1.0}) {
        double mid = bound_rhs(params, 0.4, (r1 + r2) / 2.0);
        double avg =
            (bound_rhs(params, 0.4, r1) + bound_rhs(params, 0.4, r2)) / 2.0;
        CHECK(mid == doctest::Approx(avg).epsilon(1e-12));
      }
    }
  }
  SUBCASE("tightening p_star can only lower the bound above r_det") {
    for (double r : {0.81, 0.9, 1.0}) {
      CHECK(bound_rhs(params, 0.5, r) <= bound_rhs(params, 0.2, r) + 1e-15);
    }
  }
  SUBCASE("ideal quantum point violates with the known margin") {
    double r = 0.8944271909999159;  // 2 / sqrt(5)
    BoundEvaluation eval = evaluate_bound(params, 1.0, r, 1.0 / 3.0);
    CHECK(eval.rhs == doctest::Approx(0.9213106741667368).epsilon(1e-14));
    CHECK(eval.margin == doctest::Approx(0.07868932583326316).epsilon(1e-12));
    CHECK(eval.violated);
  }
  SUBCASE("violation needs the witness to clear the deterministic ceiling") {
    CHECK_FALSE(evaluate_bound(params, 1.0, 0.8, 1.0 / 3.0).violated);
    CHECK_FALSE(evaluate_bound(params, 1.0, 0.5, 1.0 / 3.0).violated);
    CHECK(evaluate_bound(params, 1.0, 0.81, 1.0 / 3.0).violated);
  }
  SUBCASE("degenerate parameters are rejected") {
    InequalityParameters bad = params;
    bad.r_ind = bad.r_det;
    CHECK_THROWS_AS(bound_rhs(bad, 0.5, 1.0), NotAStatisticalProofError);
  }
}

TEST_CASE("every cycle vertex satisfies the bound exactly") {
  for (int n : {3, 5, 7}) {
    CAPTURE(n);
    CyclePolytope p = cycle(n);
    InequalityParameters params = compute_parameters(p.vertices, p.scenario);
    Rat p_star(1, 3);
    for (const VertexScores& score : score_vertices(p.vertices, p.scenario)) {
      // corr <= 1 - p (1 - ci) (r - rd) / (ri - rd), cleared of denominators.
      Rat lhs = (Rat(1) - score.corr) * (params.r_ind - params.r_det);
      Rat rhs = p_star * (Rat(1) - params.corr_ind) *
                (score.r - params.r_det);
      CHECK(lhs >= rhs);
    }
  }
}

TEST_CASE("logical bound of the cycles is one half") {
  for (int n : {3, 5, 7}) {
    CAPTURE(n);
    CyclePolytope p = cycle(n);
    CHECK(logical_bound(p.vertices, p.scenario) == Rat(1, 2));
  }
}

TEST_CASE("logical bound requires an indeterministic vertex") {
  CyclePolytope p = cycle(3);
  std::vector<Vertex> only_det = keep_if(p.vertices, [](const Vertex& v) {
    return v.kind == VertexKind::Deterministic;
  });
  CHECK_THROWS_AS(logical_bound(only_det, p.scenario),
                  DegenerateScenarioError);
}

TEST_CASE("noise threshold") {
  CyclePolytope p = cycle(5);
  InequalityParameters params = compute_parameters(p.vertices, p.scenario);

  SUBCASE("exact value at one third") {
    CHECK(noise_threshold(params, Rat(1, 3)) == Rat(5, 6));
  }
  SUBCASE("exact value at one") {
    CHECK(noise_threshold(params, Rat(1)) == Rat(1, 2));
  }
  SUBCASE("double overload agrees") {
    CHECK(noise_threshold(params, 1.0 / 3.0) ==
          doctest::Approx(0.8333333333333334).epsilon(1e-14));
  }
  SUBCASE("undefined at zero, rejected outside (0, 1]") {
    CHECK_THROWS_AS(noise_threshold(params, Rat(0)), ArgumentError);
    CHECK_THROWS_AS(noise_threshold(params, 0.0), ArgumentError);
    CHECK_THROWS_AS(noise_threshold(params, Rat(3, 2)), ArgumentError);
    CHECK_THROWS_AS(noise_threshold(params, -0.2), ArgumentError);
  }
}

TEST_CASE("the cycle bound is saturated by explicit vertices") {
  for (int n : {3, 5, 7}) {
    CAPTURE(n);
    CyclePolytope p = cycle(n);
    InequalityParameters params = compute_parameters(p.vertices, p.scenario);
    CHECK(saturating_model_exists(p.vertices, params, p.scenario));
  }
}

TEST_CASE("saturation fails when the extremal vertices are missing") {
  CyclePolytope p = cycle(5);
  InequalityParameters params = compute_parameters(p.vertices, p.scenario);
  std::vector<Vertex> trimmed;
  for (const Vertex& v : p.vertices) {
    if (v.kind == VertexKind::Indeterministic &&
        r_of_vertex(v, p.scenario) == params.r_ind) {
      continue;
    }
    trimmed.push_back(v);
  }
  CHECK_FALSE(saturating_model_exists(trimmed, params, p.scenario));
}

TEST_CASE("the one-third slope specializes to n/6") {
  for (int n : {3, 5, 7, 9}) {
    CAPTURE(n);
    CyclePolytope p = cycle(n);
    InequalityParameters params = compute_parameters(p.vertices, p.scenario);
    CHECK(specialize_xu(params) == Rat(n, 6));
  }
}

TEST_CASE("derivation report carries the exact constants") {
  CyclePolytope p = cycle(5);
  InequalityParameters params = compute_parameters(p.vertices, p.scenario);
  bool saturable = saturating_model_exists(p.vertices, params, p.scenario);
  std::string text = derivation_report_json(params, saturable);

  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');
  nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["r_det"] == "4/5");
  CHECK(doc["r_ind"] == "1");
  CHECK(doc["corr_ind"] == "1/2");
  CHECK(doc["n_det"] == 32);
  CHECK(doc["n_ind"] == 16);
  CHECK(doc["saturable"] == true);
  CHECK(doc["inequality"] == "corr <= 1 - p_star * (5/2) * (r - 4/5)");

  // Byte-identical on repeat.
  CHECK(derivation_report_json(params, saturable) == text);
}

namespace {

// Checks everything compute_parameters promises about its output against the
// vertex list it was fed.
void check_parameter_invariants(const Scenario& s,
                                const std::vector<Vertex>& vertices,
                                const InequalityParameters& params) {
  CHECK(params.r_ind > params.r_det);
  CHECK(params.corr_ind < 1);
  CHECK(params.n_det_vertices + params.n_ind_vertices ==
        static_cast<int>(vertices.size()));
  CHECK(params.n_det_vertices > 0);
  CHECK(params.n_ind_vertices > 0);

  // The deterministic maximum agrees with exhaustive assignment search.
  CHECK(params.r_det == oracle::max_witness_deterministic(s));

  // No vertex beats the bound at full confusability.
  for (const VertexScores& score : score_vertices(vertices, s)) {
    Rat lhs = (Rat(1) - score.corr) * (params.r_ind - params.r_det);
    Rat rhs = (Rat(1) - params.corr_ind) * (score.r - params.r_det);
    CHECK(lhs >= rhs);
  }
}

}  // namespace

TEST_CASE("random scenarios keep the parameter invariants") {
  gen::ScenarioGen generator(411);
  for (int trial = 0; trial < 200; ++trial) {
    Scenario s = generator.next();
    CAPTURE(trial);
    std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
    InequalityParameters params;
    try {
      params = compute_parameters(vertices, s);
    } catch (const NotAStatisticalProofError&) {
      continue;
    } catch (const DegenerateScenarioError&) {
      continue;
    }
    // Unstructured functionals rarely favour indeterminism; when one does,
    // the full invariant set must still hold.
    check_parameter_invariants(s, vertices, params);
  }
}

TEST_CASE("random frustrated functionals on cycles stay analysable") {
  // Each trial rewards one diagonal per context, with an odd number of
  // anticorrelated contexts. No assignment satisfies every context, but one
  // indeterministic vertex matches them all, so the derivation always goes
  // through and the constants are predictable.
  std::mt19937 rng(7245);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int analysed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    int n = pick(0, 1) == 0 ? 3 : 5;
    bool with_noise = trial % 2 == 1;

    Scenario s = build_n_cycle(n);
    s.functional.offset = 0;
    s.functional.terms.clear();

    std::vector<int> anti(n);
    int parity = 0;
    for (int c = 0; c < n; ++c) {
      anti[c] = pick(0, 1);
      parity ^= anti[c];
    }
    if (parity == 0) anti[pick(0, n - 1)] ^= 1;

    Rat total = 0, min_weight = 0;
    std::set<std::pair<int, int>> used;
    for (int c = 0; c < n; ++c) {
      Rat weight(pick(1, 4), pick(1, 4));
      total += weight;
      if (c == 0 || weight < min_weight) min_weight = weight;
      std::vector<int> first = anti[c] ? std::vector<int>{0, 1}
                                       : std::vector<int>{0, 0};
      std::vector<int> second = anti[c] ? std::vector<int>{1, 0}
                                        : std::vector<int>{1, 1};
      used.insert({c, flat_outcome_index(s, c, first)});
      used.insert({c, flat_outcome_index(s, c, second)});
      s.functional.terms.push_back({c, first, weight});
      s.functional.terms.push_back({c, second, weight});
    }
    if (with_noise) {
      int extra = pick(1, 3);
      for (int t = 0; t < extra; ++t) {
        int c = pick(0, n - 1);
        int flat = pick(0, 3);
        if (!used.insert({c, flat}).second) continue;
        s.functional.terms.push_back(
            {c, unflatten_outcome(s, c, flat),
             Rat(pick(0, 1) == 0 ? -1 : 1, pick(8, 12))});
      }
    }

    std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
    InequalityParameters params;
    try {
      params = compute_parameters(vertices, s);
    } catch (const NotAStatisticalProofError&) {
      CHECK(with_noise);  // the noise-free construction cannot fail
      continue;
    }
    ++analysed;
    check_parameter_invariants(s, vertices, params);
    CHECK(params.corr_ind == Rat(1, 2));
    if (!with_noise) {
      // One context must fail under any assignment; the cheapest one does.
      CHECK(params.r_det == total - min_weight);
      CHECK(params.r_ind == total);
    }
  }
  CHECK(analysed >= 150);
}
