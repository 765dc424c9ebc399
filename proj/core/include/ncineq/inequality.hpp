#pragma once

#include <string>
#include <vector>

#include "ncineq/polytope.hpp"
#include "ncineq/rational.hpp"
#include "ncineq/scenario.hpp"

namespace ncineq {

// Exact per-vertex values of the two competing quantities: the
// source-measurement correlation average and the witness functional.
struct VertexScores {
  int vertex_index = 0;
  Rat corr;
  Rat r;
  VertexKind kind = VertexKind::Deterministic;
};

// The scenario-dependent constants of the derived inequality
//   corr <= 1 - p_star (1 - corr_ind) (r - r_det) / (r_ind - r_det).
// Invariants: r_ind > r_det and corr_ind < 1; compute_parameters enforces
// both.
struct InequalityParameters {
  Rat r_det;
  Rat r_ind;
  Rat corr_ind;
  int n_det_vertices = 0;
  int n_ind_vertices = 0;
};

// One evaluation of the inequality against operational values.
struct BoundEvaluation {
  double corr = 0;
  double r = 0;
  double p_star = 0;
  double rhs = 0;
  double margin = 0;  // corr - rhs
  bool violated = false;
};

// Margins above this count as a violation; at or below is treated as
// saturation within numerical noise.
inline constexpr double kViolationTolerance = 1e-12;

// Correlation average of a vertex: mean over the paired measurements of the
// largest marginal-response probability (the best the source can do when its
// outcome distribution is tuned to the vertex).
Rat corr_of_vertex(const Vertex& v, const Scenario& s);

// Witness functional applied to the vertex's tables.
Rat r_of_vertex(const Vertex& v, const Scenario& s);

std::vector<VertexScores> score_vertices(const std::vector<Vertex>& vertices,
                                         const Scenario& s);

// Scans the vertex list for the inequality constants. Throws
// LogicalProofError when no deterministic vertex exists (the bound is then
// logical_bound), DegenerateScenarioError when no indeterministic vertex
// exists or when corr_ind reaches 1, and NotAStatisticalProofError when
// r_ind <= r_det.
InequalityParameters compute_parameters(const std::vector<Vertex>& vertices,
                                        const Scenario& s);

// Right-hand side of the inequality at the given p_star and witness value r.
// r is deliberately not clamped: values below r_det simply give rhs > 1.
// Requires p_star in [0, 1].
double bound_rhs(const InequalityParameters& params, double p_star, double r);

// Full evaluation; violated iff margin exceeds kViolationTolerance.
BoundEvaluation evaluate_bound(const InequalityParameters& params, double corr,
                               double r, double p_star);

// Largest correlation average any indeterministic vertex reaches. For
// scenarios with no deterministic vertices this is the noncontextual bound
// itself. Throws DegenerateScenarioError if no indeterministic vertex exists.
Rat logical_bound(const std::vector<Vertex>& vertices, const Scenario& s);

// Correlation floor 1 - p_star (1 - corr_ind): above it the inequality can
// still be violated by some witness value, at or below it cannot. Undefined
// at p_star = 0 (throws ArgumentError).
Rat noise_threshold(const InequalityParameters& params, const Rat& p_star);
double noise_threshold(const InequalityParameters& params, double p_star);

// True iff the bound is tight: some deterministic vertex attains (r_det,
// corr = 1) and some indeterministic vertex attains (r_ind, corr_ind), so a
// mixture traces the whole boundary line.
bool saturating_model_exists(const std::vector<Vertex>& vertices,
                             const InequalityParameters& params,
                             const Scenario& s);

// Slope of the bound in r at p_star = 1/3, as an exact rational:
// (1/3) (1 - corr_ind) / (r_ind - r_det). Equals n/6 for the odd n-cycle.
Rat specialize_xu(const InequalityParameters& params);

// Derivation report as JSON: the exact constants, vertex counts,
// saturability, and the inequality with the fractions substituted in.
std::string derivation_report_json(const InequalityParameters& params,
                                   bool saturable);

}  // namespace ncineq
