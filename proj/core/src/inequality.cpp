#include "ncineq/inequality.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ncineq {

Rat corr_of_vertex(const Vertex& v, const Scenario& s) {
  if (s.corr_pairing.empty()) {
    throw ArgumentError("corr_pairing is empty, correlation average undefined");
  }
  Rat total = 0;
  for (const std::string& id : s.corr_pairing) {
    int context = -1;
    for (size_t c = 0; c < s.contexts.size(); ++c) {
      const auto& members = s.contexts[c].member_ids;
      if (std::find(members.begin(), members.end(), id) != members.end()) {
        context = static_cast<int>(c);
        break;
      }
    }
    if (context < 0) {
      throw ArgumentError("paired measurement '" + id +
                          "' appears in no context");
    }
    // Marginal consistency makes the choice of context irrelevant.
    std::vector<Rat> marginal = marginal_response(v, s, id, context);
    total += *std::max_element(marginal.begin(), marginal.end());
  }
  return total / static_cast<int>(s.corr_pairing.size());
}

Rat r_of_vertex(const Vertex& v, const Scenario& s) {
  std::vector<int> offsets = context_table_offsets(s);
  Rat value = s.functional.offset;
  for (const FunctionalTerm& term : s.functional.terms) {
    int flat = flat_outcome_index(s, term.context_index, term.outcomes);
    value += term.coeff * v.coords.at(offsets[term.context_index] + flat);
  }
  return value;
}

std::vector<VertexScores> score_vertices(const std::vector<Vertex>& vertices,
                                         const Scenario& s) {
  std::vector<VertexScores> scores;
  scores.reserve(vertices.size());
  for (size_t i = 0; i < vertices.size(); ++i) {
    scores.push_back({static_cast<int>(i), corr_of_vertex(vertices[i], s),
                      r_of_vertex(vertices[i], s), vertices[i].kind});
  }
  return scores;
}

InequalityParameters compute_parameters(const std::vector<Vertex>& vertices,
                                        const Scenario& s) {
  if (vertices.empty()) {
    throw ArgumentError("vertex list is empty");
  }

  InequalityParameters params;
  bool have_det = false, have_ind = false;
  for (const VertexScores& score : score_vertices(vertices, s)) {
    if (score.kind == VertexKind::Deterministic) {
      if (!have_det || score.r > params.r_det) params.r_det = score.r;
      have_det = true;
      ++params.n_det_vertices;
    } else {
      if (!have_ind || score.r > params.r_ind) params.r_ind = score.r;
      if (!have_ind || score.corr > params.corr_ind) {
        params.corr_ind = score.corr;
      }
      have_ind = true;
      ++params.n_ind_vertices;
    }
  }

  if (!have_det) {
    throw LogicalProofError(
        "no deterministic vertex exists; the noncontextual bound is the "
        "logical one, see logical_bound");
  }
  if (!have_ind) {
    throw DegenerateScenarioError(
        "no indeterministic vertex exists; the scenario admits no inequality "
        "of this form");
  }
  if (params.r_ind <= params.r_det) {
    throw NotAStatisticalProofError(
        "indeterministic vertices do not outperform deterministic ones: "
        "r_ind = " +
        format_fraction(params.r_ind) +
        " <= r_det = " + format_fraction(params.r_det));
  }
  if (params.corr_ind >= 1) {
    throw DegenerateScenarioError(
        "an indeterministic vertex reaches corr = 1; the pairing misses the "
        "indeterminism and the inequality would be trivial");
  }
  return params;
}

double bound_rhs(const InequalityParameters& params, double p_star, double r) {
  if (!(p_star >= 0.0 && p_star <= 1.0)) {
    throw ArgumentError("p_star must lie in [0, 1]");
  }
  if (params.r_ind <= params.r_det) {
    throw NotAStatisticalProofError("parameters have r_ind <= r_det");
  }
  double slope = (1.0 - to_double(params.corr_ind)) /
                 to_double(params.r_ind - params.r_det);
  return 1.0 - p_star * slope * (r - to_double(params.r_det));
}

BoundEvaluation evaluate_bound(const InequalityParameters& params, double corr,
                               double r, double p_star) {
  BoundEvaluation eval;
  eval.corr = corr;
  eval.r = r;
  eval.p_star = p_star;
  eval.rhs = bound_rhs(params, p_star, r);
  eval.margin = corr - eval.rhs;
  eval.violated = eval.margin > kViolationTolerance;
  return eval;
}

Rat logical_bound(const std::vector<Vertex>& vertices, const Scenario& s) {
  bool found = false;
  Rat best = 0;
  for (const Vertex& v : vertices) {
    if (v.kind != VertexKind::Indeterministic) continue;
    Rat corr = corr_of_vertex(v, s);
    if (!found || corr > best) best = corr;
    found = true;
  }
  if (!found) {
    throw DegenerateScenarioError(
        "no indeterministic vertex exists, logical bound undefined");
  }
  return best;
}

Rat noise_threshold(const InequalityParameters& params, const Rat& p_star) {
  if (p_star == 0) {
    throw ArgumentError("noise threshold is undefined at p_star = 0");
  }
  if (p_star < 0 || p_star > 1) {
    throw ArgumentError("p_star must lie in (0, 1]");
  }
  return Rat(1) - p_star * (Rat(1) - params.corr_ind);
}

double noise_threshold(const InequalityParameters& params, double p_star) {
  if (p_star == 0.0) {
    throw ArgumentError("noise threshold is undefined at p_star = 0");
  }
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw ArgumentError("p_star must lie in (0, 1]");
  }
  return 1.0 - p_star * (1.0 - to_double(params.corr_ind));
}

bool saturating_model_exists(const std::vector<Vertex>& vertices,
                             const InequalityParameters& params,
                             const Scenario& s) {
  bool det_max = false, ind_max = false;
  for (const VertexScores& score : score_vertices(vertices, s)) {
    if (score.kind == VertexKind::Deterministic) {
      if (score.r == params.r_det && score.corr == 1) det_max = true;
    } else {
      if (score.r == params.r_ind && score.corr == params.corr_ind) {
        ind_max = true;
      }
    }
  }
  return det_max && ind_max;
}

Rat specialize_xu(const InequalityParameters& params) {
  if (params.r_ind <= params.r_det) {
    throw NotAStatisticalProofError("parameters have r_ind <= r_det");
  }
  return Rat(1, 3) * (Rat(1) - params.corr_ind) /
         (params.r_ind - params.r_det);
}

std::string derivation_report_json(const InequalityParameters& params,
                                   bool saturable) {
  Rat slope =
      (Rat(1) - params.corr_ind) / (params.r_ind - params.r_det);
  std::string inequality = "corr <= 1 - p_star * (" + format_fraction(slope) +
                           ") * (r - " + format_fraction(params.r_det) + ")";

  nlohmann::ordered_json doc;
  doc["r_det"] = format_fraction(params.r_det);
  doc["r_ind"] = format_fraction(params.r_ind);
  doc["corr_ind"] = format_fraction(params.corr_ind);
  doc["n_det"] = params.n_det_vertices;
  doc["n_ind"] = params.n_ind_vertices;
  doc["saturable"] = saturable;
  doc["inequality"] = inequality;
  return doc.dump(2) + "\n";
}

}  // namespace ncineq
