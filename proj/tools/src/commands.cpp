#include "ncineq_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ncineq/format.hpp"
#include "ncineq/inequality.hpp"
#include "ncineq/polytope.hpp"
#include "ncineq/quantum.hpp"
#include "ncineq/scenario_io.hpp"

namespace ncineq::cli {

namespace {

Scenario select_scenario(const RunConfig& c) {
  bool n_given = c.n_cycle != 0;
  bool path_given = !c.scenario_path.empty();
  if (n_given == path_given) {
    throw ArgumentError("exactly one of --n-cycle and --scenario is required");
  }
  return n_given ? build_n_cycle(c.n_cycle)
                 : load_scenario_file(c.scenario_path);
}

QuantumRealization select_realization(const RunConfig& c) {
  bool path_given = !c.realization_path.empty();
  if (c.kcbs == path_given) {
    throw ArgumentError("exactly one of --kcbs and --realization is required");
  }
  if (c.kcbs) {
    if (c.n_cycle == 0) {
      throw ArgumentError("--kcbs needs --n-cycle to fix the cycle length");
    }
    return kcbs_realization(c.n_cycle);
  }
  return load_realization_file(c.realization_path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

// Report sink: --out wins over the stream.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
  } else {
    write_file(c.out_path, text);
  }
}

// Diagnosis written when the derivation fails: the error plus whatever raw
// maxima the vertex list does provide.
std::string diagnosis_json(const std::string& code, const std::string& message,
                           const std::vector<Vertex>& vertices,
                           const Scenario& s) {
  bool have_det = false, have_ind = false;
  Rat r_det, r_ind, corr_ind;
  int n_det = 0, n_ind = 0;
  for (const VertexScores& score : score_vertices(vertices, s)) {
    if (score.kind == VertexKind::Deterministic) {
      if (!have_det || score.r > r_det) r_det = score.r;
      have_det = true;
      ++n_det;
    } else {
      if (!have_ind || score.r > r_ind) r_ind = score.r;
      if (!have_ind || score.corr > corr_ind) corr_ind = score.corr;
      have_ind = true;
      ++n_ind;
    }
  }

  nlohmann::ordered_json doc;
  doc["error"] = code;
  doc["message"] = message;
  if (have_det) doc["r_det"] = format_fraction(r_det);
  if (have_ind) {
    doc["r_ind"] = format_fraction(r_ind);
    doc["corr_ind"] = format_fraction(corr_ind);
  }
  doc["n_det"] = n_det;
  doc["n_ind"] = n_ind;
  return doc.dump(2) + "\n";
}

// Runs compute_parameters; on failure emits the diagnosis report and yields
// the exit code instead.
std::optional<InequalityParameters> parameters_or_diagnose(
    const std::vector<Vertex>& vertices, const Scenario& s, const RunConfig& c,
    std::ostream& out, int& exit_code) {
  try {
    return compute_parameters(vertices, s);
  } catch (const LogicalProofError& e) {
    emit(c, out, diagnosis_json("logical-proof", e.what(), vertices, s));
  } catch (const NotAStatisticalProofError& e) {
    emit(c, out,
         diagnosis_json("not-a-statistical-proof", e.what(), vertices, s));
  } catch (const DegenerateScenarioError& e) {
    emit(c, out, diagnosis_json("degenerate-scenario", e.what(), vertices, s));
  }
  exit_code = 2;
  return std::nullopt;
}

struct SweepRow {
  double v = 0;
  BoundEvaluation eval;
};

void append_row_csv(std::ostringstream& os, double v,
                    const BoundEvaluation& eval) {
  os << format_real(v) << ',' << format_real(eval.corr) << ','
     << format_real(eval.r) << ',' << format_real(eval.p_star) << ','
     << format_real(eval.rhs) << ',' << format_real(eval.margin) << ','
     << (eval.violated ? "true" : "false") << '\n';
}

int cmd_derive(const RunConfig& c, std::ostream& out) {
  if (c.format_given && c.format == OutputFormat::Csv) {
    throw ArgumentError(
        "derive reports are JSON; --format csv applies to evaluate and sweep");
  }
  Scenario s = select_scenario(c);
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  if (!c.vertices_path.empty()) {
    write_file(c.vertices_path, vertex_table_csv(vertices, s));
  }

  int exit_code = 0;
  auto params = parameters_or_diagnose(vertices, s, c, out, exit_code);
  if (!params) return exit_code;

  bool saturable = saturating_model_exists(vertices, *params, s);
  emit(c, out, derivation_report_json(*params, saturable));
  return 0;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  Scenario s = select_scenario(c);
  QuantumRealization q = select_realization(c);
  if (c.visibility_given) {
    q = depolarize(q, c.visibility);
  }
  RealizationStats stats = evaluate_realization(q, s);

  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  int exit_code = 0;
  auto params = parameters_or_diagnose(vertices, s, c, out, exit_code);
  if (!params) return exit_code;

  BoundEvaluation eval =
      evaluate_bound(*params, stats.corr, stats.r, stats.p_star);

  if (!c.dump_realization_path.empty()) {
    write_file(c.dump_realization_path, realization_json(q));
  }

  if (c.format_given && c.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "v,corr,r,p_star,rhs,margin,violated\n";
    append_row_csv(os, c.visibility_given ? c.visibility : 1.0, eval);
    emit(c, out, os.str());
    return 0;
  }

  std::ostringstream os;
  os << "{\n"
     << "  \"corr\": " << format_real(eval.corr) << ",\n"
     << "  \"r\": " << format_real(eval.r) << ",\n"
     << "  \"p_star\": " << format_real(eval.p_star) << ",\n"
     << "  \"rhs\": " << format_real(eval.rhs) << ",\n"
     << "  \"margin\": " << format_real(eval.margin) << ",\n"
     << "  \"violated\": " << (eval.violated ? "true" : "false");
  if (std::abs(eval.p_star - 1.0 / 3.0) <= 1e-9) {
    // At p* = 1/3 the bound takes its fixed-slope special form; report its
    // rhs alongside the general one.
    double xu_rhs = 1.0 - to_double(specialize_xu(*params)) *
                              (eval.r - to_double(params->r_det));
    os << ",\n  \"xu_rhs\": " << format_real(xu_rhs);
  }
  os << "\n}\n";
  emit(c, out, os.str());
  return 0;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  if (c.steps < 2) {
    throw ArgumentError("sweep needs --steps >= 2");
  }
  if (!(c.from >= 0.0 && c.from < c.to && c.to <= 1.0)) {
    throw ArgumentError("sweep needs 0 <= from < to <= 1");
  }

  Scenario s = select_scenario(c);
  QuantumRealization q = select_realization(c);
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  int exit_code = 0;
  auto params = parameters_or_diagnose(vertices, s, c, out, exit_code);
  if (!params) return exit_code;

  auto eval_at = [&](double v) {
    RealizationStats stats = evaluate_realization(depolarize(q, v), s);
    return evaluate_bound(*params, stats.corr, stats.r, stats.p_star);
  };

  std::vector<SweepRow> rows;
  rows.reserve(c.steps);
  for (int k = 0; k < c.steps; ++k) {
    double v = (k == c.steps - 1)
                   ? c.to
                   : c.from + (c.to - c.from) * k / (c.steps - 1);
    rows.push_back({v, eval_at(v)});
  }

  // Critical visibility: bisect the continuous depolarize-and-evaluate map
  // inside the first grid interval where the verdict flips.
  std::optional<double> v_star;
  for (size_t k = 0; k + 1 < rows.size(); ++k) {
    if (rows[k].eval.violated == rows[k + 1].eval.violated) continue;
    double lo = rows[k].v, hi = rows[k + 1].v;
    bool lo_violated = rows[k].eval.violated;
    while (hi - lo > 1e-6) {
      double mid = 0.5 * (lo + hi);
      if (eval_at(mid).violated == lo_violated) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    v_star = 0.5 * (lo + hi);
    break;
  }

  if (c.format_given && c.format == OutputFormat::Json) {
    std::ostringstream os;
    os << "{\n  \"rows\": [";
    for (size_t k = 0; k < rows.size(); ++k) {
      if (k) os << ',';
      const BoundEvaluation& e = rows[k].eval;
      os << "\n    {\"v\": " << format_real(rows[k].v)
         << ", \"corr\": " << format_real(e.corr)
         << ", \"r\": " << format_real(e.r)
         << ", \"p_star\": " << format_real(e.p_star)
         << ", \"rhs\": " << format_real(e.rhs)
         << ", \"margin\": " << format_real(e.margin)
         << ", \"violated\": " << (e.violated ? "true" : "false") << "}";
    }
    os << "\n  ],\n  \"v_star\": ";
    if (v_star) {
      os << format_real(*v_star);
    } else {
      os << "null";
    }
    os << "\n}\n";
    emit(c, out, os.str());
    return 0;
  }

  std::ostringstream os;
  os << "v,corr,r,p_star,rhs,margin,violated\n";
  for (const SweepRow& row : rows) {
    append_row_csv(os, row.v, row.eval);
  }
  if (v_star) {
    os << "# v_star = " << format_real(*v_star) << '\n';
  }
  emit(c, out, os.str());
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Derive:
        return cmd_derive(config, out);
      case Command::Evaluate:
        return cmd_evaluate(config, out);
      case Command::Sweep:
        return cmd_sweep(config, out);
    }
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ncineq::cli
