#include "ncineq/quantum.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ncineq/format.hpp"

namespace ncineq {

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint().eval());
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Structural invariants of a realization: operator shapes, hermiticity,
// positivity, completeness of each POVM, source normalization, and the
// agreement of every context POVM's marginals with its members' effects.
std::vector<Violation> validate_realization(const QuantumRealization& q) {
  std::vector<Violation> out;
  auto flag = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };
  const int d = q.dim;
  if (d < 1) {
    flag("realization.dim", "dimension must be at least 1");
    return out;
  }
  Matrix identity = Matrix::Identity(d, d);

  auto check_effect = [&](const Matrix& e, const std::string& where) {
    if (e.rows() != d || e.cols() != d) {
      flag("effect.shape", where + " is not " + std::to_string(d) + "x" +
                               std::to_string(d));
      return false;
    }
    if (hermiticity_defect(e) > kStructuralTolerance) {
      flag("effect.not-hermitian", where + " deviates from hermiticity by " +
                                       format_real(hermiticity_defect(e)));
      return false;
    }
    if (min_eigenvalue(e) < -kStructuralTolerance) {
      flag("effect.not-psd", where + " has eigenvalue " +
                                 format_real(min_eigenvalue(e)));
      return false;
    }
    return true;
  };

  for (const QuantumMeasurement& m : q.measurements) {
    if (m.effects.empty()) {
      flag("measurement.empty", "measurement '" + m.id + "' has no effects");
      continue;
    }
    Matrix sum = Matrix::Zero(d, d);
    bool ok = true;
    for (size_t k = 0; k < m.effects.size(); ++k) {
      ok = check_effect(m.effects[k], "measurement '" + m.id + "' effect " +
                                          std::to_string(k)) &&
           ok;
      if (ok) sum += m.effects[k];
    }
    if (ok && max_abs(sum - identity) > kStructuralTolerance) {
      flag("measurement.not-complete",
           "effects of '" + m.id + "' sum off identity by " +
               format_real(max_abs(sum - identity)));
    }
  }

  if (q.context_members.size() != q.context_povms.size()) {
    flag("context.count", "context_members and context_povms disagree");
    return out;
  }
  for (size_t c = 0; c < q.context_povms.size(); ++c) {
    const auto& members = q.context_members[c];
    const auto& povm = q.context_povms[c];
    std::string where = "context " + std::to_string(c);
    int expected = 1;
    bool members_ok = !members.empty();
    for (int idx : members) {
      if (idx < 0 || idx >= static_cast<int>(q.measurements.size())) {
        flag("context.bad-member", where + " references measurement " +
                                       std::to_string(idx));
        members_ok = false;
      } else {
        expected *= static_cast<int>(q.measurements[idx].effects.size());
      }
    }
    if (!members_ok) continue;
    if (static_cast<int>(povm.size()) != expected) {
      flag("context.povm-size", where + " has " + std::to_string(povm.size()) +
                                    " joint effects, expected " +
                                    std::to_string(expected));
      continue;
    }
    Matrix sum = Matrix::Zero(d, d);
    bool ok = true;
    for (size_t g = 0; g < povm.size(); ++g) {
      ok = check_effect(povm[g],
                        where + " joint effect " + std::to_string(g)) &&
           ok;
      if (ok) sum += povm[g];
    }
    if (!ok) continue;
    if (max_abs(sum - identity) > kStructuralTolerance) {
      flag("context.povm-not-complete",
           where + " joint effects sum off identity by " +
               format_real(max_abs(sum - identity)));
    }

    // Marginal over the other members must reproduce each member's effect.
    int stride = expected;
    for (size_t j = 0; j < members.size(); ++j) {
      const QuantumMeasurement& m = q.measurements[members[j]];
      int count = static_cast<int>(m.effects.size());
      stride /= count;
      for (int outcome = 0; outcome < count; ++outcome) {
        Matrix marginal = Matrix::Zero(d, d);
        for (int flat = 0; flat < expected; ++flat) {
          if ((flat / stride) % count == outcome) marginal += povm[flat];
        }
        double dev = max_abs(marginal - m.effects[outcome]);
        if (dev > kStructuralTolerance) {
          flag("context.marginal",
               where + " marginal of '" + m.id + "' outcome " +
                   std::to_string(outcome) + " deviates by " + format_real(dev));
        }
      }
    }
  }

  auto check_source = [&](const SourceEnsemble& src) {
    if (src.branches.empty()) {
      flag("source.empty", "source '" + src.id + "' has no branches");
      return;
    }
    double total = 0;
    for (size_t k = 0; k < src.branches.size(); ++k) {
      const SourceBranch& br = src.branches[k];
      std::string where =
          "source '" + src.id + "' branch " + std::to_string(k);
      if (br.probability < -kComparativeTolerance) {
        flag("source.probability", where + " has negative probability");
      }
      total += br.probability;
      if (br.state.rows() != d || br.state.cols() != d) {
        flag("source.state-shape", where + " state is not " +
                                       std::to_string(d) + "x" +
                                       std::to_string(d));
        continue;
      }
      if (hermiticity_defect(br.state) > kStructuralTolerance) {
        flag("source.state-not-hermitian", where + " state is not hermitian");
        continue;
      }
      if (min_eigenvalue(br.state) < -kStructuralTolerance) {
        flag("source.state-not-psd", where + " state has eigenvalue " +
                                         format_real(min_eigenvalue(br.state)));
      }
      double trace_dev = std::abs(br.state.trace().real() - 1.0) +
                         std::abs(br.state.trace().imag());
      if (trace_dev > kStructuralTolerance) {
        flag("source.state-trace", where + " state trace deviates by " +
                                       format_real(trace_dev));
      }
    }
    if (std::abs(total - 1.0) > kComparativeTolerance) {
      flag("source.probabilities", "source '" + src.id +
                                       "' probabilities sum to " +
                                       format_real(total));
    }
  };
  for (const SourceEnsemble& src : q.sources) check_source(src);
  if (!q.special_source.branches.empty() || !q.sources.empty()) {
    check_source(q.special_source);
  }

  return out;
}

Matrix ensemble_average(const SourceEnsemble& src, int dim) {
  Matrix avg = Matrix::Zero(dim, dim);
  for (const SourceBranch& br : src.branches) {
    avg += br.probability * br.state;
  }
  return avg;
}

}  // namespace

QuantumRealization kcbs_realization(int n) {
  if (n < 5 || n % 2 == 0) {
    throw ArgumentError("cycle realization requires odd n >= 5, got " +
                        std::to_string(n));
  }

  // Unit vectors on a cone about the z axis, cone angle fixed by
  // cos^2(theta) = cos(pi/n) / (1 + cos(pi/n)) and azimuths stepping by
  // (n-1) pi / n, which makes neighbouring vectors (cyclically) orthogonal
  // when n is odd.
  const double c = std::cos(M_PI / n);
  const double cos_theta = std::sqrt(c / (1.0 + c));
  const double sin_theta = std::sqrt(1.0 / (1.0 + c));

  QuantumRealization q;
  q.dim = 3;
  Matrix identity = Matrix::Identity(3, 3);

  std::vector<Matrix> projectors;
  for (int i = 1; i <= n; ++i) {
    double phi = (static_cast<double>(n - 1) / n) * M_PI * i;
    Eigen::Vector3cd l(sin_theta * std::cos(phi), sin_theta * std::sin(phi),
                       cos_theta);
    projectors.push_back(l * l.adjoint());
  }

  for (int i = 0; i < n; ++i) {
    q.measurements.push_back({"M" + std::to_string(i + 1),
                              {projectors[i], identity - projectors[i]}});
  }
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    q.context_members.push_back({i, j});
    q.context_povms.push_back(
        joint_povm_from_commuting(q.measurements[i], q.measurements[j]));
  }

  for (int i = 0; i < n; ++i) {
    SourceEnsemble src;
    src.id = "S" + std::to_string(i + 1);
    src.branches.push_back({1.0 / 3.0, projectors[i]});
    src.branches.push_back({2.0 / 3.0, (identity - projectors[i]) / 2.0});
    q.sources.push_back(std::move(src));
  }
  Eigen::Vector3cd psi(0, 0, 1);
  Matrix psi_proj = psi * psi.adjoint();
  q.special_source.id = "S*";
  q.special_source.branches.push_back({1.0 / 3.0, psi_proj});
  q.special_source.branches.push_back({2.0 / 3.0, (identity - psi_proj) / 2.0});
  return q;
}

std::vector<Matrix> joint_povm_from_commuting(const QuantumMeasurement& a,
                                              const QuantumMeasurement& b) {
  for (size_t i = 0; i < a.effects.size(); ++i) {
    for (size_t j = 0; j < b.effects.size(); ++j) {
      double defect =
          max_abs(a.effects[i] * b.effects[j] - b.effects[j] * a.effects[i]);
      if (defect > kStructuralTolerance) {
        throw IncompatibleMeasurementsError(
            "effects " + std::to_string(i) + " of '" + a.id + "' and " +
            std::to_string(j) + " of '" + b.id + "' do not commute (defect " +
            format_real(defect) + ")");
      }
    }
  }
  std::vector<Matrix> joint;
  joint.reserve(a.effects.size() * b.effects.size());
  for (const Matrix& ea : a.effects) {
    for (const Matrix& eb : b.effects) {
      joint.push_back(ea * eb);
    }
  }
  return joint;
}

RealizationStats evaluate_realization(const QuantumRealization& q,
                                      const Scenario& s) {
  if (q.measurements.size() != s.measurements.size()) {
    throw ArgumentError("realization has " +
                        std::to_string(q.measurements.size()) +
                        " measurements, scenario has " +
                        std::to_string(s.measurements.size()));
  }
  for (size_t i = 0; i < s.measurements.size(); ++i) {
    if (q.measurements[i].id != s.measurements[i].id) {
      throw ArgumentError("measurement " + std::to_string(i) + " is '" +
                          q.measurements[i].id + "' in the realization but '" +
                          s.measurements[i].id + "' in the scenario");
    }
    if (static_cast<int>(q.measurements[i].effects.size()) !=
        s.measurements[i].outcome_count) {
      throw ArgumentError("measurement '" + s.measurements[i].id +
                          "' outcome counts disagree");
    }
  }
  if (q.context_povms.size() != s.contexts.size() ||
      q.context_members.size() != s.contexts.size()) {
    throw ArgumentError("realization and scenario context counts disagree");
  }
  for (size_t c = 0; c < s.contexts.size(); ++c) {
    const auto& members = s.contexts[c].member_ids;
    if (q.context_members[c].size() != members.size()) {
      throw ArgumentError("context " + std::to_string(c) + " sizes disagree");
    }
    for (size_t j = 0; j < members.size(); ++j) {
      if (q.measurements[q.context_members[c][j]].id != members[j]) {
        throw ArgumentError("context " + std::to_string(c) + " member " +
                            std::to_string(j) + " disagrees with scenario");
      }
    }
    if (static_cast<int>(q.context_povms[c].size()) !=
        joint_outcome_count(s, static_cast<int>(c))) {
      throw ArgumentError("context " + std::to_string(c) +
                          " joint POVM size disagrees with scenario");
    }
  }
  if (q.sources.size() != s.corr_pairing.size()) {
    throw ArgumentError("realization has " + std::to_string(q.sources.size()) +
                        " sources, corr_pairing lists " +
                        std::to_string(s.corr_pairing.size()));
  }
  if (q.special_source.branches.empty()) {
    throw ArgumentError("special source has no branches");
  }

  RealizationStats stats;

  double corr = 0;
  for (size_t i = 0; i < q.sources.size(); ++i) {
    int m = measurement_index(s, s.corr_pairing[i]);
    const QuantumMeasurement& meas = q.measurements[m];
    const SourceEnsemble& src = q.sources[i];
    if (src.branches.size() != meas.effects.size()) {
      throw ArgumentError("source '" + src.id + "' branch count differs from '" +
                          meas.id + "' outcome count");
    }
    for (size_t k = 0; k < src.branches.size(); ++k) {
      corr += src.branches[k].probability *
              (meas.effects[k] * src.branches[k].state).trace().real();
    }
  }
  stats.corr = corr / static_cast<double>(q.sources.size());

  const Matrix& witness_state = q.special_source.branches[0].state;
  double r = to_double(s.functional.offset);
  for (const FunctionalTerm& term : s.functional.terms) {
    int flat = flat_outcome_index(s, term.context_index, term.outcomes);
    r += to_double(term.coeff) *
         (q.context_povms[term.context_index][flat] * witness_state)
             .trace()
             .real();
  }
  stats.r = r;

  stats.p_star = q.special_source.branches[0].probability;
  return stats;
}

EquivalenceReport check_operational_equivalences(const QuantumRealization& q,
                                                 double tolerance) {
  if (!(tolerance > 0.0)) {
    throw ArgumentError(
        "tolerance must be strictly positive; exact comparison would reject "
        "valid floating-point models");
  }

  EquivalenceReport report;
  auto record = [&](std::string label, double deviation) {
    report.checks.push_back({std::move(label), deviation,
                             deviation <= tolerance});
  };

  // Source indistinguishability: every ensemble must average to the same
  // state as the distinguished source.
  if (!q.special_source.branches.empty()) {
    Matrix reference = ensemble_average(q.special_source, q.dim);
    for (const SourceEnsemble& src : q.sources) {
      record("source-average:" + src.id,
             max_abs(ensemble_average(src, q.dim) - reference));
    }
  }

  // Context compatibility: each joint POVM must marginalize to its members.
  for (size_t c = 0; c < q.context_povms.size(); ++c) {
    const auto& members = q.context_members[c];
    const auto& povm = q.context_povms[c];
    int total = static_cast<int>(povm.size());
    int stride = total;
    for (size_t j = 0; j < members.size(); ++j) {
      const QuantumMeasurement& m = q.measurements[members[j]];
      int count = static_cast<int>(m.effects.size());
      stride /= count;
      double worst = 0;
      for (int outcome = 0; outcome < count; ++outcome) {
        Matrix marginal = Matrix::Zero(q.dim, q.dim);
        for (int flat = 0; flat < total; ++flat) {
          if ((flat / stride) % count == outcome) marginal += povm[flat];
        }
        worst = std::max(worst, max_abs(marginal - m.effects[outcome]));
      }
      record("context-marginal:" + std::to_string(c) + ":" + m.id, worst);
    }
  }

  report.max_deviation = 0;
  report.all_passed = true;
  for (const EquivalenceCheck& check : report.checks) {
    report.max_deviation = std::max(report.max_deviation, check.deviation);
    report.all_passed = report.all_passed && check.passed;
  }
  return report;
}

QuantumRealization depolarize(const QuantumRealization& q, double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw ArgumentError("visibility must lie in [0, 1]");
  }
  Matrix identity = Matrix::Identity(q.dim, q.dim);
  auto shrink = [&](const Matrix& e) {
    return (visibility * e +
            (1.0 - visibility) * (e.trace().real() / q.dim) * identity)
        .eval();
  };

  QuantumRealization out = q;
  for (QuantumMeasurement& m : out.measurements) {
    for (Matrix& e : m.effects) e = shrink(e);
  }
  for (auto& povm : out.context_povms) {
    for (Matrix& e : povm) e = shrink(e);
  }
  return out;
}

QuantumRealization translate_tri_to_quad(
    const std::vector<QuantumMeasurement>& tri_measurements) {
  const int n = static_cast<int>(tri_measurements.size());
  if (n < 3) {
    throw ArgumentError("cycle translation needs at least 3 measurements");
  }
  for (const QuantumMeasurement& m : tri_measurements) {
    if (m.effects.size() != 3) {
      throw ArgumentError("measurement '" + m.id +
                          "' does not have exactly 3 outcomes");
    }
  }
  const int dim = static_cast<int>(tri_measurements[0].effects[0].rows());

  // The cycle is glued by identifying outcome 2 of each measurement with
  // outcome 0 of the next one; without that the four-outcome form would
  // change the statistics.
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    double dev = max_abs(tri_measurements[i].effects[2] -
                         tri_measurements[j].effects[0]);
    if (dev > kStructuralTolerance) {
      throw TranslationError(
          "outcome 2 of '" + tri_measurements[i].id + "' and outcome 0 of '" +
          tri_measurements[j].id +
          "' are not operationally equivalent (deviation " + format_real(dev) +
          ")");
    }
  }

  QuantumRealization q;
  q.dim = dim;
  Matrix identity = Matrix::Identity(dim, dim);
  Matrix zero = Matrix::Zero(dim, dim);

  for (const QuantumMeasurement& m : tri_measurements) {
    q.measurements.push_back(
        {m.id, {m.effects[0], identity - m.effects[0]}});
  }
  for (int i = 0; i < n; ++i) {
    const auto& tri = tri_measurements[i].effects;
    q.context_members.push_back({i, (i + 1) % n});
    // Joint outcomes (0,0), (0,1), (1,0), (1,1): the first is impossible,
    // and the three tri outcomes land on the remaining cells.
    q.context_povms.push_back({zero, tri[0], tri[2], tri[1]});
  }
  return q;
}

namespace {

using nlohmann::json;

void write_matrix(std::ostream& out, const Matrix& m) {
  out << '[';
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (r || c) out << ',';
      out << '[' << format_real(m(r, c).real()) << ','
          << format_real(m(r, c).imag()) << ']';
    }
  }
  out << ']';
}

void write_source(std::ostream& out, const SourceEnsemble& src,
                  const char* indent) {
  out << indent << "{\"id\":\"" << src.id << "\",\"branches\":[";
  for (size_t k = 0; k < src.branches.size(); ++k) {
    if (k) out << ',';
    out << "\n" << indent << "  {\"probability\":"
        << format_real(src.branches[k].probability) << ",\"state\":";
    write_matrix(out, src.branches[k].state);
    out << '}';
  }
  out << "]}";
}

Matrix matrix_from_json(const json& node, int dim, const std::string& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != dim * dim) {
    throw ParseError(where + " must be a row-major list of " +
                     std::to_string(dim * dim) + " [re, im] pairs");
  }
  Matrix m(dim, dim);
  for (int k = 0; k < dim * dim; ++k) {
    const json& cell = node[k];
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number()) {
      throw ParseError(where + " entry " + std::to_string(k) +
                       " is not an [re, im] pair");
    }
    m(k / dim, k % dim) =
        std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
  }
  return m;
}

SourceEnsemble source_from_json(const json& node, int dim,
                                const std::string& where) {
  if (!node.is_object() || !node.contains("id") || !node.contains("branches")) {
    throw ParseError(where + " must be an object with id and branches");
  }
  SourceEnsemble src;
  src.id = node.at("id").get<std::string>();
  const json& branches = node.at("branches");
  if (!branches.is_array()) {
    throw ParseError(where + ".branches must be an array");
  }
  for (size_t k = 0; k < branches.size(); ++k) {
    const json& br = branches[k];
    std::string bwhere = where + ".branches[" + std::to_string(k) + "]";
    if (!br.is_object() || !br.contains("probability") ||
        !br.contains("state") || !br.at("probability").is_number()) {
      throw ParseError(bwhere + " must have a numeric probability and a state");
    }
    src.branches.push_back({br.at("probability").get<double>(),
                            matrix_from_json(br.at("state"), dim, bwhere)});
  }
  return src;
}

}  // namespace

std::string realization_json(const QuantumRealization& q) {
  std::ostringstream out;
  out << "{\n  \"dim\": " << q.dim << ",\n  \"measurements\": [";
  for (size_t i = 0; i < q.measurements.size(); ++i) {
    if (i) out << ',';
    out << "\n    {\"id\":\"" << q.measurements[i].id << "\",\"effects\":[";
    for (size_t k = 0; k < q.measurements[i].effects.size(); ++k) {
      if (k) out << ',';
      write_matrix(out, q.measurements[i].effects[k]);
    }
    out << "]}";
  }
  out << "\n  ],\n  \"context_members\": [";
  for (size_t c = 0; c < q.context_members.size(); ++c) {
    if (c) out << ',';
    out << '[';
    for (size_t j = 0; j < q.context_members[c].size(); ++j) {
      if (j) out << ',';
      out << q.context_members[c][j];
    }
    out << ']';
  }
  out << "],\n  \"context_povms\": [";
  for (size_t c = 0; c < q.context_povms.size(); ++c) {
    if (c) out << ',';
    out << "\n    [";
    for (size_t g = 0; g < q.context_povms[c].size(); ++g) {
      if (g) out << ',';
      write_matrix(out, q.context_povms[c][g]);
    }
    out << ']';
  }
  out << "\n  ],\n  \"sources\": [";
  for (size_t i = 0; i < q.sources.size(); ++i) {
    if (i) out << ',';
    out << '\n';
    write_source(out, q.sources[i], "    ");
  }
  out << "\n  ],\n  \"special_source\":\n";
  write_source(out, q.special_source, "    ");
  out << "\n}\n";
  return out.str();
}

QuantumRealization realization_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("realization JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") ||
      !doc.at("dim").is_number_integer()) {
    throw ParseError("realization JSON must be an object with integer 'dim'");
  }

  QuantumRealization q;
  q.dim = doc.at("dim").get<int>();
  if (q.dim < 1) {
    throw ParseError("realization dim must be positive");
  }

  for (const char* key : {"measurements", "context_members", "context_povms",
                          "sources", "special_source"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("missing field '") + key + "'");
    }
  }

  const json& measurements = doc.at("measurements");
  if (!measurements.is_array()) {
    throw ParseError("'measurements' must be an array");
  }
  for (size_t i = 0; i < measurements.size(); ++i) {
    const json& m = measurements[i];
    std::string where = "measurements[" + std::to_string(i) + "]";
    if (!m.is_object() || !m.contains("id") || !m.contains("effects") ||
        !m.at("effects").is_array()) {
      throw ParseError(where + " must have an id and an effects array");
    }
    QuantumMeasurement out;
    out.id = m.at("id").get<std::string>();
    for (size_t k = 0; k < m.at("effects").size(); ++k) {
      out.effects.push_back(matrix_from_json(
          m.at("effects")[k], q.dim,
          where + ".effects[" + std::to_string(k) + "]"));
    }
    q.measurements.push_back(std::move(out));
  }

  const json& members = doc.at("context_members");
  if (!members.is_array()) {
    throw ParseError("'context_members' must be an array");
  }
  for (size_t c = 0; c < members.size(); ++c) {
    if (!members[c].is_array()) {
      throw ParseError("context_members[" + std::to_string(c) +
                       "] must be an array of measurement indices");
    }
    std::vector<int> idx;
    for (const json& v : members[c]) {
      if (!v.is_number_integer()) {
        throw ParseError("context_members[" + std::to_string(c) +
                         "] must contain integers");
      }
      idx.push_back(v.get<int>());
    }
    q.context_members.push_back(std::move(idx));
  }

  const json& povms = doc.at("context_povms");
  if (!povms.is_array()) {
    throw ParseError("'context_povms' must be an array");
  }
  for (size_t c = 0; c < povms.size(); ++c) {
    if (!povms[c].is_array()) {
      throw ParseError("context_povms[" + std::to_string(c) +
                       "] must be an array of matrices");
    }
    std::vector<Matrix> povm;
    for (size_t g = 0; g < povms[c].size(); ++g) {
      povm.push_back(matrix_from_json(povms[c][g], q.dim,
                                      "context_povms[" + std::to_string(c) +
                                          "][" + std::to_string(g) + "]"));
    }
    q.context_povms.push_back(std::move(povm));
  }

  const json& sources = doc.at("sources");
  if (!sources.is_array()) {
    throw ParseError("'sources' must be an array");
  }
  for (size_t i = 0; i < sources.size(); ++i) {
    q.sources.push_back(source_from_json(
        sources[i], q.dim, "sources[" + std::to_string(i) + "]"));
  }
  q.special_source =
      source_from_json(doc.at("special_source"), q.dim, "special_source");

  std::vector<Violation> violations = validate_realization(q);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid realization:";
    for (const Violation& v : violations) {
      msg << "\n  [" << v.code << "] " << v.message;
    }
    throw ValidationError(msg.str(), std::move(violations));
  }
  return q;
}

QuantumRealization load_realization_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open realization file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return realization_from_json(buf.str());
}

}  // namespace ncineq
