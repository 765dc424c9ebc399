#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncineq/scenario.hpp"

namespace ncineq {

using Matrix = Eigen::MatrixXcd;

// Hermiticity, positivity, completeness and marginal checks compare against
// this bound; it absorbs the rounding of the double-precision constructions.
inline constexpr double kStructuralTolerance = 1e-10;

// Probability-level comparisons (branch weights summing to one) use the
// tighter bound.
inline constexpr double kComparativeTolerance = 1e-12;

// A POVM: effects[k] is the operator of outcome k.
struct QuantumMeasurement {
  std::string id;
  std::vector<Matrix> effects;
};

// One preparation of a source: emitted with `probability`, normalized state.
struct SourceBranch {
  double probability = 0;
  Matrix state;
};

struct SourceEnsemble {
  std::string id;
  std::vector<SourceBranch> branches;
};

// A quantum model of a scenario: one measurement per scenario measurement
// (same order), one joint POVM per context (flat outcome order, members
// listed by measurement index in context_members), one source per
// corr_pairing entry (same order), and the distinguished source whose
// branch 0 prepares the witness state.
struct QuantumRealization {
  int dim = 0;
  std::vector<QuantumMeasurement> measurements;
  std::vector<std::vector<int>> context_members;
  std::vector<std::vector<Matrix>> context_povms;
  std::vector<SourceEnsemble> sources;
  SourceEnsemble special_source;
};

// The three operational numbers the inequality is evaluated on.
struct RealizationStats {
  double corr = 0;
  double r = 0;
  double p_star = 0;
};

struct EquivalenceCheck {
  std::string label;
  double deviation = 0;
  bool passed = false;
};

struct EquivalenceReport {
  std::vector<EquivalenceCheck> checks;
  double max_deviation = 0;
  bool all_passed = false;
};

// The odd n-cycle realization in dimension 3: rank-1 projectors onto unit
// vectors on a cone around the z axis, angles chosen so adjacent vectors are
// orthogonal, binary measurements {P_i, I - P_i}, product joint POVMs, and
// for every measurement a source mixing the projector direction (weight 1/3)
// with the complementary maximally mixed state (weight 2/3); the
// distinguished source does the same around the z axis itself. Every source
// averages to I/3. Throws ArgumentError unless n is odd and >= 5.
QuantumRealization kcbs_realization(int n);

// Product POVM {E_a F_b} of two commuting measurements, outcomes in flat
// order (a major, b minor). Throws IncompatibleMeasurementsError when any
// cross pair fails to commute within kStructuralTolerance.
std::vector<Matrix> joint_povm_from_commuting(const QuantumMeasurement& a,
                                              const QuantumMeasurement& b);

// Born-rule statistics of the realization against the scenario: corr is the
// average probability that a paired measurement reproduces its source's
// branch index, r is the witness functional on the distinguished source's
// branch-0 state, p_star that branch's emission probability. Throws
// ArgumentError when realization and scenario are misaligned.
RealizationStats evaluate_realization(const QuantumRealization& q,
                                      const Scenario& s);

// Verifies the operational equivalences the derivation rests on: all source
// averages agree and every context POVM marginalizes to its members'
// effects. tolerance must be positive. The report lists one check per
// comparison with its worst deviation.
EquivalenceReport check_operational_equivalences(const QuantumRealization& q,
                                                 double tolerance);

// Depolarizes every measurement effect and joint POVM element:
// E -> v E + (1 - v) tr(E)/dim I. Sources are untouched; v = 1 is the
// identity. Requires v in [0, 1].
QuantumRealization depolarize(const QuantumRealization& q, double visibility);

// Builds the binary-measurement cycle realization out of a cycle of
// three-outcome measurements whose outcome 2 coincides with the next
// measurement's outcome 0 (within kStructuralTolerance; otherwise throws
// TranslationError). Context i gets the four-outcome POVM
// {0, E_i(0), E_i(2), E_i(1)} over the joint outcomes (0,0), (0,1), (1,0),
// (1,1), and the binary measurements are its marginals. Sources are left
// empty.
QuantumRealization translate_tri_to_quad(
    const std::vector<QuantumMeasurement>& tri_measurements);

// JSON round-trip of a realization (matrices as row-major [re, im] pair
// lists). load accepts exactly what dump produces.
std::string realization_json(const QuantumRealization& q);
QuantumRealization realization_from_json(const std::string& text);
QuantumRealization load_realization_file(const std::string& path);

}  // namespace ncineq
