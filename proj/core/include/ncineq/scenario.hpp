#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncineq/errors.hpp"
#include "ncineq/rational.hpp"

namespace ncineq {

// A measurement with a finite outcome set {0, ..., outcome_count - 1}.
struct Measurement {
  std::string id;
  int outcome_count = 0;
  bool operator==(const Measurement&) const = default;
};

// An ordered set of jointly measurable measurements, referenced by id.
struct Context {
  std::vector<std::string> member_ids;
  bool operator==(const Context&) const = default;
};

// One coefficient of the witness functional: weight `coeff` on the joint
// outcome tuple `outcomes` (aligned with the context's member order) of
// contexts[context_index].
struct FunctionalTerm {
  int context_index = 0;
  std::vector<int> outcomes;
  Rat coeff;
  bool operator==(const FunctionalTerm&) const = default;
};

// The linear functional R whose maximum over deterministic vs indeterministic
// vertices drives the derived inequality.
struct WitnessFunctional {
  Rat offset = 0;
  std::vector<FunctionalTerm> terms;
  bool operator==(const WitnessFunctional&) const = default;
};

// A compatibility scenario: measurements, contexts they group into, the
// witness functional, and the measurements paired with a source for the
// correlation average (one source per listed id, outcome k of the source
// paired with outcome k of the measurement).
struct Scenario {
  std::vector<Measurement> measurements;
  std::vector<Context> contexts;
  WitnessFunctional functional;
  std::vector<std::string> corr_pairing;
  bool operator==(const Scenario&) const = default;
};

// Index of the measurement with the given id, or -1 if there is none.
int measurement_index(const Scenario& s, std::string_view id);

// Number of joint outcome tuples of a context (product of the members'
// outcome counts).
int joint_outcome_count(const Scenario& s, int context_index);

// Bijection between joint outcome tuples and their flat index. The flat
// order is lexicographic with the first member most significant, so for a
// pair of binary measurements: (0,0) -> 0, (0,1) -> 1, (1,0) -> 2, (1,1) -> 3.
int flat_outcome_index(const Scenario& s, int context_index,
                       std::span<const int> outcomes);
std::vector<int> unflatten_outcome(const Scenario& s, int context_index,
                                   int flat);

// Start offset of each context's probability table when all tables are
// concatenated into one vector; the trailing entry is the total length.
std::vector<int> context_table_offsets(const Scenario& s);

// Checks every scenario invariant and returns the violations found (empty
// means valid): known and unique ids, outcome counts >= 2, contexts
// non-empty with distinct known members, every measurement in some context,
// functional terms keyed by valid (context, tuple) pairs without duplicates,
// corr_pairing non-empty with distinct known ids.
std::vector<Violation> validate(const Scenario& s);

// The odd n-cycle scenario: binary measurements M1..Mn, contexts
// (Mi, Mi+1) cyclically, witness weight 1/n on both anticorrelated outcomes
// of every context, and all measurements paired for the correlation average.
// Throws ArgumentError unless n is odd and >= 3.
Scenario build_n_cycle(int n);

}  // namespace ncineq
