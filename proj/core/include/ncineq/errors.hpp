#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ncineq {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (fraction strings, scenario or realization JSON).
// line/column are 1-based when known, 0 when the location is not applicable.
struct ParseError : Error {
  ParseError(const std::string& what, int line_ = 0, int column_ = 0)
      : Error(what), line(line_), column(column_) {}
  int line;
  int column;
};

// One violated scenario invariant, with a stable machine-readable code such
// as "context.unknown-measurement" next to the human-readable message.
struct Violation {
  std::string code;
  std::string message;
};

// A structurally well-formed scenario that breaks one or more invariants.
struct ValidationError : Error {
  ValidationError(const std::string& what, std::vector<Violation> violations_)
      : Error(what), violations(std::move(violations_)) {}
  std::vector<Violation> violations;
};

// A caller-supplied value outside an operation's documented domain.
struct ArgumentError : Error {
  using Error::Error;
};

// The scenario admits no inequality of the intended form because the
// indeterministic vertices do not outperform the deterministic ones
// (r_ind <= r_det).
struct NotAStatisticalProofError : Error {
  using Error::Error;
};

// No deterministic vertex exists at all, so the noncontextual bound is the
// logical one; see logical_bound().
struct LogicalProofError : NotAStatisticalProofError {
  using NotAStatisticalProofError::NotAStatisticalProofError;
};

// No indeterministic vertex exists, so none of the derived quantities that
// range over indeterministic assignments are defined.
struct DegenerateScenarioError : Error {
  using Error::Error;
};

// Measurements passed to joint_povm_from_commuting do not commute.
struct IncompatibleMeasurementsError : Error {
  using Error::Error;
};

// Three-outcome measurements that do not satisfy the cyclic operational
// equivalence required for the quad-form translation.
struct TranslationError : Error {
  using Error::Error;
};

// Invariant breakage inside the library itself (infeasible polytope input,
// lost pointedness during enumeration, ...). Indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace ncineq
