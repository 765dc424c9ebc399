#pragma once

#include <string>

#include "ncineq/scenario.hpp"

namespace ncineq {

// Parses a scenario from its JSON form and validates it. Throws ParseError
// (with line/column) on malformed JSON or fields of the wrong shape, and
// ValidationError when the parsed scenario breaks an invariant.
Scenario load_scenario(const std::string& json_text);

// load_scenario applied to a file. IO failures throw Error.
Scenario load_scenario_file(const std::string& path);

// Canonical JSON form; load_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace ncineq
