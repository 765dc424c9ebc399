#pragma once

#include <string>

namespace ncineq {

// Fixed floating-point rendering for all machine-readable output: 15
// significant digits, lowercase scientific notation once |x| leaves
// [1e-4, 1e15). Identical doubles always yield identical bytes.
std::string format_real(double value);

}  // namespace ncineq
