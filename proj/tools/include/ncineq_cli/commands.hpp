#pragma once

#include <iosfwd>
#include <string>

namespace ncineq::cli {

enum class Command { Derive, Evaluate, Sweep };
enum class OutputFormat { Json, Csv };

// Everything a run needs, assembled by the flag parser (or directly by
// tests). Exactly one of n_cycle / scenario_path selects the scenario;
// kcbs / realization_path selects the realization where one is needed.
struct RunConfig {
  Command command = Command::Derive;

  int n_cycle = 0;  // 0 = not given
  std::string scenario_path;

  bool kcbs = false;
  std::string realization_path;

  bool visibility_given = false;
  double visibility = 1.0;

  double from = 0.0;
  double to = 1.0;
  int steps = 0;

  bool format_given = false;
  OutputFormat format = OutputFormat::Json;

  std::string out_path;               // empty = stdout
  std::string vertices_path;          // derive: optional vertex CSV
  std::string dump_realization_path;  // evaluate: optional model artifact
};

// Executes the configured command. The report goes to out_path or `out`;
// diagnostics go to `err`. Returns the process exit code: 0 success (for
// evaluate/sweep regardless of whether the bound is violated), 1 bad input
// or bad flags, 2 derivation failure (the scenario is not a statistical
// proof); a failed derive still writes a diagnosis report.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ncineq::cli
