#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncineq_cli/commands.hpp"

int main(int argc, char** argv) {
  using ncineq::cli::Command;
  using ncineq::cli::OutputFormat;
  using ncineq::cli::RunConfig;

  CLI::App app{
      "Derives noise-robust noncontextuality inequalities from compatibility "
      "scenarios and evaluates quantum models against them"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format;

  auto add_scenario_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n-cycle", config.n_cycle,
                    "Built-in odd n-cycle scenario");
    cmd->add_option("--scenario", config.scenario_path, "Scenario JSON file");
  };
  auto add_realization_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--kcbs", config.kcbs,
                  "Built-in cycle realization (needs --n-cycle)");
    cmd->add_option("--realization", config.realization_path,
                    "Realization JSON file");
  };
  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", config.out_path,
                    "Write the report to this file instead of stdout");
  };

  CLI::App* derive = app.add_subcommand(
      "derive", "Derive the inequality constants from a scenario");
  add_scenario_flags(derive);
  add_output_flags(derive);
  derive->add_option("--vertices", config.vertices_path,
                     "Also dump the enumerated vertices as CSV to this file");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Evaluate a quantum realization against the inequality");
  add_scenario_flags(evaluate);
  add_realization_flags(evaluate);
  add_output_flags(evaluate);
  evaluate->add_option("--visibility", config.visibility,
                       "Depolarize the realization to this visibility first");
  evaluate->add_option(
      "--dump-realization", config.dump_realization_path,
      "Write the evaluated (possibly depolarized) realization as JSON");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate along a visibility grid and locate the critical "
               "visibility");
  add_scenario_flags(sweep);
  add_realization_flags(sweep);
  add_output_flags(sweep);
  sweep->add_option("--from", config.from, "Lowest visibility")->required();
  sweep->add_option("--to", config.to, "Highest visibility")->required();
  sweep->add_option("--steps", config.steps, "Number of grid points")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (derive->parsed()) config.command = Command::Derive;
  if (evaluate->parsed()) config.command = Command::Evaluate;
  if (sweep->parsed()) config.command = Command::Sweep;
  config.visibility_given = evaluate->count("--visibility") > 0;

  CLI::App* active = app.get_subcommands().front();
  config.format_given = active->count("--format") > 0;
  if (config.format_given) {
    config.format =
        format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  }

  return ncineq::cli::run(config, std::cout, std::cerr);
}
