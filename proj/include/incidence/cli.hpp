#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: audit, battery, reduce, decompose, recheck
 *        and enumerate, each producing one JSON report.
 *
 * Reports have a fixed field order and depend only on the configuration, so
 * two runs with the same flags differ only in "wall_time_seconds". Exit
 * codes: 0 when every result is consistent with theory, 1 when an
 * inconsistency was detected, 2 for usage and parse errors.
 */

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "incidence/serialize.hpp"

namespace incidence {

inline constexpr const char* kToolName = "incidence";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kConsistent = 0, kInconsistent = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  std::string model;  // empty when the input file names the model
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::uint64_t> budget;
  int height = 4;
  std::string out;
  bool exhaustive = false;
  std::string input;   // reduce, decompose and recheck read this file
  std::string axioms;  // audit: comma-separated sets, empty for the defaults
  std::optional<std::uint64_t> target;
  bool json = false;  // print the report instead of the summary
};

struct CommandResult {
  Json report;
  int exit_code = kConsistent;
  std::string summary;  // human-readable, one item per line
};

CommandResult cmd_audit(const RunConfig& config);
CommandResult cmd_battery(const RunConfig& config);
CommandResult cmd_reduce(const RunConfig& config);
CommandResult cmd_decompose(const RunConfig& config);
CommandResult cmd_recheck(const RunConfig& config);
CommandResult cmd_enumerate(const RunConfig& config);

/// Dispatches on config.command and times the run. Throws
/// std::invalid_argument for bad models, files or arguments.
CommandResult run_command(const RunConfig& config);

/// Parses arguments, runs the command, writes the report to --out and the
/// summary (or the report with --json) to `out`. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace incidence
