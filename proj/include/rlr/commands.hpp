#pragma once

#include <optional>
#include <string>

#include "rlr/io.hpp"

namespace rlr {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2, kExitBudgetExceeded = 3 };

struct CommandOptions {
  std::optional<std::size_t> order;
  std::optional<std::size_t> degree;
  EnumerationBudget budget;
  /// Reading of the degree-1 LR condition for p >= 3 (see PVerifierOptions).
  bool semilinear_c1 = true;
  /// The input is a built-in example; `verify` then gates every command.
  bool builtin = false;
  /// `examples run`: append the cohomology report.
  bool with_cohomology = false;
  /// Text placed in the report title.
  std::string echo;
};

struct CommandResult {
  Report report;
  int exit_code = kExitOk;
};

/// Runs one command on a parsed file. Library errors propagate; map them with
/// exit_code_for.
CommandResult run_command(const std::string& command, const AlgebraFile& file, const CommandOptions& opt);

/// Every command name accepted by run_command.
const std::vector<std::string>& command_names();

/// 2 for input and domain errors, 3 for an exceeded budget.
int exit_code_for(const Error& e);

/// Catches library errors and renders them as an error document.
struct RenderedResult {
  std::string output;
  std::string error;
  int exit_code = kExitOk;
};
RenderedResult run_and_render(const std::string& command, const AlgebraFile& file, const CommandOptions& opt,
                              ReportFormat format);

/// The verify report used as the gate for built-ins.
Report verify_report(const AlgebraFile& file, const EnumerationBudget& budget);

}  // namespace rlr
