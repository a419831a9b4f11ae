#pragma once

// The subcommands behind tools/levyaf. Each returns the full output document
// and an exit code; nothing here touches stdout or the filesystem, so the
// outputs can be compared byte for byte across thread counts.

#include <string>
#include <vector>

#include "levyaf/config.hpp"
#include "levyaf/error.hpp"

namespace levyaf {

enum ExitCode : int { kExitPass = 0, kExitPropertyFailure = 1, kExitConfig = 2, kExitNumeric = 3 };

struct CommandResult {
  std::string text;
  int exit_code = kExitPass;
};

CommandResult cmd_classify(const ExperimentConfig& cfg);
CommandResult cmd_density(const ExperimentConfig& cfg);
CommandResult cmd_simulate(const ExperimentConfig& cfg);
CommandResult cmd_moments(const ExperimentConfig& cfg);
CommandResult cmd_decompose(const ExperimentConfig& cfg);
CommandResult cmd_verify(const ExperimentConfig& cfg);

/// Names accepted by --inject-failure.
std::vector<std::string> verify_check_names();

/// Applies cfg.threads and dispatches; library errors become exit codes 2/3
/// with the message in text.
CommandResult run_command(const std::string& name, const ExperimentConfig& cfg);

int exit_code_for(ErrorKind kind) noexcept;

}  // namespace levyaf
