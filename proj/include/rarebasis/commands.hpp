#pragma once

#include <string>

#include "rarebasis/config.hpp"

namespace rarebasis {

enum class Format { Json, Text, Csv };

struct CommandResult {
  int exit_code = 0;  // 0 pass, 1 verification fail, 2 config/extraction error
  std::string output;
};

CommandResult cmd_spectrum(const ExperimentConfig& config, Format format);
CommandResult cmd_density(const ExperimentConfig& config, Format format);
CommandResult cmd_extract(const ExperimentConfig& config, Format format);
CommandResult cmd_verify(const ExperimentConfig& config, Format format);
CommandResult cmd_sweep(const ExperimentConfig& config, Format format);
CommandResult cmd_oracle_check(const ExperimentConfig& config, Format format);
CommandResult cmd_is_check(const ExperimentConfig& config, Format format);
CommandResult cmd_complete(const ExperimentConfig& config, Format format);

/// Dispatch by verb name; unknown verbs yield exit code 2.
CommandResult run_command(const std::string& verb, const ExperimentConfig& config, Format format);

}  // namespace rarebasis
