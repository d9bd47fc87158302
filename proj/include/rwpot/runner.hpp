#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rwpot/config.hpp"

namespace rwpot {

inline constexpr const char* kCodeVersion = "rwpot 1.0.0";

// Exit codes of the batch runner.
enum ExitCode : int { kExitOk = 0, kExitInvariant = 1, kExitConfig = 2, kExitResource = 3 };

const std::vector<std::string>& experiment_kinds();

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  int threads = 0;
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;     // CSV files then the manifest
  std::vector<std::string> warnings;
  std::vector<std::string> errors;    // "module.operation: message"
};

// Formats a double for CSV: "inf", "-inf" and "nan" sentinels, otherwise 12
// significant digits.
std::string csv_number(double v);

// Runs one experiment. `kind` must match the config's `kind` key when both
// are present. Writes <kind>*.csv and manifest.json under out_dir. Never
// throws for config, invariant or budget failures; they set exit_code.
RunResult run_experiment(const std::string& kind, ExperimentConfig config, const RunOptions& options,
                         std::ostream& log);
// Parses the file and runs it; a parse error still yields a manifest.
RunResult run_config_file(const std::string& kind, const std::string& path, const RunOptions& options,
                          std::ostream& log);

}  // namespace rwpot
