#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mmsim/cli/config.hpp"
#include "mmsim/cli/svg.hpp"
#include "mmsim/cli/table.hpp"

namespace mmsim::cli {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  bool svg = false;
  int jobs = 1;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string detail;
  /// Reported only; a failure does not fail the run.
  bool enforced = true;
};

struct RunOutcome {
  std::vector<ResultTable> tables;
  std::vector<CheckResult> checks;
  /// Chart name (file stem) and chart, written only with --svg.
  std::vector<std::pair<std::string, Chart>> charts;

  bool passed() const;
};

RunOutcome run_curves(const RunConfig& config, const RunOptions& options);
RunOutcome run_size(const RunConfig& config, const RunOptions& options);
RunOutcome run_hom(const RunConfig& config, const RunOptions& options);
RunOutcome run_detailed(const RunConfig& config, const RunOptions& options);
RunOutcome run_tomo(const RunConfig& config, const RunOptions& options);
RunOutcome run_validate(const RunConfig& config, const RunOptions& options);

/// Writes every table as <out_dir>/<name>.csv and, with --svg, every chart as <name>.svg.
void write_tables(const RunOutcome& outcome, const RunConfig& config, const RunOptions& options);

std::string version();

}  // namespace mmsim::cli
