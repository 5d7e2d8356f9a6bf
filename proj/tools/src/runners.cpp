#include "mmsim/cli/runners.hpp"

#include <filesystem>

#include "runner_util.hpp"

#ifndef MMSIM_VERSION
#define MMSIM_VERSION "0.0.0"
#endif

namespace mmsim::cli {

bool RunOutcome::passed() const {
  for (const CheckResult& c : checks) {
    if (c.enforced && !c.passed) return false;
  }
  return true;
}

std::string version() { return MMSIM_VERSION; }

void write_tables(const RunOutcome& outcome, const RunConfig& config, const RunOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  const Provenance provenance{config.hash(), options.seed, version()};
  for (const ResultTable& t : outcome.tables) {
    t.write_csv(options.out_dir / (t.name() + ".csv"), provenance);
  }
  if (options.svg) {
    for (const auto& [name, chart] : outcome.charts) write_svg(options.out_dir / (name + ".svg"), chart);
  }
}

namespace detail {

ResultTable summary_table(const std::string& name, const std::vector<CheckResult>& checks) {
  ResultTable t(name, {{"check", ""}, {"value", ""}, {"criterion", ""}, {"status", ""}});
  for (const CheckResult& c : checks) {
    const char* status = c.passed ? "pass" : (c.enforced ? "fail" : "fail (reported)");
    t.add_row({c.name, c.value, c.detail, std::string(status)});
  }
  return t;
}

}  // namespace detail

}  // namespace mmsim::cli
