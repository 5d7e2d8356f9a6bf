#pragma once

#include <cmath>
#include <string>

#include "mmsim/cli/runners.hpp"

namespace mmsim::cli::detail {

inline CheckResult within(std::string name, double value, double target, double tolerance) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.passed = std::abs(value - target) <= tolerance;
  c.detail = "target " + format_number(target) + " +- " + format_number(tolerance);
  return c;
}

inline CheckResult condition(std::string name, bool passed, double value, std::string detail) {
  return CheckResult{std::move(name), passed, value, std::move(detail), true};
}

inline CheckResult informational(CheckResult c) {
  c.enforced = false;
  return c;
}

/// Summary rows: quantity, value, target, tolerance, status.
ResultTable summary_table(const std::string& name, const std::vector<CheckResult>& checks);

}  // namespace mmsim::cli::detail
