#include <algorithm>
#include <cmath>

#include "mmsim/fock.hpp"
#include "mmsim/macro_size.hpp"
#include "mmsim/memory_loop.hpp"
#include "mmsim/noise_model.hpp"
#include "mmsim/tomography.hpp"
#include "runner_util.hpp"

namespace mmsim::cli {

namespace {

using detail::condition;

CheckResult max_error(std::string name, double error, double tolerance) {
  return condition(std::move(name), error <= tolerance, error, "<= " + format_number(tolerance));
}

std::vector<CheckResult> model_identities(const ExperimentParams& params, const MemoryParams& memory) {
  std::vector<CheckResult> out;

  double series = 0.0;
  for (double mu : {0.0, 0.5, 3.0, 13.3, 42.0, 86.0}) {
    for (double eta : {0.046, 0.3, 1.0}) {
      for (double v : {0.9, 0.9985, 1.0}) {
        series = std::max(series, std::abs(noise_click_prob(mu, eta, v) - noise_click_prob_series(mu, eta, v)));
        series = std::max(series, std::abs(no_leak_prob(mu, eta, v) - no_leak_prob_series(mu, eta, v)));
      }
    }
  }
  out.push_back(max_error("noise series equals closed form", series, 1e-12));

  double unit = 0.0;
  for (Complex a : {Complex(0.3, 0.0), Complex(1.5, -0.7), Complex(0.0, 2.5)}) {
    const int n_max = 80, block = 20;
    const CMatrix prod = displacement_operator(a, n_max) * displacement_operator(-a, n_max);
    unit = std::max(unit, (prod.topLeftCorner(block, block) - CMatrix::Identity(block, block)).cwiseAbs().maxCoeff());
  }
  out.push_back(max_error("D(a) D(-a) = I on the resolved block", unit, 1e-10));

  double werner = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double w = k / 20.0;
    const TwoQubitDensity rho = werner_state(w);
    werner = std::max(werner, std::abs(concurrence(rho) - std::max(0.0, (3.0 * w - 1.0) / 2.0)));
    werner = std::max(werner, std::abs(ppt_min_eigenvalue(rho) - (1.0 - 3.0 * w) / 4.0));
    werner = std::max(werner, std::abs(chsh_value(rho, default_chsh_settings()) - 2.0 * std::sqrt(2.0) * w));
  }
  out.push_back(max_error("Werner concurrence, PPT and CHSH identities", werner, 1e-10));

  double residual = 0.0;
  for (double a : {0.5, 3.0, 9.3}) {
    residual = std::max(residual, back_displacement_residual(Complex(a, 0.0), kPi, memory));
  }
  out.push_back(max_error("back-displacement residual at phi = pi", residual, 1e-12));

  out.push_back(max_error("werner visibility at |alpha|^2 = 0 equals micro visibility",
                          std::abs(predict_werner_visibility(0.0, params) - params.micro_visibility.value),
                          1e-12));

  bool monotone = true;
  double worst_rise = 0.0;
  for (double alpha_sq : {2.0, 47.0}) {
    const double alpha = std::sqrt(alpha_sq);
    const MacroComponentPair pair = macro_components(alpha, default_cutoff(alpha));
    double previous = guessing_probability(pair, 0.0);
    for (int k = 1; k <= 400; ++k) {
      const double pg = guessing_probability(pair, 0.05 * k);
      worst_rise = std::max(worst_rise, pg - previous);
      monotone = monotone && pg <= previous + 1e-12;
      previous = pg;
    }
  }
  out.push_back(condition("guessing probability non-increasing in sigma", monotone, worst_rise,
                          "largest rise <= 1e-12"));

  out.push_back(detail::within("excitations at |alpha|^2 = 13.3", excitations_from_alpha(13.3, params.absorption.value), 7.3, 0.05));
  out.push_back(detail::within("excitations at |alpha|^2 = 42", excitations_from_alpha(42.0, params.absorption.value), 23.1, 0.05));
  out.push_back(detail::within("excitations at |alpha|^2 = 86", excitations_from_alpha(86.0, params.absorption.value), 47.3, 0.05));
  return out;
}

std::vector<CheckResult> tomography_round_trip(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto pairs = default_tomography_settings();
  int k = 0;
  for (const TwoQubitDensity& truth : {bell_state(), werner_state(0.94), werner_state(0.5)}) {
    const TomographyRecord record = simulate_tomography(truth, pairs, 1000000, derive_seed(seed, k));
    const double f = fidelity(truth, reconstruct_mle(record));
    out.push_back(condition("tomography round trip " + std::to_string(k), f >= 0.995, f, ">= 0.995 at 1e6 shots"));
    ++k;
  }
  return out;
}

void append(std::vector<CheckResult>& to, const std::string& prefix, const RunOutcome& outcome) {
  for (CheckResult c : outcome.checks) {
    c.name = prefix + ": " + c.name;
    to.push_back(std::move(c));
  }
}

bool identical_tables(const RunOutcome& a, const RunOutcome& b) {
  if (a.tables.size() != b.tables.size()) return false;
  const Provenance p{"", 0, ""};
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    if (a.tables[i].to_csv(p) != b.tables[i].to_csv(p)) return false;
  }
  return true;
}

}  // namespace

RunOutcome run_validate(const RunConfig& config, const RunOptions& options) {
  std::vector<CheckResult> checks = model_identities(config.experiment(), config.memory());
  for (CheckResult& c : tomography_round_trip(options.seed)) checks.push_back(std::move(c));

  RunConfig quick = config;
  quick.set("curves.band_samples", "20");
  quick.set("curves.alpha_sq", "0:2:100");
  const RunOutcome curves = run_curves(quick, options);
  append(checks, "curves", curves);
  RunOptions serial = options;
  serial.jobs = 1;
  checks.push_back(condition("identical rerun for a fixed seed", identical_tables(curves, run_curves(quick, serial)),
                             0.0, "curves tables byte-identical across job counts"));

  quick.set("size.sigma", "0:1:30");
  quick.set("size.targets", format_number(config.real("size.target")));
  append(checks, "size", run_size(quick, options));
  append(checks, "hom", run_hom(quick, options));
  quick.set("detailed.displacement_sq_grid", format_number(config.real("detailed.displacement_sq")));
  append(checks, "detailed", run_detailed(quick, options));

  RunOutcome out;
  out.checks = checks;
  out.tables.push_back(detail::summary_table("validate", checks));
  return out;
}

}  // namespace mmsim::cli
