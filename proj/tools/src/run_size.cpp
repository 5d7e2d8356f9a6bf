#include <algorithm>
#include <cmath>

#include "mmsim/cli/pool.hpp"
#include "mmsim/errors.hpp"
#include "mmsim/macro_size.hpp"
#include "mmsim/noise_model.hpp"
#include "runner_util.hpp"

namespace mmsim::cli {

RunOutcome run_size(const RunConfig& config, const RunOptions& options) {
  const ExperimentParams params = config.experiment();
  const double excitations = config.real("size.excitations");
  const double small_alpha_sq = config.real("size.small_alpha_sq");
  const double target = config.real("size.target");
  const std::vector<double> sigmas = config.reals("size.sigma");
  const std::vector<double> targets = config.reals("size.targets");
  if (!(excitations > 0.0)) throw ConfigError("key 'size.excitations': must be > 0");
  if (!(small_alpha_sq > 0.0)) throw ConfigError("key 'size.small_alpha_sq': must be > 0");
  if (!(target > 0.5 && target < 1.0)) throw ConfigError("key 'size.target': must lie in (0.5, 1)");
  if (sigmas.empty() || sigmas.front() < 0.0) throw ConfigError("key 'size.sigma': need values >= 0");
  for (std::size_t i = 1; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > sigmas[i - 1])) throw ConfigError("key 'size.sigma': grid must be strictly increasing");
  }

  const double eta_h = params.heralding_efficiency.value;
  const double eta_abs = params.absorption.value;
  const double alpha_in = std::sqrt(excitations);
  const double alpha_out = std::sqrt(excitations / eta_abs);

  const MacroComponentPair pure = macro_components(alpha_in, default_cutoff(alpha_in));
  const MacroComponentPair absorbed = lossy_mixture_components(alpha_out, 1.0, eta_abs);
  const MacroComponentPair heralded = lossy_mixture_components(alpha_in, eta_h, 1.0);
  const MacroComponentPair heralded_absorbed = lossy_mixture_components(alpha_out, eta_h, eta_abs);

  RunOutcome out;
  ResultTable components("size_components", {{"photon_number", ""}, {"p_plus", ""}, {"p_minus", ""}});
  for (Eigen::Index n = 0; n < pure.plus.size(); ++n) {
    components.add_row({static_cast<long>(n), pure.plus(n), pure.minus(n)});
  }

  const std::array<const MacroComponentPair*, 4> variants{&pure, &absorbed, &heralded, &heralded_absorbed};
  const auto rows = parallel_map(sigmas.size(), options.jobs, [&](std::size_t i) {
    std::array<double, 4> pg{};
    for (std::size_t k = 0; k < variants.size(); ++k) pg[k] = guessing_probability(*variants[k], sigmas[i]);
    return pg;
  });
  ResultTable guessing("size_guessing", {{"sigma", "photons"},
                                         {"pg_pure", ""},
                                         {"pg_absorbed", ""},
                                         {"pg_heralded", ""},
                                         {"pg_heralded_absorbed", ""}});
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    guessing.add_row({sigmas[i], rows[i][0], rows[i][1], rows[i][2], rows[i][3]});
  }

  const auto sizes = parallel_map(targets.size(), options.jobs, [&](std::size_t i) {
    try {
      return effective_size(pure, targets[i]);
    } catch (const ValidationError&) {
      return SizeResult{guessing_probability(pure, 0.0), std::nan(""), 0};
    }
  });
  ResultTable by_target("size_vs_guessing",
                        {{"target", ""}, {"sigma_max", "photons"}, {"effective_size", "photons"}});
  for (std::size_t i = 0; i < targets.size(); ++i) {
    by_target.add_row({targets[i], sizes[i].sigma_max, static_cast<long>(sizes[i].effective_size)});
  }

  const double small_alpha = std::sqrt(small_alpha_sq);
  const double pg_small =
      guessing_probability(macro_components(small_alpha, default_cutoff(small_alpha)), 0.0);
  const SizeResult at_target = effective_size(pure, target);
  double mixture_peak = 0.0;
  for (const auto& r : rows) mixture_peak = std::max(mixture_peak, r[3]);

  out.checks.push_back(detail::informational(
      detail::within("pg(sigma=0) at small |alpha|^2", pg_small, 0.91, 0.02)));
  out.checks.push_back(detail::within("heralded absorbed mixture max pg", mixture_peak, 0.53, 0.02));
  out.checks.push_back(detail::within("effective size at target",
                                      static_cast<double>(at_target.effective_size), 13.0, 2.0));
  out.checks.push_back(detail::condition("sigma_max at target", at_target.sigma_max > 0.0,
                                         at_target.sigma_max, "> 0 photons"));
  out.checks.push_back(detail::condition("pure pg(sigma=0)", at_target.guessing_at_zero > target,
                                         at_target.guessing_at_zero, "> target"));

  Chart chart{"Guessing probability under coarse-grained detection", "sigma (photons)", "P_g", {}};
  const char* labels[] = {"pure", "absorbed", "heralded", "heralded + absorbed"};
  const char* columns[] = {"pg_pure", "pg_absorbed", "pg_heralded", "pg_heralded_absorbed"};
  for (int k = 0; k < 4; ++k) {
    chart.series.push_back({labels[k], guessing.column("sigma"), guessing.column(columns[k]), {}, false});
  }
  out.charts.emplace_back("size_guessing", chart);
  Chart size_chart{"Effective size", "P_g", "N_eff", {}};
  size_chart.series.push_back(
      {"pure component", by_target.column("target"), by_target.column("effective_size"), {}, false});
  out.charts.emplace_back("size_vs_guessing", size_chart);

  out.tables.push_back(std::move(components));
  out.tables.push_back(std::move(guessing));
  out.tables.push_back(std::move(by_target));
  out.tables.push_back(detail::summary_table("size_summary", out.checks));
  return out;
}

}  // namespace mmsim::cli
