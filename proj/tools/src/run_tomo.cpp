#include "mmsim/errors.hpp"
#include "mmsim/noise_model.hpp"
#include "mmsim/tomography.hpp"
#include "runner_util.hpp"

namespace mmsim::cli {

namespace {
const char* const kAnalyzerNames[] = {"H", "V", "D", "A", "R", "L"};
}

RunOutcome run_tomo(const RunConfig& config, const RunOptions& options) {
  const long shots = config.integer("tomo.shots");
  if (shots < 1) throw ConfigError("key 'tomo.shots': must be >= 1");
  TwoQubitDensity truth = bell_state();
  if (config.text("tomo.state") == "werner") {
    const double v = config.real("tomo.visibility");
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("key 'tomo.visibility': must lie in [0, 1]");
    truth = werner_state(v);
  } else {
    const double a = config.real("tomo.alpha_sq");
    if (!(a >= 0.0)) throw ConfigError("key 'tomo.alpha_sq': must be >= 0");
    truth = predict_state(a, config.experiment());
  }

  const auto pairs = default_tomography_settings();
  const TomographyRecord record =
      simulate_tomography(truth, pairs, static_cast<std::uint64_t>(shots), options.seed);

  RunOutcome out;
  ResultTable counts("tomo_counts", {{"alice", ""}, {"bob", ""}, {"n_pp", ""}, {"n_pm", ""}, {"n_mp", ""},
                                     {"n_mm", ""}});
  for (std::size_t k = 0; k < record.entries().size(); ++k) {
    const auto& c = record.entries()[k].counts;
    counts.add_row({std::string(kAnalyzerNames[k / 6]), std::string(kAnalyzerNames[k % 6]),
                    static_cast<long>(c[0]), static_cast<long>(c[1]), static_cast<long>(c[2]),
                    static_cast<long>(c[3])});
  }

  const MleResult mle = reconstruct_mle_detailed(record);
  ResultTable estimate("tomo_estimate", {{"row", ""}, {"col", ""}, {"re", ""}, {"im", ""}});
  const auto& m = mle.state.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) estimate.add_row({static_cast<long>(r), static_cast<long>(c), m(r, c).real(), m(r, c).imag()});
  }

  ResultTable compare("tomo_witnesses", {{"quantity", ""}, {"true_state", ""}, {"estimate", ""}});
  compare.add_row({std::string("chsh_max"), chsh_maximum(truth), chsh_maximum(mle.state)});
  compare.add_row({std::string("ppt_min_eigenvalue"), ppt_min_eigenvalue(truth), ppt_min_eigenvalue(mle.state)});
  compare.add_row({std::string("concurrence"), concurrence(truth), concurrence(mle.state)});
  compare.add_row({std::string("log_likelihood_per_count"), std::nan(""), mle.log_likelihood});
  compare.add_row({std::string("iterations"), std::nan(""), static_cast<double>(mle.iterations)});
  compare.add_row({std::string("stationarity_residual"), std::nan(""), mle.gradient_norm});

  const double f = fidelity(truth, mle.state);
  out.checks.push_back(detail::condition("fidelity to the simulated state", f >= 0.995, f, ">= 0.995"));

  out.tables.push_back(std::move(counts));
  out.tables.push_back(std::move(estimate));
  out.tables.push_back(std::move(compare));
  out.tables.push_back(detail::summary_table("tomo_summary", out.checks));
  return out;
}

}  // namespace mmsim::cli
