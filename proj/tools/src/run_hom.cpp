#include <algorithm>
#include <cmath>

#include "mmsim/cli/pool.hpp"
#include "mmsim/errors.hpp"
#include "mmsim/hom.hpp"
#include "runner_util.hpp"

namespace mmsim::cli {

namespace {
constexpr int kSignalCutoff = 8;
}

RunOutcome run_hom(const RunConfig& config, const RunOptions& options) {
  const HomParams params = config.hom();
  const TemporalProfiles profiles = config.profiles();
  const std::vector<double> mus = config.reals("hom.mu");
  const std::vector<double> windows = config.reals("hom.windows_ns");
  const double measured = config.real("hom.measured_visibility");
  if (mus.empty()) throw ConfigError("key 'hom.mu': grid is empty");
  for (double m : mus) {
    if (!(m > 0.0)) throw ConfigError("key 'hom.mu': values must be > 0");
  }
  for (double w : windows) {
    if (!(w > 0.0)) throw ConfigError("key 'hom.windows_ns': values must be > 0");
  }
  if (!(measured >= 0.0 && measured <= 1.0)) {
    throw ConfigError("key 'hom.measured_visibility': must lie in [0, 1]");
  }

  const RVector signal = heralded_signal_distribution(params, kSignalCutoff);
  const auto rates = parallel_map(mus.size(), options.jobs, [&](std::size_t i) {
    return hom_rates(signal, mus[i], params.overlap, params.detector);
  });

  RunOutcome out;
  ResultTable by_mu("hom_mu", {{"csp_mean", "photons"},
                               {"coincidence_parallel", ""},
                               {"coincidence_perpendicular", ""},
                               {"visibility", ""}});
  std::vector<double> vis;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double v = (rates[i].perpendicular - rates[i].parallel) / rates[i].perpendicular;
    vis.push_back(v);
    by_mu.add_row({mus[i], rates[i].parallel, rates[i].perpendicular, v});
  }

  const double expected = hom_visibility(params);
  const auto window_points = overlap_vs_window(profiles, windows, expected);
  ResultTable by_window("hom_window",
                        {{"window", "ns"}, {"temporal_overlap", ""}, {"predicted_visibility", ""}});
  for (const WindowPoint& w : window_points) by_window.add_row({w.window, w.overlap, w.measured_visibility});

  out.checks.push_back(detail::within("expected visibility", expected, 0.85, 0.03));
  double ratio = std::nan("");
  try {
    ratio = overlap_ratio(measured, expected);
  } catch (const ModelInconsistencyError&) {
  }
  out.checks.push_back(detail::condition("overlap ratio measured/expected", std::isfinite(ratio), ratio,
                                         "measured <= expected"));
  out.checks.push_back(detail::within("overlap ratio at 0.74 / 0.85", overlap_ratio(0.74, 0.85), 0.8706, 5e-5));
  const auto peak = std::max_element(vis.begin(), vis.end()) - vis.begin();
  out.checks.push_back(detail::condition("visibility has interior maximum in mu",
                                         peak > 0 && peak + 1 < static_cast<long>(vis.size()),
                                         mus[static_cast<std::size_t>(peak)], "argmax strictly inside grid"));
  const double xi = temporal_overlap(profiles);
  out.checks.push_back(detail::informational(
      detail::condition("temporal overlap at window", true, xi, "csp fwhm " + format_number(profiles.csp_fwhm) + " ns")));
  if (std::isfinite(ratio) && ratio > 0.0 && ratio < 1.0) {
    double fwhm = std::nan("");
    try {
      fwhm = calibrate_csp_fwhm(profiles, ratio);
    } catch (const Error&) {
    }
    out.checks.push_back(detail::informational(
        detail::condition("csp fwhm matching overlap ratio", std::isfinite(fwhm), fwhm, "ns")));
  }

  Chart mu_chart{"Two-photon interference visibility", "coherent-pulse mean photon number", "V", {}};
  mu_chart.series.push_back({"model", mus, vis, {}, false});
  mu_chart.series.push_back({"measured", {params.csp_mean}, {measured}, {}, true});
  out.charts.emplace_back("hom_mu", mu_chart);
  Chart w_chart{"Visibility against coincidence window", "window (ns)", "V", {}};
  w_chart.series.push_back({"model", by_window.column("window"), by_window.column("predicted_visibility"), {}, false});
  out.charts.emplace_back("hom_window", w_chart);

  out.tables.push_back(std::move(by_mu));
  out.tables.push_back(std::move(by_window));
  out.tables.push_back(detail::summary_table("hom_summary", out.checks));
  return out;
}

}  // namespace mmsim::cli
