#include <cmath>

#include "mmsim/cli/pool.hpp"
#include "mmsim/noise_model.hpp"
#include "runner_util.hpp"

namespace mmsim::cli {

namespace {

struct Anchor {
  const char* quantity;
  double alpha_sq;
  double measured;
  double measured_sd;
  double model_target;
  double model_tolerance;
  double agreement;
};

// Measured points of the micro-macro experiment, overlaid on the model curves.
constexpr Anchor kAnchors[] = {
    {"chsh", 0.0, 2.59, 0.03, 2.658, 0.001, 0.10},
    {"chsh", 13.3, 2.099, 0.031, 2.195, 0.005, 0.12},
    {"chsh", 42.0, 1.65, 0.05, 1.594, 0.005, 0.10},
    {"ppt", 86.0, -0.055, 0.010, -0.047, 0.003, 0.015},
};

}  // namespace

RunOutcome run_curves(const RunConfig& config, const RunOptions& options) {
  const ExperimentParams params = config.experiment();
  const std::vector<double> grid = config.reals("curves.alpha_sq");
  const long band_samples = config.integer("curves.band_samples");
  if (grid.empty()) throw ConfigError("key 'curves.alpha_sq': grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("key 'curves.alpha_sq': grid must be strictly increasing");
  }
  if (grid.front() < 0.0) throw ConfigError("key 'curves.alpha_sq': values must be >= 0");
  if (band_samples < 0) throw ConfigError("key 'curves.band_samples': must be >= 0");

  const auto points = parallel_map(grid.size(), options.jobs, [&](std::size_t i) {
    Rng rng = make_rng(options.seed, i);
    return predict_witness_point(grid[i], params, static_cast<int>(band_samples), rng);
  });

  RunOutcome out;
  ResultTable curves("curves", {{"alpha_sq", "photons"},
                                {"excitations", "photons"},
                                {"chsh", ""},
                                {"chsh_sd", ""},
                                {"ppt_min_eigenvalue", ""},
                                {"ppt_sd", ""},
                                {"concurrence", ""},
                                {"concurrence_sd", ""}});
  for (const WitnessPoint& p : points) {
    curves.add_row({p.alpha_sq, p.excitations, p.value.chsh, p.band.chsh, p.value.ppt, p.band.ppt,
                    p.value.concurrence, p.band.concurrence});
  }

  ResultTable anchors("curves_anchors", {{"quantity", ""},
                                         {"alpha_sq", "photons"},
                                         {"excitations", "photons"},
                                         {"measured", ""},
                                         {"measured_sd", ""},
                                         {"model", ""}});
  for (const Anchor& a : kAnchors) {
    const Witnesses w = predict_witnesses(a.alpha_sq, params);
    const double model = std::string(a.quantity) == "chsh" ? w.chsh : w.ppt;
    anchors.add_row({std::string(a.quantity), a.alpha_sq,
                     excitations_from_alpha(a.alpha_sq, params.absorption.value), a.measured,
                     a.measured_sd, model});
    const std::string label = std::string(a.quantity) + "(" + format_number(a.alpha_sq) + ")";
    out.checks.push_back(detail::within(label + " model", model, a.model_target, a.model_tolerance));
    out.checks.push_back(detail::within(label + " vs measured", model, a.measured, a.agreement));
  }

  double crossing = std::nan("");
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double s0 = points[i - 1].value.chsh, s1 = points[i].value.chsh;
    if (s0 >= 2.0 && s1 < 2.0) {
      crossing = grid[i - 1] + (s0 - 2.0) / (s0 - s1) * (grid[i] - grid[i - 1]);
      break;
    }
  }
  out.checks.push_back(detail::condition("chsh = 2 crossing", crossing > 13.3 && crossing < 42.0, crossing,
                                         "between 13.3 and 42"));

  Chart chsh{"CHSH parameter", "|alpha|^2", "S", {}};
  Chart ppt{"Partial-transpose minimum eigenvalue", "|alpha|^2", "min eigenvalue", {}};
  Series s_model{"model", curves.column("alpha_sq"), curves.column("chsh"), curves.column("chsh_sd"), false};
  Series p_model{"model", curves.column("alpha_sq"), curves.column("ppt_min_eigenvalue"),
                 curves.column("ppt_sd"), false};
  Series s_meas{"measured", {}, {}, {}, true}, p_meas{"measured", {}, {}, {}, true};
  for (const Anchor& a : kAnchors) {
    Series& s = std::string(a.quantity) == "chsh" ? s_meas : p_meas;
    s.x.push_back(a.alpha_sq);
    s.y.push_back(a.measured);
  }
  chsh.series = {s_model, s_meas};
  ppt.series = {p_model, p_meas};
  out.charts.emplace_back("curves_chsh", chsh);
  out.charts.emplace_back("curves_ppt", ppt);

  out.tables.push_back(std::move(curves));
  out.tables.push_back(std::move(anchors));
  out.tables.push_back(detail::summary_table("curves_summary", out.checks));
  return out;
}

}  // namespace mmsim::cli
