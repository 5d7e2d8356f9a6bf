#include <algorithm>
#include <cmath>

#include "mmsim/cli/pool.hpp"
#include "mmsim/spdc.hpp"
#include "runner_util.hpp"

namespace mmsim::cli {

namespace {

const char* const kOutcomes[] = {"++", "+-", "-+", "--"};

const char* exponent_name(DampingExponent e) { return e == DampingExponent::kZeta ? "zeta" : "zeta_bar"; }
const char* angle_name(AngleConvention a) { return a == AngleConvention::kAsPrinted ? "printed" : "chain"; }

double degrees(double d) { return d * kPi / 180.0; }

}  // namespace

RunOutcome run_detailed(const RunConfig& config, const RunOptions& options) {
  const DetailedParams params = config.detailed();
  const ModelReading reading = config.reading();
  const long samples = config.integer("detailed.oracle_samples");
  const std::vector<double> angles = config.reals("detailed.angles_deg");
  const std::vector<double> gammas = config.reals("detailed.displacement_sq_grid");
  if (samples < 10000 || samples > 100000000) {
    throw ConfigError("key 'detailed.oracle_samples': must lie in [10000, 100000000]");
  }
  if (angles.empty()) throw ConfigError("key 'detailed.angles_deg': grid is empty");
  for (double g : gammas) {
    if (!(g >= 0.0)) throw ConfigError("key 'detailed.displacement_sq_grid': values must be >= 0");
  }

  const std::uint64_t grid_seed = derive_seed(options.seed, 0);
  const std::uint64_t chsh_seed = derive_seed(options.seed, 1);
  const std::size_t na = angles.size();
  const auto oracle = parallel_map(na * na, options.jobs, [&](std::size_t k) {
    return monte_carlo_oracle(degrees(angles[k / na]), degrees(angles[k % na]), params,
                              static_cast<int>(samples), derive_seed(grid_seed, k));
  });

  RunOutcome out;
  ResultTable grid("detailed_grid", {{"theta", "deg"},
                                     {"theta_prime", "deg"},
                                     {"outcome", ""},
                                     {"analytic_raw", ""},
                                     {"analytic_normalized", ""},
                                     {"oracle_mean", ""},
                                     {"oracle_se", ""},
                                     {"z", ""}});
  ResultTable readings("detailed_readings",
                       {{"g_exponent", ""}, {"angles", ""}, {"max_abs_z", ""}, {"within_3se", ""}});
  bool any_flagged = false;
  for (const OracleEstimate& o : oracle) any_flagged = any_flagged || o.flagged;

  double selected_z = 0.0;
  bool any_pass = false;
  std::string passing;
  for (DampingExponent e : {DampingExponent::kZeta, DampingExponent::kZetaBar}) {
    for (AngleConvention a : {AngleConvention::kAsPrinted, AngleConvention::kTransmissionChain}) {
      ModelReading r = reading;
      r.g_exponent = e;
      r.angles = a;
      const bool selected = e == reading.g_exponent && a == reading.angles;
      double worst = 0.0;
      for (std::size_t k = 0; k < na * na; ++k) {
        const double th = angles[k / na], tp = angles[k % na];
        const JointProbabilities jp = joint_probabilities(degrees(th), degrees(tp), params, r);
        for (int o = 0; o < 4; ++o) {
          const double se = oracle[k].standard_error[o];
          const double diff = jp.raw[o] - oracle[k].mean[o];
          const double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
          worst = std::max(worst, std::abs(z));
          if (selected) {
            grid.add_row({th, tp, std::string(kOutcomes[o]), jp.raw[o], jp.normalized[o], oracle[k].mean[o],
                          se, z});
          }
        }
      }
      const bool pass = worst <= 3.0;
      if (pass && !any_pass) passing = std::string(exponent_name(e)) + "/" + angle_name(a);
      any_pass = any_pass || pass;
      if (selected) selected_z = worst;
      readings.add_row({std::string(exponent_name(e)), std::string(angle_name(a)), worst,
                        std::string(pass ? "yes" : "no")});
    }
  }

  const ChshSettings settings = default_chsh_settings();
  const auto chsh_rows = parallel_map(gammas.size(), options.jobs, [&](std::size_t i) {
    DetailedParams p = params;
    p.displacement_sq = gammas[i];
    return std::array<double, 2>{chsh_from_detailed(settings, p, reading),
                                 chsh_from_oracle(settings, p, static_cast<int>(samples),
                                                  derive_seed(chsh_seed, i))};
  });
  ResultTable chsh("detailed_chsh", {{"displacement_sq", "photons"},
                                     {"chsh_analytic", ""},
                                     {"chsh_oracle", ""},
                                     {"delta", ""}});
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    chsh.add_row({gammas[i], chsh_rows[i][0], chsh_rows[i][1], chsh_rows[i][0] - chsh_rows[i][1]});
  }

  out.checks.push_back(detail::condition("some reading within 3 SE", any_pass, any_pass ? 1.0 : 0.0,
                                         any_pass ? "first passing: " + passing : "none"));
  out.checks.push_back(detail::condition("selected reading max |z|", selected_z <= 3.0, selected_z,
                                         std::string(exponent_name(reading.g_exponent)) + "/" +
                                             angle_name(reading.angles) + " <= 3"));
  out.checks.push_back(detail::condition("no oracle mean below -3 SE", !any_flagged, any_flagged ? 1.0 : 0.0,
                                         "oracle sanity"));

  Chart chart{"CHSH parameter of the detailed model", "displacement |gamma|^2", "S", {}};
  chart.series.push_back({"analytic", gammas, chsh.column("chsh_analytic"), {}, false});
  chart.series.push_back({"Monte Carlo", gammas, chsh.column("chsh_oracle"), {}, true});
  out.charts.emplace_back("detailed_chsh", chart);

  out.tables.push_back(std::move(grid));
  out.tables.push_back(std::move(readings));
  out.tables.push_back(std::move(chsh));
  out.tables.push_back(detail::summary_table("detailed_summary", out.checks));
  return out;
}

}  // namespace mmsim::cli
