#include "mmsim/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmsim/errors.hpp"
#include "mmsim/linalg.hpp"

namespace mmsim {

namespace {

void require_unit(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

void require_mu(double mu) {
  if (!(mu >= 0.0)) throw ValidationError("mean photon number must be >= 0");
}

double leak_base(double eta, double visibility) {
  require_unit("memory efficiency", eta);
  require_unit("visibility", visibility);
  return 1.0 - 2.0 * eta * (1.0 - visibility);
}

double poisson_weight(double mu, int n) {
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mu + n * std::log(mu) - linalg::log_factorial(n));
}

double sd_of(double sum, double sum_sq, int n) {
  if (n < 2) return 0.0;
  const double mean = sum / n;
  return std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)));
}

// Without a displacement no background light exists and the state is the micro-micro one;
// the ratio itself would be 0/0 there because the no-leak sum starts at one photon.
double output_noise(double alpha_sq, const ExperimentParams& params) {
  if (!(alpha_sq >= 0.0)) throw ValidationError("|alpha|^2 must be >= 0");
  if (alpha_sq == 0.0) return 0.0;
  return noise_fraction(params.mu_per_alpha_sq.value * alpha_sq, params);
}

}  // namespace

void ExperimentParams::validate() const {
  require_unit("heralding efficiency", heralding_efficiency.value);
  require_unit("first beam-splitter transmittance", first_bs_transmittance.value);
  require_unit("memory efficiency", memory_efficiency.value);
  require_unit("back-displacement visibility", back_displacement_visibility.value);
  require_unit("micro-micro visibility", micro_visibility.value);
  require_unit("absorption", absorption.value);
  require_unit("overlap ratio", overlap_ratio.value);
  if (!(mu_per_alpha_sq.value > 0.0)) throw ValidationError("mu mapping coefficient must be > 0");
  for (const Measured* m : {&heralding_efficiency, &first_bs_transmittance, &memory_efficiency,
                            &back_displacement_visibility, &micro_visibility, &absorption,
                            &overlap_ratio, &mu_per_alpha_sq}) {
    if (!(m->sd >= 0.0)) throw ValidationError("standard deviations must be >= 0");
  }
}

double noise_click_prob(double mu, double eta, double visibility) {
  require_mu(mu);
  leak_base(eta, visibility);
  return -std::expm1(-2.0 * mu * eta * (1.0 - visibility));
}

double noise_click_prob_series(double mu, double eta, double visibility, int n_terms) {
  require_mu(mu);
  const double x = leak_base(eta, visibility);
  double sum = 0.0;
  for (int n = 1; n <= n_terms; ++n) sum += poisson_weight(mu, n) * (1.0 - std::pow(x, n));
  return sum;
}

double no_leak_prob(double mu, double eta, double visibility) {
  require_mu(mu);
  leak_base(eta, visibility);
  return std::exp(-2.0 * mu * eta * (1.0 - visibility)) - std::exp(-mu);
}

double no_leak_prob_series(double mu, double eta, double visibility, int n_terms) {
  require_mu(mu);
  const double x = leak_base(eta, visibility);
  double sum = 0.0;
  for (int n = 1; n <= n_terms; ++n) sum += poisson_weight(mu, n) * std::pow(x, n);
  return sum;
}

double signal_prob(const ExperimentParams& params, double no_leak) {
  return params.heralding_efficiency.value * params.first_bs_transmittance.value *
         params.memory_efficiency.value * no_leak;
}

double noise_fraction(double mu, const ExperimentParams& params) {
  const double eta = params.memory_efficiency.value;
  const double v = params.back_displacement_visibility.value;
  const double pn = noise_click_prob(mu, eta, v);
  const double ps = signal_prob(params, no_leak_prob(mu, eta, v));
  if (ps + pn <= 0.0) {
    throw UndefinedInputError("noise fraction undefined: signal and noise probabilities both vanish");
  }
  return pn / (ps + pn);
}

double predict_werner_visibility(double alpha_sq, const ExperimentParams& params) {
  return params.micro_visibility.value * (1.0 - output_noise(alpha_sq, params));
}

TwoQubitDensity predict_state(double alpha_sq, const ExperimentParams& params) {
  const double eps = output_noise(alpha_sq, params);
  const Matrix4c micro = werner_state(params.micro_visibility.value).matrix();
  Matrix4c noise = Matrix4c::Identity() / 4.0;
  if (!params.depolarized_residual) {
    // Idler maximally mixed, signal in the displacement polarization |H>.
    noise.setZero();
    noise(0, 0) = 0.5;
    noise(2, 2) = 0.5;
  }
  return TwoQubitDensity((1.0 - eps) * micro + eps * noise);
}

double excitations_from_alpha(double alpha_sq, double absorption) {
  require_unit("absorption", absorption);
  if (!(alpha_sq >= 0.0)) throw ValidationError("|alpha|^2 must be >= 0");
  return absorption * alpha_sq;
}

Witnesses predict_witnesses(double alpha_sq, const ExperimentParams& params) {
  if (params.depolarized_residual) {
    const double w = predict_werner_visibility(alpha_sq, params);
    return {2.0 * std::sqrt(2.0) * w, (1.0 - 3.0 * w) / 4.0, std::max(0.0, (3.0 * w - 1.0) / 2.0)};
  }
  const TwoQubitDensity rho = predict_state(alpha_sq, params);
  return {chsh_maximum(rho), ppt_min_eigenvalue(rho), concurrence(rho)};
}

ExperimentParams sample_params(const ExperimentParams& params, Rng& rng) {
  ExperimentParams out = params;
  auto draw = [&rng](Measured& m, double lo, double hi) {
    if (m.sd > 0.0) m.value = std::clamp(m.value + m.sd * standard_normal(rng), lo, hi);
  };
  draw(out.heralding_efficiency, 0.0, 1.0);
  draw(out.first_bs_transmittance, 0.0, 1.0);
  draw(out.memory_efficiency, 0.0, 1.0);
  draw(out.back_displacement_visibility, 0.0, 1.0);
  draw(out.micro_visibility, 0.0, 1.0);
  draw(out.absorption, 0.0, 1.0);
  draw(out.overlap_ratio, 0.0, 1.0);
  draw(out.mu_per_alpha_sq, 1e-12, 1e300);
  return out;
}

WitnessPoint predict_witness_point(double alpha_sq, const ExperimentParams& params,
                                   int band_samples, Rng& rng) {
  if (band_samples < 0) throw ValidationError("band sample count must be >= 0");
  WitnessPoint point;
  point.alpha_sq = alpha_sq;
  point.excitations = excitations_from_alpha(alpha_sq, params.absorption.value);
  point.value = predict_witnesses(alpha_sq, params);
  double s1 = 0, s2 = 0, p1 = 0, p2 = 0, c1 = 0, c2 = 0;
  for (int k = 0; k < band_samples; ++k) {
    const Witnesses ws = predict_witnesses(alpha_sq, sample_params(params, rng));
    s1 += ws.chsh;
    s2 += ws.chsh * ws.chsh;
    p1 += ws.ppt;
    p2 += ws.ppt * ws.ppt;
    c1 += ws.concurrence;
    c2 += ws.concurrence * ws.concurrence;
  }
  point.band = {sd_of(s1, s2, band_samples), sd_of(p1, p2, band_samples),
                sd_of(c1, c2, band_samples)};
  return point;
}

WitnessCurve predict_witness_curves(const std::vector<double>& alpha_sq_grid,
                                    const ExperimentParams& params, int band_samples,
                                    std::uint64_t seed) {
  if (alpha_sq_grid.empty()) throw ValidationError("|alpha|^2 grid is empty");
  if (band_samples < 0) throw ValidationError("band sample count must be >= 0");
  params.validate();
  for (std::size_t i = 1; i < alpha_sq_grid.size(); ++i) {
    if (!(alpha_sq_grid[i] > alpha_sq_grid[i - 1])) {
      throw ValidationError("|alpha|^2 grid must be strictly increasing");
    }
  }
  WitnessCurve curve;
  for (std::size_t i = 0; i < alpha_sq_grid.size(); ++i) {
    Rng rng = make_rng(seed, i);
    const WitnessPoint w = predict_witness_point(alpha_sq_grid[i], params, band_samples, rng);
    curve.alpha_sq.push_back(w.alpha_sq);
    curve.excitations.push_back(w.excitations);
    curve.chsh.push_back(w.value.chsh);
    curve.ppt.push_back(w.value.ppt);
    curve.concurrence.push_back(w.value.concurrence);
    curve.chsh_band.push_back(w.band.chsh);
    curve.ppt_band.push_back(w.band.ppt);
    curve.concurrence_band.push_back(w.band.concurrence);
  }
  return curve;
}

}  // namespace mmsim
