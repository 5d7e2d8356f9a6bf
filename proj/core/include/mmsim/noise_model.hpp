#pragma once

#include <cstdint>
#include <vector>

#include "mmsim/polarization.hpp"
#include "mmsim/random.hpp"

namespace mmsim {

/// A measured value and its one-standard-deviation uncertainty.
struct Measured {
  double value = 0.0;
  double sd = 0.0;
};

/// Independently measured experiment parameters. Defaults are the published values.
struct ExperimentParams {
  Measured heralding_efficiency{0.19, 0.02};
  Measured first_bs_transmittance{0.995, 0.0};
  Measured memory_efficiency{0.046, 0.002};
  Measured back_displacement_visibility{0.9985, 0.0002};
  Measured micro_visibility{0.94, 0.0};
  Measured absorption{0.55, 0.0};
  Measured overlap_ratio{0.87, 0.0};
  /// Mean photon number of the back displacement per unit |alpha|^2.
  Measured mu_per_alpha_sq{1.0, 0.0};
  /// true: residual light is fully depolarized; false: it keeps the displacement polarization.
  bool depolarized_residual = true;

  /// Throws ValidationError when a value is outside its physical range.
  void validate() const;
};

/// Closed form of the noise-click probability.
double noise_click_prob(double mu, double eta, double visibility);
/// Direct partial sum of the Poisson-weighted series up to n_terms.
double noise_click_prob_series(double mu, double eta, double visibility, int n_terms = 2000);

/// Probability that no background photon leaks out; the sum starts at n = 1.
double no_leak_prob(double mu, double eta, double visibility);
double no_leak_prob_series(double mu, double eta, double visibility, int n_terms = 2000);

double signal_prob(const ExperimentParams& params, double no_leak);

/// Noise probability of the output mixture. Throws UndefinedInputError when both rates vanish.
double noise_fraction(double mu, const ExperimentParams& params);

double predict_werner_visibility(double alpha_sq, const ExperimentParams& params);

/// Two-qubit state after noise, idler first. Depolarized or H-polarized residual per params.
TwoQubitDensity predict_state(double alpha_sq, const ExperimentParams& params);

double excitations_from_alpha(double alpha_sq, double absorption);

struct Witnesses {
  double chsh = 0.0;
  double ppt = 0.0;
  double concurrence = 0.0;
};

/// Witness values at optimal equatorial settings for the predicted state.
Witnesses predict_witnesses(double alpha_sq, const ExperimentParams& params);

struct WitnessCurve {
  std::vector<double> alpha_sq;
  std::vector<double> excitations;
  std::vector<double> chsh;
  std::vector<double> ppt;
  std::vector<double> concurrence;
  std::vector<double> chsh_band;
  std::vector<double> ppt_band;
  std::vector<double> concurrence_band;
};

/// Draw a parameter set from independent truncated normals around the measured values.
ExperimentParams sample_params(const ExperimentParams& params, Rng& rng);

struct WitnessPoint {
  double alpha_sq = 0.0;
  double excitations = 0.0;
  Witnesses value;
  /// Sample standard deviation over parameter draws.
  Witnesses band;
};

WitnessPoint predict_witness_point(double alpha_sq, const ExperimentParams& params,
                                   int band_samples, Rng& rng);

/// Model curves over a grid. Point i samples its band from stream derive_seed(seed, i).
/// band_samples = 0 yields zero bands.
WitnessCurve predict_witness_curves(const std::vector<double>& alpha_sq_grid,
                                    const ExperimentParams& params, int band_samples,
                                    std::uint64_t seed);

}  // namespace mmsim
