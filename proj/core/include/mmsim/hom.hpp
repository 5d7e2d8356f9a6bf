#pragma once

#include <vector>

#include "mmsim/fock.hpp"

namespace mmsim {

struct HomParams {
  double csp_mean = 0.012;
  double pair_probability = 0.005;
  double heralding_efficiency = 0.19;
  /// Efficiency of the heralding (idler) detection.
  double idler_efficiency = 0.19;
  /// Fraction of the coherent pulse in the heralded photon's mode.
  double overlap = 1.0;
  ClickDetector detector{1.0, 0.0};

  void validate() const;
};

/// Photon-number distribution of the heralded signal: thermal pairs with P(>=1 pair) equal to
/// pair_probability, conditioned on an idler click, then heralding loss.
RVector heralded_signal_distribution(const HomParams& params, int n_max);

/// Coincidence probability behind a 50/50 splitter for phase-averaged inputs.
///
/// `a` and `b_matched` share a spatio-temporal mode and interfere; `b_unmatched` is
/// distinguishable from both. All three are photon-number distributions.
double coincidence_probability(const RVector& a, const RVector& b_matched,
                               const RVector& b_unmatched, const ClickDetector& detector);

struct HomRates {
  double parallel = 0.0;
  double perpendicular = 0.0;
};

HomRates hom_rates(const RVector& signal, double csp_mean, double overlap,
                   const ClickDetector& detector);

/// (R_perp - R_par) / R_perp. Throws UndefinedInputError when R_perp = 0.
double hom_visibility(const RVector& signal, double csp_mean, double overlap,
                      const ClickDetector& detector);
double hom_visibility(const HomParams& params);

/// Measured over expected visibility. Throws ModelInconsistencyError when v_measured > v_expected.
double overlap_ratio(double v_measured, double v_expected);

struct TemporalProfiles {
  /// Gaussian intensity FWHM of the coherent pulse (ns).
  double csp_fwhm = 2.0;
  /// Heralded-photon intensity exp(-|t| / coherence_time) (ns).
  double coherence_time = 1.9;
  /// Coincidence window centred on the pulse (ns).
  double window = 3.0;

  void validate() const;
};

/// Squared normalized amplitude overlap of the two profiles restricted to the window.
double temporal_overlap(const TemporalProfiles& profiles);

struct WindowPoint {
  double window = 0.0;
  double overlap = 0.0;
  double measured_visibility = 0.0;
};

std::vector<WindowPoint> overlap_vs_window(const TemporalProfiles& profiles,
                                           const std::vector<double>& windows,
                                           double expected_visibility);

/// CSP FWHM in (0, upper] at which temporal_overlap equals the target for the given window.
double calibrate_csp_fwhm(const TemporalProfiles& profiles, double target_overlap);

}  // namespace mmsim
