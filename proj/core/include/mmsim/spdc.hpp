#pragma once

// Detailed SPDC and click-detector model of the displaced polarization measurement,
// with a Monte-Carlo oracle that samples the thermal P-function directly.

#include <array>
#include <cstdint>
#include <utility>

#include "mmsim/polarization.hpp"
#include "mmsim/random.hpp"
#include "mmsim/types.hpp"

namespace mmsim {

struct DetailedParams {
  double squeezing = 0.07;
  /// Ratio between the thermal parameters of the two conditioned modes.
  double asymmetry = 0.95;
  double detector_efficiency = 0.6;
  double dark_count = 1e-5;
  double t1 = 0.995;
  double t2 = 0.995;
  double coupling = 0.023;
  /// Displacement size gamma^2.
  double displacement_sq = 0.046 * 13.3;
  /// Standard deviation of the relative phase between the two displacements (rad).
  double phase_sd = 0.05477225575051661;

  void validate() const;

  double tanh_g() const;
  double nbar() const;
  double mbar() const;
  /// Composite efficiency eta_d * t1^2 * t2^2 * coupling.
  double composite_efficiency() const;
  /// Back-displacement error 1 - V implied by the phase noise, sigma^2 / 2.
  double visibility_error() const;
};

/// Which exponent damps the double no-click term g.
enum class DampingExponent { kZeta, kZetaBar };
/// kAsPrinted: Alice's angle in the f denominator, Bob's in zeta-bar.
/// kTransmissionChain: Bob's angle in the f denominator, Alice's in zeta-bar.
enum class AngleConvention { kAsPrinted, kTransmissionChain };
enum class PhaseAverage { kClosedForm, kGaussHermite };

struct ModelReading {
  DampingExponent g_exponent = DampingExponent::kZetaBar;
  AngleConvention angles = AngleConvention::kTransmissionChain;
  PhaseAverage phase = PhaseAverage::kGaussHermite;
  int quadrature_nodes = 48;
};

/// Outcome order (Alice, Bob): (+1,+1), (+1,-1), (-1,+1), (-1,-1).
struct JointProbabilities {
  std::array<double, 4> raw{};
  std::array<double, 4> normalized{};
  /// Number of raw values clipped from [-tol, 0) or (1, 1+tol] into [0, 1].
  int clipped = 0;

  double correlator() const;
};

/// Two-mode-pair squeezed vacuum on modes (a, a_perp, b, b_perp).
class FourModeState {
 public:
  FourModeState(int n_max, CVector amplitudes);

  int n_max() const { return n_max_; }
  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t index(int a, int a_perp, int b, int b_perp) const;
  Complex amplitude(int a, int a_perp, int b, int b_perp) const;

 private:
  int n_max_;
  CVector amplitudes_;
};

/// Throws TruncationError when the discarded mass exceeds tol.truncation.
FourModeState spdc_amplitudes(double squeezing, int n_max, Tolerances tol = kDefaultTolerances);

/// Unnormalized conditional populations P(n_b, n_b_perp) for each Alice outcome.
struct ConditionalState {
  Eigen::MatrixXd plus;
  Eigen::MatrixXd minus;
  double plus_probability = 0.0;
  double minus_probability = 0.0;
};

/// Conditional state of (b, b_perp) as differences of thermal products.
/// Throws ModelInconsistencyError if a population is negative beyond tol.numeric.
ConditionalState conditional_state_coeffs(double squeezing, double asymmetry, double dark_count,
                                          int n_max, Tolerances tol = kDefaultTolerances);

/// Complex Gaussian with mean |gamma|^2 = nbar.
Complex thermal_p_sample(double nbar, Rng& rng);

/// Amplitudes after the memory and the imperfect back displacement for phase error phi.
std::pair<Complex, Complex> displaced_coherent_pair(Complex alpha, Complex beta,
                                                    const DetailedParams& params, double theta,
                                                    double phi);

/// No click in the theta' port and a click in the orthogonal port.
double click_prob_coherent(Complex alpha_hat, Complex beta_hat, double theta_prime,
                           double detector_efficiency);

JointProbabilities joint_probabilities(double theta, double theta_prime,
                                       const DetailedParams& params,
                                       const ModelReading& reading = {},
                                       Tolerances tol = kDefaultTolerances);

struct OracleEstimate {
  std::array<double, 4> mean{};
  std::array<double, 4> standard_error{};
  /// Set when an estimate is negative by more than three standard errors.
  bool flagged = false;

  JointProbabilities as_joint() const;
};

/// Requires n_samples >= 10^4. Deterministic for a given seed.
OracleEstimate monte_carlo_oracle(double theta, double theta_prime, const DetailedParams& params,
                                  int n_samples, std::uint64_t seed);

/// Fair-sampled CHSH value; Alice's angle is measured from the displacement polarization
/// and Bob's from Alice's analyzer.
double chsh_from_detailed(const ChshSettings& settings, const DetailedParams& params,
                          const ModelReading& reading = {});

/// Same combination evaluated with oracle estimates; point k uses derive_seed(seed, k).
double chsh_from_oracle(const ChshSettings& settings, const DetailedParams& params, int n_samples,
                        std::uint64_t seed);

}  // namespace mmsim
