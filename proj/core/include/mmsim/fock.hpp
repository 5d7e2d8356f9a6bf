#pragma once

// Single- and two-mode photon-number (Fock) space algebra on a truncated basis
// |0>, |1>, ..., |n_max>.

#include "mmsim/types.hpp"

namespace mmsim {

class DensityOperator;

/// Pure state on a truncated single-mode Fock space.
class TruncatedState {
 public:
  /// Takes the amplitudes c_0..c_{n_max}; requires n_max >= 1 and norm <= 1.
  explicit TruncatedState(CVector amplitudes, Tolerances tol = kDefaultTolerances);

  static TruncatedState fock(int n, int n_max);

  int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int n) const { return amplitudes_[n]; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }
  double mean_photon_number() const;

  DensityOperator density() const;

 private:
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive single-mode operator on a truncated Fock space.
class DensityOperator {
 public:
  /// Validates shape, Hermiticity (tol.numeric) and trace (tol.truncation).
  explicit DensityOperator(CMatrix matrix, Tolerances tol = kDefaultTolerances);

  static DensityOperator fock(int n, int n_max);
  /// Bose-Einstein state with the given mean photon number.
  static DensityOperator thermal(double mean, int n_max, Tolerances tol = kDefaultTolerances);

  int n_max() const { return static_cast<int>(matrix_.rows()) - 1; }
  const CMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }
  double mean_photon_number() const;
  double min_eigenvalue() const;

  /// Throws ValidationError unless the minimum eigenvalue is >= -tol.numeric.
  void require_positive(Tolerances tol = kDefaultTolerances) const;

 private:
  CMatrix matrix_;
};

/// Non-photon-number-resolving detector: no-click POVM (1 - p_dc)(1 - eta)^n.
class ClickDetector {
 public:
  ClickDetector(double efficiency, double dark_count = 0.0);

  double efficiency() const { return efficiency_; }
  double dark_count() const { return dark_count_; }

  /// Diagonal of the no-click POVM element on photon numbers 0..n_max.
  RVector no_click_weights(int n_max) const;

 private:
  double efficiency_;
  double dark_count_;
};

/// Passive linear-optics transform on mode amplitudes: out = U * in.
///
/// In the Schrodinger picture a_j^dagger -> sum_i U(i, j) b_i^dagger.
class ModeTransform {
 public:
  explicit ModeTransform(CMatrix unitary, Tolerances tol = kDefaultTolerances);

  int modes() const { return static_cast<int>(unitary_.rows()); }
  const CMatrix& matrix() const { return unitary_; }

  /// Applies the transform to coherent-state amplitudes.
  CVector apply(const CVector& amplitudes) const;

  /// Applies a two-mode transform to Fock coefficients c(n1, n2).
  ///
  /// The output is (N+1) x (N+1) with N the largest total photon number of the input,
  /// so no amplitude is lost to truncation.
  CMatrix apply_two_mode(const CMatrix& coefficients) const;

  /// Two-mode operator on the basis |n1, n2> (index n1 * (n_max + 1) + n2).
  /// Exact on the subspace n1 + n2 <= n_max; columns with larger totals are truncated.
  CMatrix fock_operator(int n_max) const;

 private:
  CMatrix unitary_;
};

/// Beam splitter with amplitude transmission sqrt(T):
/// (alpha, beta) -> (sqrt(T) alpha + sqrt(1-T) beta, -sqrt(1-T) alpha + sqrt(T) beta).
ModeTransform beam_splitter(double transmittance);

/// Phase shift exp(i phi) on the second of two modes.
ModeTransform phase_shift(double phi);

/// Polarization analyzer at angle theta acting on (b, b_perp):
/// outputs cos(theta) b + sin(theta) b_perp and sin(theta) b - cos(theta) b_perp.
ModeTransform polarization_analyzer(double theta);

/// P(N > n_max) for a Poisson distribution of the given mean.
double poisson_tail(double mean, int n_max);

/// Coherent state; throws TruncationError if the Poisson tail beyond n_max exceeds tol.truncation.
TruncatedState coherent_state(Complex alpha, int n_max, Tolerances tol = kDefaultTolerances);

/// D(alpha) = exp(alpha a^dagger - conj(alpha) a) restricted to photon numbers 0..n_max.
///
/// The exponential is evaluated on an enlarged working space and cropped, so columns whose
/// displaced support stays below n_max are exact to round-off. Throws TruncationError when
/// D(alpha)|0> itself does not fit.
CMatrix displacement_operator(Complex alpha, int n_max, Tolerances tol = kDefaultTolerances);

/// D(alpha)|psi>; throws TruncationError if more than tol.truncation of the norm leaves the space.
TruncatedState displace(const TruncatedState& state, Complex alpha,
                        Tolerances tol = kDefaultTolerances);

/// Pure loss with transmission eta (amplitude damping): |alpha> -> |sqrt(eta) alpha>.
DensityOperator loss_channel(double eta, const DensityOperator& state);

double no_click_probability(const ClickDetector& detector, const DensityOperator& state);
double click_probability(const ClickDetector& detector, const DensityOperator& state);

RVector photon_number_distribution(const TruncatedState& state);
RVector photon_number_distribution(const DensityOperator& state);

}  // namespace mmsim
