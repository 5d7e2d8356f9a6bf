#pragma once

// Two-qubit polarization states, Bell/Werner constructors and entanglement witnesses.
// Basis order is |HH>, |HV>, |VH>, |VV>.

#include <array>

#include <Eigen/Dense>

#include "mmsim/types.hpp"

namespace mmsim {

using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

class TwoQubitDensity {
 public:
  /// Validates Hermiticity, unit trace and positivity to tol.numeric.
  explicit TwoQubitDensity(const Matrix4c& matrix, Tolerances tol = kDefaultTolerances);

  const Matrix4c& matrix() const { return matrix_; }

  static TwoQubitDensity product(const Vector2c& a, const Vector2c& b);

 private:
  Matrix4c matrix_;
};

/// Analyzer setting; its +1 eigenstate is cos(theta)|H> + exp(i chi) sin(theta)|V>.
///
/// chi = 0 (the default) keeps the setting in the linear-polarization plane used for all
/// CHSH tests; chi = pi/2 reaches the circular states needed for tomography.
class MeasurementSetting {
 public:
  explicit MeasurementSetting(double theta = 0.0, double chi = 0.0);

  double theta() const { return theta_; }
  double chi() const { return chi_; }

  Vector2c plus_state() const;
  Vector2c minus_state() const;
  /// +1/-1 observable |+><+| - |-><-|.
  Matrix2c observable() const;
  /// Bloch vector (x, y, z) with z = <H|.|H> - <V|.|V>.
  Eigen::Vector3d bloch() const;

  static MeasurementSetting from_bloch(const Eigen::Vector3d& direction);

 private:
  double theta_;
  double chi_;
};

/// Settings entering S = |E(a,b) + E(a,b') + E(a',b) - E(a',b')|.
struct ChshSettings {
  MeasurementSetting a, a_prime, b, b_prime;
};

/// a = 45 deg, a' = 0 deg, b = 22.5 deg, b' = 67.5 deg; S = 2 sqrt(2) for the Bell state.
ChshSettings default_chsh_settings();

/// (|HH> + |VV>)/sqrt(2).
TwoQubitDensity bell_state();

/// W |psi><psi| + (1 - W) I/4.
TwoQubitDensity werner_state(double visibility);

/// Tr[rho (A x B)].
double correlator(const TwoQubitDensity& rho, const MeasurementSetting& a,
                  const MeasurementSetting& b);

double chsh_value(const TwoQubitDensity& rho, const ChshSettings& settings);

/// Horodecki bound 2 sqrt(t1^2 + t2^2) from the correlation matrix.
double chsh_maximum(const TwoQubitDensity& rho);

/// Correlation matrix T_ij = Tr[rho sigma_i x sigma_j], i,j in {x,y,z}.
Eigen::Matrix3d correlation_matrix(const TwoQubitDensity& rho);

/// Numerically optimized CHSH settings (alternating maximization with restarts).
ChshSettings optimize_chsh_settings(const TwoQubitDensity& rho, int restarts = 8,
                                    unsigned long long seed = 1);

/// Minimum eigenvalue of the partial transpose on the second qubit.
double ppt_min_eigenvalue(const TwoQubitDensity& rho);

/// Wootters concurrence; throws ValidationError for non-PSD input.
double concurrence(const TwoQubitDensity& rho, Tolerances tol = kDefaultTolerances);

/// Fidelity <psi|rho|psi>-style overlap for a pure target, or Uhlmann fidelity in general.
double fidelity(const TwoQubitDensity& target, const TwoQubitDensity& rho);

struct EquivalenceCheck {
  bool equivalent;
  double residual;
};

/// Checks (|HH> + e^{i theta}|VV>)/sqrt(2) == (|psi>|phi> + e^{i theta}|psi_perp>|phi_perp>)/sqrt(2)
/// with psi = a|H> + b|V> and phi = conj(a)|H> + e^{i theta} conj(b)|V>.
EquivalenceCheck arbitrary_polarization_equivalence_check(Complex a, Complex b, double theta,
                                                          Tolerances tol = kDefaultTolerances);

}  // namespace mmsim
