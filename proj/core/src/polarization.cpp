#include "mmsim/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmsim/errors.hpp"
#include "mmsim/linalg.hpp"
#include "mmsim/random.hpp"

namespace mmsim {

namespace {

Matrix2c pauli(int i) {
  Matrix2c s;
  switch (i) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Vector4cd kron(const Vector2c& a, const Vector2c& b) {
  Eigen::Vector4cd out;
  out << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
  return out;
}

Eigen::Vector3d normalized_or(const Eigen::Vector3d& v, const Eigen::Vector3d& fallback) {
  const double n = v.norm();
  return n > 1e-14 ? Eigen::Vector3d(v / n) : fallback;
}

Eigen::Vector3d random_direction(Rng& rng) {
  Eigen::Vector3d v(standard_normal(rng), standard_normal(rng), standard_normal(rng));
  return normalized_or(v, Eigen::Vector3d::UnitZ());
}

}  // namespace

// ---------------------------------------------------------------------------

TwoQubitDensity::TwoQubitDensity(const Matrix4c& matrix, Tolerances tol) : matrix_(matrix) {
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.numeric) {
    throw ValidationError("two-qubit density not Hermitian (error " + std::to_string(herm) + ")");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol.numeric) {
    throw ValidationError("two-qubit density trace " + std::to_string(tr) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (matrix_ + matrix_.adjoint()),
                                             Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.numeric) {
    throw ValidationError("two-qubit density has negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
  }
}

TwoQubitDensity TwoQubitDensity::product(const Vector2c& a, const Vector2c& b) {
  const Eigen::Vector4cd v = kron(a.normalized(), b.normalized());
  return TwoQubitDensity(v * v.adjoint());
}

MeasurementSetting::MeasurementSetting(double theta, double chi) {
  constexpr double kTwoPi = 2.0 * kPi;
  theta_ = std::fmod(theta, kTwoPi);
  if (theta_ < 0.0) theta_ += kTwoPi;
  chi_ = chi;
}

Vector2c MeasurementSetting::plus_state() const {
  return Vector2c(std::cos(theta_), std::polar(std::sin(theta_), chi_));
}

Vector2c MeasurementSetting::minus_state() const {
  return Vector2c(-std::sin(theta_), std::polar(std::cos(theta_), chi_));
}

Matrix2c MeasurementSetting::observable() const {
  const Vector2c p = plus_state();
  const Vector2c m = minus_state();
  return p * p.adjoint() - m * m.adjoint();
}

Eigen::Vector3d MeasurementSetting::bloch() const {
  const double s = std::sin(2.0 * theta_);
  return {s * std::cos(chi_), s * std::sin(chi_), std::cos(2.0 * theta_)};
}

MeasurementSetting MeasurementSetting::from_bloch(const Eigen::Vector3d& direction) {
  const Eigen::Vector3d n = normalized_or(direction, Eigen::Vector3d::UnitZ());
  const double polar = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double azimuth = std::atan2(n.y(), n.x());
  return MeasurementSetting(0.5 * polar, azimuth);
}

ChshSettings default_chsh_settings() {
  const double deg = kPi / 180.0;
  return {MeasurementSetting(45.0 * deg), MeasurementSetting(0.0),
          MeasurementSetting(22.5 * deg), MeasurementSetting(67.5 * deg)};
}

TwoQubitDensity bell_state() { return werner_state(1.0); }

TwoQubitDensity werner_state(double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw ValidationError("Werner visibility must lie in [0, 1]");
  }
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  const Matrix4c m = visibility * (psi * psi.adjoint()) +
                     (1.0 - visibility) * 0.25 * Matrix4c::Identity();
  return TwoQubitDensity(m);
}

double correlator(const TwoQubitDensity& rho, const MeasurementSetting& a,
                  const MeasurementSetting& b) {
  return (rho.matrix() * kron(a.observable(), b.observable())).trace().real();
}

double chsh_value(const TwoQubitDensity& rho, const ChshSettings& s) {
  return std::abs(correlator(rho, s.a, s.b) + correlator(rho, s.a, s.b_prime) +
                  correlator(rho, s.a_prime, s.b) - correlator(rho, s.a_prime, s.b_prime));
}

Eigen::Matrix3d correlation_matrix(const TwoQubitDensity& rho) {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = (rho.matrix() * kron(pauli(i), pauli(j))).trace().real();
  return t;
}

double chsh_maximum(const TwoQubitDensity& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, ev[1] + ev[2]));
}

ChshSettings optimize_chsh_settings(const TwoQubitDensity& rho, int restarts,
                                    unsigned long long seed) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  Rng rng(derive_seed(seed, 0));

  double best_value = -1.0;
  ChshSettings best = default_chsh_settings();
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Eigen::Vector3d b = random_direction(rng);
    Eigen::Vector3d bp = random_direction(rng);
    Eigen::Vector3d a = Eigen::Vector3d::UnitZ(), ap = Eigen::Vector3d::UnitX();
    double previous = -1.0;
    for (int it = 0; it < 500; ++it) {
      a = normalized_or(t * (b + bp), a);
      ap = normalized_or(t * (b - bp), ap);
      b = normalized_or(t.transpose() * (a + ap), b);
      bp = normalized_or(t.transpose() * (a - ap), bp);
      const double value = a.dot(t * (b + bp)) + ap.dot(t * (b - bp));
      if (std::abs(value - previous) < 1e-15) break;
      previous = value;
    }
    ChshSettings s{MeasurementSetting::from_bloch(a), MeasurementSetting::from_bloch(ap),
                   MeasurementSetting::from_bloch(b), MeasurementSetting::from_bloch(bp)};
    const double v = chsh_value(rho, s);
    if (v > best_value) {
      best_value = v;
      best = s;
    }
  }
  return best;
}

double ppt_min_eigenvalue(const TwoQubitDensity& rho) {
  const Matrix4c& m = rho.matrix();
  Matrix4c pt;
  // <i j|rho^{T_B}|k l> = <i l|rho|k j>
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) pt(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double concurrence(const TwoQubitDensity& rho, Tolerances tol) {
  const Matrix4c& m = rho.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix4c> check(m, Eigen::EigenvaluesOnly);
  if (check.eigenvalues().minCoeff() < -tol.numeric) {
    throw ValidationError("concurrence requires a positive semidefinite state");
  }
  const Matrix4c yy = kron(pauli(1), pauli(1));
  const Matrix4c flipped = yy * m.conjugate() * yy;
  const CMatrix root = linalg::sqrt_psd(CMatrix(m));
  const CMatrix r = root * CMatrix(flipped) * root;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double fidelity(const TwoQubitDensity& target, const TwoQubitDensity& rho) {
  const CMatrix root = linalg::sqrt_psd(CMatrix(target.matrix()));
  const CMatrix inner = root * CMatrix(rho.matrix()) * root;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inner + inner.adjoint()),
                                            Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) tr += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  return tr * tr;
}

EquivalenceCheck arbitrary_polarization_equivalence_check(Complex a, Complex b, double theta,
                                                          Tolerances tol) {
  const double norm = std::norm(a) + std::norm(b);
  if (std::abs(norm - 1.0) > tol.numeric) {
    throw ValidationError("displacement polarization must be normalized, |a|^2+|b|^2=" +
                          std::to_string(norm));
  }
  const Complex phase = std::polar(1.0, theta);
  const Vector2c psi(a, b);
  const Vector2c psi_perp(-std::conj(b), std::conj(a));
  const Vector2c phi(std::conj(a), phase * std::conj(b));
  const Vector2c phi_perp(-std::conj(phase) * b, a);

  Eigen::Vector4cd lhs = Eigen::Vector4cd::Zero();
  lhs[0] = 1.0;
  lhs[3] = phase;
  lhs /= std::sqrt(2.0);
  const Eigen::Vector4cd rhs = (kron(psi, phi) + phase * kron(psi_perp, phi_perp)) / std::sqrt(2.0);

  const double orthogonality = std::abs(phi.dot(phi_perp)) + std::abs(psi.dot(psi_perp));
  const double residual = (lhs - rhs).norm() + orthogonality;
  return {residual < tol.numeric, residual};
}

}  // namespace mmsim
