#include "mmsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmsim/errors.hpp"
#include "mmsim/linalg.hpp"

namespace mmsim {

namespace {

void require_n_max(int n_max) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1, got " + std::to_string(n_max));
}

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Working-space headroom for the truncated generator of D(alpha).
int displacement_margin(double abs_alpha) {
  return static_cast<int>(std::ceil(6.0 * abs_alpha)) + 20;
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncatedState

TruncatedState::TruncatedState(CVector amplitudes, Tolerances tol)
    : amplitudes_(std::move(amplitudes)) {
  require_n_max(static_cast<int>(amplitudes_.size()) - 1);
  if (amplitudes_.squaredNorm() > 1.0 + tol.numeric) {
    throw ValidationError("state norm exceeds 1: " + std::to_string(amplitudes_.squaredNorm()));
  }
}

TruncatedState TruncatedState::fock(int n, int n_max) {
  require_n_max(n_max);
  if (n < 0 || n > n_max) throw ValidationError("Fock index outside [0, n_max]");
  CVector v = CVector::Zero(n_max + 1);
  v[n] = 1.0;
  return TruncatedState(std::move(v));
}

double TruncatedState::mean_photon_number() const {
  double mean = 0.0;
  for (int n = 0; n <= n_max(); ++n) mean += n * std::norm(amplitudes_[n]);
  return mean;
}

DensityOperator TruncatedState::density() const {
  return DensityOperator(amplitudes_ * amplitudes_.adjoint(),
                         Tolerances{kDefaultTolerances.numeric, 1.0});
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(CMatrix matrix, Tolerances tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw ValidationError("density operator must be square");
  require_n_max(static_cast<int>(matrix_.rows()) - 1);
  const double herm = linalg::hermiticity_error(matrix_);
  if (herm > tol.numeric) {
    throw ValidationError("density operator not Hermitian (error " + std::to_string(herm) + ")");
  }
  const double tr = matrix_.trace().real();
  if (tr > 1.0 + tol.numeric || tr < 1.0 - tol.truncation - tol.numeric) {
    throw ValidationError("density operator trace " + std::to_string(tr) + " outside tolerance");
  }
}

DensityOperator DensityOperator::fock(int n, int n_max) {
  return TruncatedState::fock(n, n_max).density();
}

DensityOperator DensityOperator::thermal(double mean, int n_max, Tolerances tol) {
  if (mean < 0.0) throw ValidationError("thermal mean photon number must be >= 0");
  require_n_max(n_max);
  const double ratio = mean / (1.0 + mean);
  const double tail = std::pow(ratio, n_max + 1);
  if (tail > tol.truncation) {
    throw TruncationError("thermal state with mean " + std::to_string(mean) +
                          " does not fit in n_max=" + std::to_string(n_max));
  }
  CMatrix m = CMatrix::Zero(n_max + 1, n_max + 1);
  double p = 1.0 / (1.0 + mean);
  for (int n = 0; n <= n_max; ++n) {
    m(n, n) = p;
    p *= ratio;
  }
  return DensityOperator(std::move(m), tol);
}

double DensityOperator::mean_photon_number() const {
  double mean = 0.0;
  for (int n = 0; n <= n_max(); ++n) mean += n * matrix_(n, n).real();
  return mean;
}

double DensityOperator::min_eigenvalue() const { return linalg::min_eigenvalue(matrix_); }

void DensityOperator::require_positive(Tolerances tol) const {
  const double lo = min_eigenvalue();
  if (lo < -tol.numeric) {
    throw ValidationError("density operator has negative eigenvalue " + std::to_string(lo));
  }
}

// ---------------------------------------------------------------------------
// ClickDetector

ClickDetector::ClickDetector(double efficiency, double dark_count)
    : efficiency_(efficiency), dark_count_(dark_count) {
  require_probability(efficiency, "detector efficiency");
  if (!(dark_count >= 0.0 && dark_count < 1.0)) {
    throw ValidationError("dark-count probability must lie in [0, 1)");
  }
}

RVector ClickDetector::no_click_weights(int n_max) const {
  RVector w(n_max + 1);
  double p = 1.0 - dark_count_;
  for (int n = 0; n <= n_max; ++n) {
    w[n] = p;
    p *= 1.0 - efficiency_;
  }
  return w;
}

// ---------------------------------------------------------------------------
// ModeTransform

ModeTransform::ModeTransform(CMatrix unitary, Tolerances tol) : unitary_(std::move(unitary)) {
  if (unitary_.rows() != unitary_.cols() || unitary_.rows() < 1) {
    throw ValidationError("mode transform must be a non-empty square matrix");
  }
  const double err = linalg::unitarity_error(unitary_);
  if (err > tol.numeric) {
    throw ValidationError("mode transform not unitary (error " + std::to_string(err) + ")");
  }
}

CVector ModeTransform::apply(const CVector& amplitudes) const {
  if (amplitudes.size() != unitary_.cols()) throw ValidationError("mode count mismatch");
  return unitary_ * amplitudes;
}

CMatrix ModeTransform::apply_two_mode(const CMatrix& coefficients) const {
  if (modes() != 2) throw ValidationError("apply_two_mode needs a two-mode transform");
  const int rows = static_cast<int>(coefficients.rows());
  const int cols = static_cast<int>(coefficients.cols());
  int total_max = 0;
  for (int n1 = 0; n1 < rows; ++n1)
    for (int n2 = 0; n2 < cols; ++n2)
      if (coefficients(n1, n2) != Complex(0.0)) total_max = std::max(total_max, n1 + n2);

  const Complex u11 = unitary_(0, 0), u21 = unitary_(1, 0);
  const Complex u12 = unitary_(0, 1), u22 = unitary_(1, 1);

  // a1^dag -> u11 b1^dag + u21 b2^dag, a2^dag -> u12 b1^dag + u22 b2^dag
  CMatrix out = CMatrix::Zero(total_max + 1, total_max + 1);
  for (int n1 = 0; n1 < rows; ++n1) {
    for (int n2 = 0; n2 < cols; ++n2) {
      const Complex c = coefficients(n1, n2);
      if (c == Complex(0.0)) continue;
      const int total = n1 + n2;
      const double log_norm_in = 0.5 * (linalg::log_factorial(n1) + linalg::log_factorial(n2));
      for (int k = 0; k <= n1; ++k) {
        const Complex part1 = std::exp(linalg::log_binomial(n1, k)) * std::pow(u11, k) *
                              std::pow(u21, n1 - k);
        for (int l = 0; l <= n2; ++l) {
          const Complex part2 = std::exp(linalg::log_binomial(n2, l)) * std::pow(u12, l) *
                                std::pow(u22, n2 - l);
          const int m1 = k + l;
          const int m2 = total - m1;
          const double log_norm_out =
              0.5 * (linalg::log_factorial(m1) + linalg::log_factorial(m2));
          out(m1, m2) += c * part1 * part2 * std::exp(log_norm_out - log_norm_in);
        }
      }
    }
  }
  return out;
}

CMatrix ModeTransform::fock_operator(int n_max) const {
  require_n_max(n_max);
  const int d = n_max + 1;
  CMatrix op = CMatrix::Zero(d * d, d * d);
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n1 + n2 <= n_max; ++n2) {
      CMatrix in = CMatrix::Zero(n1 + 1, n2 + 1);
      in(n1, n2) = 1.0;
      const CMatrix out = apply_two_mode(in);
      for (int m1 = 0; m1 < out.rows(); ++m1)
        for (int m2 = 0; m2 < out.cols(); ++m2)
          if (m1 <= n_max && m2 <= n_max) op(m1 * d + m2, n1 * d + n2) = out(m1, m2);
    }
  }
  return op;
}

ModeTransform beam_splitter(double transmittance) {
  require_probability(transmittance, "transmittance");
  const double t = std::sqrt(transmittance);
  const double r = std::sqrt(1.0 - transmittance);
  CMatrix u(2, 2);
  u << t, r, -r, t;
  return ModeTransform(std::move(u));
}

ModeTransform phase_shift(double phi) {
  CMatrix u = CMatrix::Identity(2, 2);
  u(1, 1) = std::polar(1.0, phi);
  return ModeTransform(std::move(u));
}

ModeTransform polarization_analyzer(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  CMatrix u(2, 2);
  u << c, s, s, -c;
  return ModeTransform(std::move(u));
}

// ---------------------------------------------------------------------------
// States and channels

double poisson_tail(double mean, int n_max) {
  if (mean <= 0.0) return 0.0;
  // Sum the tail directly from its start so the result keeps relative precision.
  double log_term = -mean + (n_max + 1) * std::log(mean) - linalg::log_factorial(n_max + 1);
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double term = std::exp(log_term);
    tail += term;
    if (n > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (n > n_max + 100000) break;
    log_term += std::log(mean) - std::log(static_cast<double>(n + 1));
  }
  return tail;
}

TruncatedState coherent_state(Complex alpha, int n_max, Tolerances tol) {
  require_n_max(n_max);
  const double mean = std::norm(alpha);
  const double tail = poisson_tail(mean, n_max);
  if (tail > tol.truncation) {
    throw TruncationError("coherent state |alpha|^2=" + std::to_string(mean) +
                          " loses " + std::to_string(tail) + " beyond n_max=" +
                          std::to_string(n_max));
  }
  CVector c(n_max + 1);
  c[0] = std::exp(-0.5 * mean);
  for (int n = 1; n <= n_max; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return TruncatedState(std::move(c), tol);
}

CMatrix displacement_operator(Complex alpha, int n_max, Tolerances tol) {
  require_n_max(n_max);
  const double tail = poisson_tail(std::norm(alpha), n_max);
  if (tail > tol.truncation) {
    throw TruncationError("displacement |alpha|^2=" + std::to_string(std::norm(alpha)) +
                          " too large for n_max=" + std::to_string(n_max));
  }
  const int work = n_max + 1 + displacement_margin(std::abs(alpha));
  const CMatrix a = annihilation(work);
  const CMatrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
  const CMatrix full = linalg::expm(generator);
  return full.topLeftCorner(n_max + 1, n_max + 1);
}

TruncatedState displace(const TruncatedState& state, Complex alpha, Tolerances tol) {
  const int n_max = state.n_max();
  const int work = n_max + 1 + displacement_margin(std::abs(alpha));
  const CMatrix a = annihilation(work);
  const CMatrix d = linalg::expm(alpha * a.adjoint() - std::conj(alpha) * a);
  CVector in = CVector::Zero(work);
  in.head(n_max + 1) = state.amplitudes();
  const CVector out = d * in;
  const double lost = out.tail(work - n_max - 1).squaredNorm();
  if (lost > tol.truncation) {
    throw TruncationError("displaced state loses " + std::to_string(lost) +
                          " beyond n_max=" + std::to_string(n_max));
  }
  return TruncatedState(out.head(n_max + 1), tol);
}

DensityOperator loss_channel(double eta, const DensityOperator& state) {
  require_probability(eta, "transmission");
  const int n_max = state.n_max();
  const CMatrix& rho = state.matrix();
  CMatrix out = CMatrix::Zero(n_max + 1, n_max + 1);
  if (eta == 1.0) return state;
  if (eta == 0.0) {
    out(0, 0) = rho.trace();
    return DensityOperator(std::move(out), Tolerances{1e-9, 1.0});
  }
  // Kraus operators E_k|n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k>.
  const double log_eta = std::log(eta);
  const double log_loss = std::log1p(-eta);
  auto weight = [&](int n, int k) {
    return std::exp(0.5 * (linalg::log_binomial(n, k) + (n - k) * log_eta + k * log_loss));
  };
  for (int k = 0; k <= n_max; ++k) {
    for (int m = k; m <= n_max; ++m) {
      const double wm = weight(m, k);
      for (int n = k; n <= n_max; ++n) {
        out(m - k, n - k) += wm * weight(n, k) * rho(m, n);
      }
    }
  }
  return DensityOperator(std::move(out), Tolerances{1e-9, 1.0});
}

double no_click_probability(const ClickDetector& detector, const DensityOperator& state) {
  const RVector w = detector.no_click_weights(state.n_max());
  return (w.array() * state.matrix().diagonal().real().array()).sum();
}

double click_probability(const ClickDetector& detector, const DensityOperator& state) {
  return state.trace() - no_click_probability(detector, state);
}

RVector photon_number_distribution(const TruncatedState& state) {
  return state.amplitudes().cwiseAbs2();
}

RVector photon_number_distribution(const DensityOperator& state) {
  return state.matrix().diagonal().real();
}

}  // namespace mmsim
