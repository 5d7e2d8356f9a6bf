#include "mmsim/spdc.hpp"

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

struct TermWeights {
  double single;  // (1 - p_dc)(1 - T^2) / (1 - (R T)^2)
  double double_;
};

TermWeights term_weights(const DetailedParams& p) {
  const double t2 = p.tanh_g() * p.tanh_g();
  const double r2 = p.asymmetry * p.asymmetry * t2;
  const double ratio = (1.0 - t2) / (1.0 - r2);
  const double keep = 1.0 - p.dark_count;
  return {keep * ratio, keep * keep * ratio * ratio};
}

class PhaseDamping {
 public:
  PhaseDamping(const DetailedParams& p, const ModelReading& r)
      : mode_(r.phase), eps_(p.visibility_error()), sd_(p.phase_sd) {
    if (mode_ == PhaseAverage::kGaussHermite) rule_ = linalg::gauss_hermite(r.quadrature_nodes);
  }

  /// Average of exp(-k phi^2) over the phase-error distribution.
  double operator()(double k) const {
    if (mode_ == PhaseAverage::kClosedForm) return 1.0 / std::sqrt(1.0 + 4.0 * k * eps_);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rule_.nodes.size(); ++i) {
      const double phi = std::sqrt(2.0) * sd_ * rule_.nodes[i];
      sum += rule_.weights[i] * std::exp(-k * phi * phi);
    }
    return sum / std::sqrt(kPi);
  }

 private:
  PhaseAverage mode_;
  double eps_;
  double sd_;
  linalg::Quadrature rule_;
};

struct FG {
  double f;
  double g;
};

FG f_and_g(double x, double y, double theta, double theta_prime, const DetailedParams& p,
           const ModelReading& r, const PhaseDamping& damp) {
  const double eta = p.composite_efficiency();
  const bool printed = r.angles == AngleConvention::kAsPrinted;
  const double ang_f = printed ? theta : theta_prime;
  const double ang_zb = printed ? theta_prime : theta;
  const double cf = std::cos(ang_f), sf = std::sin(ang_f);
  const double den = 1.0 + eta * (cf * cf * x + sf * sf * y);
  const double scale = p.t2 * p.t2 * p.displacement_sq * p.detector_efficiency;
  const double cd = std::cos(theta - theta_prime);
  const double zeta = scale * cd * cd / den;
  const double cz = std::cos(ang_zb), sz = std::sin(ang_zb);
  const double zeta_bar = scale * (cz * cz / (1.0 + x * eta) + sz * sz / (1.0 + y * eta));
  const double g_exp = r.g_exponent == DampingExponent::kZetaBar ? zeta_bar : zeta;
  return {damp(zeta) / den, damp(g_exp) / ((1.0 + x * eta) * (1.0 + y * eta))};
}

}  // namespace

void DetailedParams::validate() const {
  if (!(squeezing >= 0.0 && std::isfinite(squeezing))) throw ValidationError("squeezing must be >= 0");
  require_unit("asymmetry", asymmetry);
  require_unit("detector efficiency", detector_efficiency);
  if (!(dark_count >= 0.0 && dark_count < 1.0)) throw ValidationError("dark count must lie in [0, 1)");
  require_unit("t1", t1);
  require_unit("t2", t2);
  require_unit("coupling", coupling);
  if (!(displacement_sq >= 0.0)) throw ValidationError("displacement size must be >= 0");
  if (!(phase_sd >= 0.0)) throw ValidationError("phase standard deviation must be >= 0");
  if (tanh_g() >= 1.0) throw ValidationError("squeezing too large: tanh(g) rounds to 1");
}

double DetailedParams::tanh_g() const { return std::tanh(squeezing); }

double DetailedParams::nbar() const {
  const double t = tanh_g();
  return t * t / (1.0 - t * t);
}

double DetailedParams::mbar() const {
  const double t = asymmetry * tanh_g();
  return t * t / (1.0 - t * t);
}

double DetailedParams::composite_efficiency() const {
  return detector_efficiency * t1 * t1 * t2 * t2 * coupling;
}

double DetailedParams::visibility_error() const { return 0.5 * phase_sd * phase_sd; }

double JointProbabilities::correlator() const {
  return normalized[0] + normalized[3] - normalized[1] - normalized[2];
}

FourModeState::FourModeState(int n_max, CVector amplitudes)
    : n_max_(n_max), amplitudes_(std::move(amplitudes)) {
  const auto d = static_cast<Eigen::Index>(n_max + 1);
  if (n_max < 1 || amplitudes_.size() != d * d * d * d) {
    throw ValidationError("four-mode amplitude vector has the wrong size");
  }
}

std::size_t FourModeState::index(int a, int a_perp, int b, int b_perp) const {
  const std::size_t d = static_cast<std::size_t>(n_max_ + 1);
  return ((static_cast<std::size_t>(a) * d + a_perp) * d + b) * d + b_perp;
}

Complex FourModeState::amplitude(int a, int a_perp, int b, int b_perp) const {
  return amplitudes_[static_cast<Eigen::Index>(index(a, a_perp, b, b_perp))];
}

FourModeState spdc_amplitudes(double squeezing, int n_max, Tolerances tol) {
  if (!(squeezing >= 0.0)) throw ValidationError("squeezing must be >= 0");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  const double t = std::tanh(squeezing);
  const double kept = 1.0 - std::pow(t * t, n_max + 1);
  const double lost = 1.0 - kept * kept;
  if (lost > tol.truncation) {
    throw TruncationError("pair amplitudes lose " + std::to_string(lost) + " beyond n_max = " +
                          std::to_string(n_max));
  }
  const auto d = static_cast<Eigen::Index>(n_max + 1);
  FourModeState state(n_max, CVector::Zero(d * d * d * d));
  CVector amps = CVector::Zero(d * d * d * d);
  // a pairs with b_perp, a_perp pairs with b.
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      amps[static_cast<Eigen::Index>(state.index(n, m, m, n))] = (1.0 - t * t) * std::pow(t, n + m);
    }
  }
  return FourModeState(n_max, std::move(amps));
}

ConditionalState conditional_state_coeffs(double squeezing, double asymmetry, double dark_count,
                                          int n_max, Tolerances tol) {
  if (!(squeezing >= 0.0)) throw ValidationError("squeezing must be >= 0");
  require_unit("asymmetry", asymmetry);
  if (!(dark_count >= 0.0 && dark_count < 1.0)) throw ValidationError("dark count must lie in [0, 1)");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  const double t = std::tanh(squeezing);
  const double rt = asymmetry * t;
  auto thermal = [](double x, int n) { return (1.0 - x * x) * std::pow(x * x, n); };
  const double ratio = (1.0 - t * t) / (1.0 - rt * rt);
  const double keep = 1.0 - dark_count;

  ConditionalState out;
  const int d = n_max + 1;
  out.plus = Eigen::MatrixXd::Zero(d, d);
  out.minus = Eigen::MatrixXd::Zero(d, d);
  for (int nb = 0; nb < d; ++nb) {
    for (int nbp = 0; nbp < d; ++nbp) {
      out.plus(nb, nbp) = keep * ratio * thermal(t, nb) * thermal(rt, nbp) -
                          keep * keep * ratio * ratio * thermal(rt, nb) * thermal(rt, nbp);
      out.minus(nb, nbp) = thermal(t, nb) * thermal(t, nbp) -
                           keep * ratio * thermal(t, nb) * thermal(rt, nbp);
    }
  }
  // Untruncated traces.
  out.plus_probability = keep * ratio - keep * keep * ratio * ratio;
  out.minus_probability = 1.0 - keep * ratio;
  const double floor = -tol.numeric * std::max(1.0, out.plus.cwiseAbs().maxCoeff());
  if (out.plus.minCoeff() < floor || out.minus.minCoeff() < floor) {
    throw ModelInconsistencyError("conditional state has a negative population");
  }
  return out;
}

Complex thermal_p_sample(double nbar, Rng& rng) {
  if (!(nbar >= 0.0)) throw ValidationError("mean photon number must be >= 0");
  const double s = std::sqrt(nbar / 2.0);
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {s * re, s * im};
}

std::pair<Complex, Complex> displaced_coherent_pair(Complex alpha, Complex beta,
                                                    const DetailedParams& params, double theta,
                                                    double phi) {
  const double chain = params.t1 * params.t2 * std::sqrt(params.coupling);
  const Complex leak(0.0, params.t2 * std::sqrt(params.displacement_sq) * phi);
  return {chain * alpha + std::cos(theta) * leak, chain * beta + std::sin(theta) * leak};
}

double click_prob_coherent(Complex alpha_hat, Complex beta_hat, double theta_prime,
                           double detector_efficiency) {
  const double c = std::cos(theta_prime), s = std::sin(theta_prime);
  const double u = std::norm(c * alpha_hat + s * beta_hat);
  const double v = std::norm(s * alpha_hat - c * beta_hat);
  return std::exp(-u * detector_efficiency) * -std::expm1(-v * detector_efficiency);
}

JointProbabilities joint_probabilities(double theta, double theta_prime,
                                       const DetailedParams& params, const ModelReading& reading,
                                       Tolerances tol) {
  params.validate();
  const PhaseDamping damp(params, reading);
  const double n = params.nbar(), m = params.mbar();
  const FG nm = f_and_g(n, m, theta, theta_prime, params, reading, damp);
  const FG mm = f_and_g(m, m, theta, theta_prime, params, reading, damp);
  const FG nn = f_and_g(n, n, theta, theta_prime, params, reading, damp);
  const TermWeights w = term_weights(params);

  JointProbabilities out;
  out.raw = {w.single * (nm.f - nm.g) - w.double_ * (mm.f - mm.g),
             w.single * (1.0 - nm.f) - w.double_ * (1.0 - mm.f),
             (nn.f - nn.g) - w.single * (nm.f - nm.g),
             (1.0 - nn.f) - w.single * (1.0 - nm.f)};
  double total = 0.0;
  for (double& p : out.raw) {
    if (p < -tol.numeric || p > 1.0 + tol.numeric) {
      throw ModelInconsistencyError("joint probability " + std::to_string(p) + " outside [0, 1]");
    }
    if (p < 0.0 || p > 1.0) {
      p = std::clamp(p, 0.0, 1.0);
      ++out.clipped;
    }
    total += p;
  }
  if (total <= 0.0) throw UndefinedInputError("joint probabilities vanish; cannot renormalize");
  for (int k = 0; k < 4; ++k) out.normalized[k] = out.raw[k] / total;
  return out;
}

double chsh_from_detailed(const ChshSettings& s, const DetailedParams& params,
                          const ModelReading& reading) {
  auto e = [&](const MeasurementSetting& a, const MeasurementSetting& b) {
    return joint_probabilities(a.theta(), b.theta() - a.theta(), params, reading).correlator();
  };
  return std::abs(e(s.a, s.b) + e(s.a, s.b_prime) + e(s.a_prime, s.b) - e(s.a_prime, s.b_prime));
}

}  // namespace mmsim
