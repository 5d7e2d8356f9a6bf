#include <algorithm>
#include <cmath>
#include <string>

#include "mmsim/errors.hpp"
#include "mmsim/spdc.hpp"

namespace mmsim {

JointProbabilities OracleEstimate::as_joint() const {
  JointProbabilities out;
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    out.raw[k] = std::clamp(mean[k], 0.0, 1.0);
    if (out.raw[k] != mean[k]) ++out.clipped;
    total += out.raw[k];
  }
  if (total <= 0.0) throw UndefinedInputError("oracle probabilities vanish; cannot renormalize");
  for (int k = 0; k < 4; ++k) out.normalized[k] = out.raw[k] / total;
  return out;
}

OracleEstimate monte_carlo_oracle(double theta, double theta_prime, const DetailedParams& params,
                                  int n_samples, std::uint64_t seed) {
  if (n_samples < 10000) throw ValidationError("the oracle needs at least 10^4 samples");
  params.validate();
  const double t = params.tanh_g();
  const double rt = params.asymmetry * t;
  const double ratio = (1.0 - t * t) / (1.0 - rt * rt);
  const double keep = 1.0 - params.dark_count;
  const double w_single = keep * ratio;
  const double w_double = keep * keep * ratio * ratio;
  const double n = params.nbar(), m = params.mbar();
  const double eta_d = params.detector_efficiency;
  const double c = std::cos(theta_prime), s = std::sin(theta_prime);

  Rng rng(seed);
  std::array<double, 4> sum{}, sum_sq{};
  for (int i = 0; i < n_samples; ++i) {
    // Common unit draws for all thermal products keep the signed differences low-variance.
    const Complex z1 = thermal_p_sample(1.0, rng);
    const Complex z2 = thermal_p_sample(1.0, rng);
    const double phi = params.phase_sd * standard_normal(rng);
    auto bob = [&](double x, double y) {
      const auto [ah, bh] =
          displaced_coherent_pair(std::sqrt(x) * z1, std::sqrt(y) * z2, params, theta, phi);
      const double plus = click_prob_coherent(ah, bh, theta_prime, eta_d);
      const double minus = -std::expm1(-eta_d * std::norm(c * ah + s * bh));
      return std::pair{plus, minus};
    };
    const auto [p_nm, m_nm] = bob(n, m);
    const auto [p_mm, m_mm] = bob(m, m);
    const auto [p_nn, m_nn] = bob(n, n);
    const std::array<double, 4> sample = {w_single * p_nm - w_double * p_mm,
                                          w_single * m_nm - w_double * m_mm,
                                          p_nn - w_single * p_nm, m_nn - w_single * m_nm};
    for (int k = 0; k < 4; ++k) {
      sum[k] += sample[k];
      sum_sq[k] += sample[k] * sample[k];
    }
  }
  OracleEstimate out;
  const double count = n_samples;
  for (int k = 0; k < 4; ++k) {
    out.mean[k] = sum[k] / count;
    const double var = std::max(0.0, (sum_sq[k] - count * out.mean[k] * out.mean[k]) / (count - 1));
    out.standard_error[k] = std::sqrt(var / count);
    if (out.mean[k] < -3.0 * out.standard_error[k]) out.flagged = true;
  }
  return out;
}

double chsh_from_oracle(const ChshSettings& s, const DetailedParams& params, int n_samples,
                        std::uint64_t seed) {
  std::uint64_t k = 0;
  auto e = [&](const MeasurementSetting& a, const MeasurementSetting& b) {
    return monte_carlo_oracle(a.theta(), b.theta() - a.theta(), params, n_samples,
                              derive_seed(seed, k++))
        .as_joint()
        .correlator();
  };
  const double ab = e(s.a, s.b);
  const double abp = e(s.a, s.b_prime);
  const double apb = e(s.a_prime, s.b);
  const double apbp = e(s.a_prime, s.b_prime);
  return std::abs(ab + abp + apb - apbp);
}

}  // namespace mmsim
