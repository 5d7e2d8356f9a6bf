#include "mmsim/macro_size.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mmsim/errors.hpp"
#include "mmsim/fock.hpp"

namespace mmsim {

namespace {

double mean_of(const RVector& p) {
  double m = 0.0;
  for (Eigen::Index n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p[n];
  return m;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

RVector poisson(double mean, int n_max) {
  return photon_number_distribution(coherent_state(Complex(std::sqrt(mean), 0.0), n_max));
}

}  // namespace

int default_cutoff(double alpha) {
  const double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 20.0));
}

MacroComponentPair macro_components(double alpha, int n_max, Tolerances tol) {
  if (!(alpha >= 0.0)) throw ValidationError("alpha must be real and >= 0");
  CVector plus = CVector::Zero(n_max + 1), minus = CVector::Zero(n_max + 1);
  plus[0] = minus[0] = 1.0 / std::sqrt(2.0);
  plus[1] = 1.0 / std::sqrt(2.0);
  minus[1] = -1.0 / std::sqrt(2.0);
  const Complex a(alpha, 0.0);
  return {photon_number_distribution(displace(TruncatedState(plus), a, tol)),
          photon_number_distribution(displace(TruncatedState(minus), a, tol)), alpha};
}

double guessing_probability(const RVector& p, const RVector& q, double sigma) {
  if (!(sigma >= 0.0)) throw ValidationError("sigma must be >= 0");
  const Eigen::Index len = std::max(p.size(), q.size());
  RVector diff = RVector::Zero(len);
  diff.head(p.size()) += p;
  diff.head(q.size()) -= q;
  if (sigma == 0.0) return 0.5 + 0.25 * diff.cwiseAbs().sum();

  // Bins of width kCoarseGrainStep centred on a grid that contains every integer.
  const double reach_p = 8.0 * std::sqrt(std::max(mean_of(p), 0.0));
  const double reach_q = 8.0 * std::sqrt(std::max(mean_of(q), 0.0));
  const double lo = std::floor(std::min({0.0, mean_of(p) - reach_p, mean_of(q) - reach_q}) - 8.0 * sigma);
  const double hi = std::ceil(std::max({static_cast<double>(len - 1), mean_of(p) + reach_p,
                                        mean_of(q) + reach_q}) + 8.0 * sigma);
  const auto bins = static_cast<long>(std::llround((hi - lo) / kCoarseGrainStep)) + 1;
  const auto per_photon = static_cast<long>(std::llround(1.0 / kCoarseGrainStep));
  const auto reach = static_cast<long>(std::floor((9.0 * sigma + 1.0) / kCoarseGrainStep));

  // Bin masses of one photon number, indexed by bin offset; the grid contains every integer.
  std::vector<double> kernel(static_cast<std::size_t>(2 * reach + 1));
  for (long j = -reach; j <= reach; ++j) {
    const double d = static_cast<double>(j) * kCoarseGrainStep;
    kernel[static_cast<std::size_t>(j + reach)] =
        normal_cdf((d + 0.5 * kCoarseGrainStep) / sigma) - normal_cdf((d - 0.5 * kCoarseGrainStep) / sigma);
  }
  std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
  for (Eigen::Index n = 0; n < len; ++n) {
    if (diff[n] == 0.0) continue;
    const long centre = (static_cast<long>(n) - static_cast<long>(lo)) * per_photon;
    const long first = std::max(0L, centre - reach), last = std::min(bins - 1, centre + reach);
    for (long k = first; k <= last; ++k) {
      mass[static_cast<std::size_t>(k)] += diff[n] * kernel[static_cast<std::size_t>(k - centre + reach)];
    }
  }
  double l1 = 0.0;
  for (double m : mass) l1 += std::abs(m);
  return 0.5 + 0.25 * l1;
}

double guessing_probability(const MacroComponentPair& pair, double sigma) {
  return guessing_probability(pair.plus, pair.minus, sigma);
}

double sigma_max(const MacroComponentPair& pair, double target, double resolution) {
  const double at_zero = guessing_probability(pair, 0.0);
  if (!(target > 0.5 && target < at_zero)) {
    throw ValidationError("target P_g " + std::to_string(target) + " is not in (1/2, " +
                          std::to_string(at_zero) + ")");
  }
  double lo = 0.0, hi = 1.0;
  while (guessing_probability(pair, hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw ValidationError("P_g does not fall below the target");
  }
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (guessing_probability(pair, mid) >= target ? lo : hi) = mid;
  }
  return lo;
}

double archetype_guessing_probability(int n, double sigma) {
  if (n < 0) throw ValidationError("archetype size must be >= 0");
  RVector vacuum = RVector::Zero(n + 1), fock = RVector::Zero(n + 1);
  vacuum[0] = 1.0;
  fock[n] += 1.0;
  return guessing_probability(vacuum, fock, sigma);
}

SizeResult effective_size(const MacroComponentPair& pair, double target) {
  SizeResult out;
  out.guessing_at_zero = guessing_probability(pair, 0.0);
  out.sigma_max = sigma_max(pair, target);
  int n = 1;
  while (archetype_guessing_probability(n, out.sigma_max) < target) ++n;
  out.effective_size = n;
  return out;
}

HeraldedMixture heralded_mixture_state(double alpha, double heralding_efficiency) {
  if (!(heralding_efficiency >= 0.0 && heralding_efficiency <= 1.0)) {
    throw ValidationError("heralding efficiency must lie in [0, 1]");
  }
  return {heralding_efficiency, 1.0 - heralding_efficiency, alpha};
}

MacroComponentPair lossy_mixture_components(double alpha, double heralding_efficiency,
                                            double absorption, Tolerances tol) {
  if (!(absorption >= 0.0 && absorption <= 1.0)) throw ValidationError("absorption must lie in [0, 1]");
  const HeraldedMixture mix = heralded_mixture_state(alpha, heralding_efficiency);
  const double inner = std::sqrt(absorption) * alpha;
  const double q = mix.entangled_weight * absorption;
  const int n_max = default_cutoff(inner);
  MacroComponentPair pure = macro_components(inner, n_max, tol);
  const RVector vac = poisson(inner * inner, n_max);
  pure.plus = q * pure.plus + (1.0 - q) * vac;
  pure.minus = q * pure.minus + (1.0 - q) * vac;
  return pure;
}

std::vector<double> lossy_mixture_guessing(double alpha, double heralding_efficiency,
                                           double absorption, const std::vector<double>& sigmas) {
  const MacroComponentPair mix = lossy_mixture_components(alpha, heralding_efficiency, absorption);
  std::vector<double> out;
  out.reserve(sigmas.size());
  for (double s : sigmas) out.push_back(guessing_probability(mix, s));
  return out;
}

}  // namespace mmsim
