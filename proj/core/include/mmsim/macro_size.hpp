#pragma once

#include <vector>

#include "mmsim/types.hpp"

namespace mmsim {

/// Photon-number distributions of D(alpha)(|0> + |1>)/sqrt2 and D(alpha)(|0> - |1>)/sqrt2.
struct MacroComponentPair {
  RVector plus;
  RVector minus;
  double alpha = 0.0;
};

/// Cutoff large enough for both displaced components: alpha^2 + 8 alpha + 20.
int default_cutoff(double alpha);

MacroComponentPair macro_components(double alpha, int n_max, Tolerances tol = kDefaultTolerances);

/// Bin width of the coarse-graining grid (photons).
inline constexpr double kCoarseGrainStep = 0.05;

/// Optimal equal-prior single-shot success probability, 1/2 + L1/4, after Gaussian
/// coarse-graining of resolution sigma. sigma = 0 compares the raw distributions.
double guessing_probability(const RVector& p, const RVector& q, double sigma);
double guessing_probability(const MacroComponentPair& pair, double sigma);

/// Largest sigma with P_g(sigma) >= target, by bisection to `resolution` photons.
/// Throws ValidationError when the target is not in (1/2, P_g(0)).
double sigma_max(const MacroComponentPair& pair, double target, double resolution = 1e-3);

/// P_g for |0> against |N> under the same coarse-grained detector.
double archetype_guessing_probability(int n, double sigma);

struct SizeResult {
  double guessing_at_zero = 0.0;
  double sigma_max = 0.0;
  int effective_size = 0;
};

/// Smallest N whose |0> vs |N> archetype reaches the target at sigma_max.
SizeResult effective_size(const MacroComponentPair& pair, double target);

/// Two-branch heralded state: weight `entangled_weight` on the displaced entangled state and the
/// rest on the displaced vacuum with a maximally mixed idler.
struct HeraldedMixture {
  double entangled_weight = 0.0;
  double separable_weight = 0.0;
  double alpha = 0.0;
};

HeraldedMixture heralded_mixture_state(double alpha, double heralding_efficiency);

/// Conditional signal distributions for the two diagonal idler outcomes, after heralding and
/// memory absorption; the displacement inside the memory is sqrt(absorption) * alpha.
MacroComponentPair lossy_mixture_components(double alpha, double heralding_efficiency,
                                            double absorption, Tolerances tol = kDefaultTolerances);

std::vector<double> lossy_mixture_guessing(double alpha, double heralding_efficiency,
                                           double absorption, const std::vector<double>& sigmas);

}  // namespace mmsim
