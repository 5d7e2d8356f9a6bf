#pragma once

#include <cstdint>
#include <random>

namespace mmsim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-point seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed for stream `index` under `master`. Results never depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

inline Rng make_rng(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

/// Standard normal deviate via Box-Muller on the raw engine output.
///
/// std::normal_distribution is implementation-defined; this keeps sampled
/// streams identical across standard libraries.
double standard_normal(Rng& rng);

/// Uniform deviate in [0, 1) built from the top 53 bits of the engine output.
double uniform01(Rng& rng);

}  // namespace mmsim
