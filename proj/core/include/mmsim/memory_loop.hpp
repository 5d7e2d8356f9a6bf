#pragma once

// Two-port storage-loop picture of the memory: a pulse is partly transmitted and partly
// re-emitted one storage time later. Higher-order echoes are not modeled.

#include <vector>

#include "mmsim/types.hpp"

namespace mmsim {

struct MemoryParams {
  double absorption = 0.55;
  /// Overall storage-and-retrieval efficiency.
  double efficiency = 0.046;
  double storage_time_ns = 50.0;
  /// Programmed phase on the delayed pulse.
  double phase = kPi;

  double transmission() const { return 1.0 - absorption; }
  /// Requires 0 <= efficiency <= absorption <= 1.
  void validate() const;
};

struct Pulse {
  int slot = 0;
  Complex amplitude;
};

/// Pulses ordered by slot; slot k sits at time k * storage_time.
class PulseTrain {
 public:
  PulseTrain() = default;
  explicit PulseTrain(std::vector<Pulse> pulses);

  const std::vector<Pulse>& pulses() const { return pulses_; }
  /// Amplitude in a slot, zero when the slot is empty.
  Complex amplitude(int slot) const;
  double energy() const;

 private:
  std::vector<Pulse> pulses_;
};

/// Each pulse a gives sqrt(eta_t) a in its slot and sqrt(eta) a one slot later;
/// contributions landing in the same slot add coherently.
PulseTrain memory_pass(const PulseTrain& input, const MemoryParams& params);

/// Multiplies the amplitude in `slot` by exp(i phi).
PulseTrain apply_phase(const PulseTrain& input, int slot, double phi);

/// |sqrt(eta_t eta) alpha (1 + exp(i phi))|^2.
double back_displacement_residual(Complex alpha, double phi, const MemoryParams& params);

/// Residual averaged over phi ~ N(params.phase, phase_sd^2) by Gauss-Hermite quadrature.
double mean_back_displacement_residual(Complex alpha, double phase_sd, const MemoryParams& params,
                                       int nodes = 64);

/// Mean contrast of two interfering pulses with relative amplitude error delta and phase
/// jitter phase_sd around destructive interference.
double visibility_from_errors(double amplitude_mismatch, double phase_sd, int nodes = 64);

/// Phase jitter giving the requested visibility at the given amplitude mismatch.
double phase_sd_for_visibility(double visibility, double amplitude_mismatch = 0.0);

}  // namespace mmsim
