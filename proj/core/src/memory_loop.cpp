#include "mmsim/memory_loop.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mmsim/errors.hpp"
#include "mmsim/linalg.hpp"

namespace mmsim {

namespace {

template <class F>
double gaussian_mean(F f, double center, double sd, int nodes) {
  if (sd == 0.0) return f(center);
  const linalg::Quadrature q = linalg::gauss_hermite(nodes);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < q.nodes.size(); ++i) {
    sum += q.weights[i] * f(center + std::sqrt(2.0) * sd * q.nodes[i]);
  }
  return sum / std::sqrt(kPi);
}

}  // namespace

void MemoryParams::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= absorption && absorption <= 1.0)) {
    throw ValidationError("memory parameters must satisfy 0 <= efficiency <= absorption <= 1");
  }
  if (!(storage_time_ns >= 0.0)) throw ValidationError("storage time must be >= 0");
}

PulseTrain::PulseTrain(std::vector<Pulse> pulses) {
  std::map<int, Complex> slots;
  for (const Pulse& p : pulses) slots[p.slot] += p.amplitude;
  for (const auto& [slot, amp] : slots) pulses_.push_back({slot, amp});
}

Complex PulseTrain::amplitude(int slot) const {
  for (const Pulse& p : pulses_) {
    if (p.slot == slot) return p.amplitude;
  }
  return {};
}

double PulseTrain::energy() const {
  double e = 0.0;
  for (const Pulse& p : pulses_) e += std::norm(p.amplitude);
  return e;
}

PulseTrain memory_pass(const PulseTrain& input, const MemoryParams& params) {
  params.validate();
  const double t = std::sqrt(params.transmission());
  const double r = std::sqrt(params.efficiency);
  std::vector<Pulse> out;
  for (const Pulse& p : input.pulses()) {
    out.push_back({p.slot, t * p.amplitude});
    out.push_back({p.slot + 1, r * p.amplitude});
  }
  return PulseTrain(std::move(out));
}

PulseTrain apply_phase(const PulseTrain& input, int slot, double phi) {
  std::vector<Pulse> out = input.pulses();
  for (Pulse& p : out) {
    if (p.slot == slot) p.amplitude *= std::polar(1.0, phi);
  }
  return PulseTrain(std::move(out));
}

double back_displacement_residual(Complex alpha, double phi, const MemoryParams& params) {
  params.validate();
  const double c = std::cos(0.5 * phi);
  return 4.0 * params.transmission() * params.efficiency * std::norm(alpha) * c * c;
}

double mean_back_displacement_residual(Complex alpha, double phase_sd, const MemoryParams& params,
                                       int nodes) {
  if (!(phase_sd >= 0.0)) throw ValidationError("phase standard deviation must be >= 0");
  return gaussian_mean([&](double phi) { return back_displacement_residual(alpha, phi, params); },
                       params.phase, phase_sd, nodes);
}

double visibility_from_errors(double amplitude_mismatch, double phase_sd, int nodes) {
  if (!(phase_sd >= 0.0)) throw ValidationError("phase standard deviation must be >= 0");
  if (!(amplitude_mismatch > -1.0)) throw ValidationError("amplitude mismatch must be > -1");
  const double b = 1.0 + amplitude_mismatch;
  const double bright = (1.0 + b) * (1.0 + b);
  auto contrast = [&](double phi) {
    const double dark = std::norm(1.0 + b * std::polar(1.0, phi));
    return (bright - dark) / (bright + dark);
  };
  return gaussian_mean(contrast, kPi, phase_sd, nodes);
}

double phase_sd_for_visibility(double visibility, double amplitude_mismatch) {
  const double best = visibility_from_errors(amplitude_mismatch, 0.0);
  if (!(visibility > 0.0 && visibility <= best)) {
    throw ValidationError("visibility is not reachable with the given amplitude mismatch");
  }
  double lo = 0.0, hi = 1.0;
  while (visibility_from_errors(amplitude_mismatch, hi) > visibility) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (visibility_from_errors(amplitude_mismatch, mid) > visibility ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mmsim
