#include "mmsim/tomography.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include "mmsim/errors.hpp"
#include "mmsim/linalg.hpp"
#include "mmsim/random.hpp"

namespace mmsim {

namespace {

Matrix4c projector(const Vector2c& a, const Vector2c& b) {
  Eigen::Vector4cd v;
  v << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
  return v * v.adjoint();
}

std::array<Matrix4c, 4> outcome_projectors(const SettingPair& pair) {
  const Vector2c ap = pair.alice.plus_state(), am = pair.alice.minus_state();
  const Vector2c bp = pair.bob.plus_state(), bm = pair.bob.minus_state();
  return {projector(ap, bp), projector(ap, bm), projector(am, bp), projector(am, bm)};
}

double expectation(const Matrix4c& op, const Matrix4c& rho) {
  // Tr[op rho] for Hermitian arguments.
  return (op.cwiseProduct(rho.transpose())).sum().real();
}

// Real coordinates of a Hermitian 4x4 operator in the two-qubit Pauli basis.
Eigen::Matrix<double, 16, 1> pauli_coordinates(const Matrix4c& op) {
  std::array<Eigen::Matrix2cd, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  s[3] << 1, 0, 0, -1;
  Eigen::Matrix<double, 16, 1> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Matrix4c g;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) g.block<2, 2>(2 * r, 2 * c) = s[i](r, c) * s[j];
      out[4 * i + j] = (op * g).trace().real();
    }
  }
  return out;
}

}  // namespace

TomographyRecord::TomographyRecord(std::vector<TomographyEntry> entries, std::uint64_t shots)
    : entries_(std::move(entries)), shots_(shots) {
  if (shots_ < 1) throw ValidationError("tomography needs at least one shot per pair");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    double total = 0.0;
    for (double c : entries_[k].counts) {
      if (c < 0.0) throw ValidationError("negative count in tomography record");
      total += c;
    }
    // A pair with no recorded events is allowed here; the reconstruction rejects it.
    if (total != 0.0 && std::abs(total - static_cast<double>(shots_)) > 1e-6 * static_cast<double>(shots_)) {
      throw ValidationError("setting pair " + std::to_string(k) + " counts sum to " +
                            std::to_string(total) + ", expected " + std::to_string(shots_));
    }
  }
}

std::vector<MeasurementSetting> default_analyzer_states() {
  const double q = kPi / 4.0;
  return {MeasurementSetting(0.0),          MeasurementSetting(2.0 * q),
          MeasurementSetting(q),            MeasurementSetting(3.0 * q),
          MeasurementSetting(q, 2.0 * q),   MeasurementSetting(3.0 * q, 2.0 * q)};
}

std::vector<SettingPair> default_tomography_settings() {
  const auto states = default_analyzer_states();
  std::vector<SettingPair> pairs;
  pairs.reserve(states.size() * states.size());
  for (const auto& a : states)
    for (const auto& b : states) pairs.push_back({a, b});
  return pairs;
}

OutcomeCounts outcome_probabilities(const TwoQubitDensity& rho, const SettingPair& pair) {
  const auto ops = outcome_projectors(pair);
  OutcomeCounts p{};
  for (int o = 0; o < 4; ++o) p[o] = std::max(0.0, expectation(ops[o], rho.matrix()));
  return p;
}

TomographyRecord simulate_tomography(const TwoQubitDensity& rho,
                                     const std::vector<SettingPair>& pairs, std::uint64_t shots,
                                     std::uint64_t seed) {
  if (shots < 1) throw ValidationError("shots must be >= 1");
  std::vector<TomographyEntry> entries;
  entries.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Rng rng = make_rng(seed, k);
    const OutcomeCounts p = outcome_probabilities(rho, pairs[k]);
    // Multinomial draw as a chain of conditional binomials.
    OutcomeCounts counts{};
    std::uint64_t remaining = shots;
    double mass = p[0] + p[1] + p[2] + p[3];
    for (int o = 0; o < 3 && remaining > 0; ++o) {
      const double q = mass > 0.0 ? std::clamp(p[o] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::uint64_t> draw(remaining, q);
      const std::uint64_t n = draw(rng);
      counts[o] = static_cast<double>(n);
      remaining -= n;
      mass -= p[o];
    }
    counts[3] = static_cast<double>(remaining);
    entries.push_back({pairs[k], counts});
  }
  return TomographyRecord(std::move(entries), shots);
}

TomographyRecord expected_record(const TwoQubitDensity& rho, const std::vector<SettingPair>& pairs,
                                 std::uint64_t shots) {
  std::vector<TomographyEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& pair : pairs) {
    OutcomeCounts p = outcome_probabilities(rho, pair);
    const double total = p[0] + p[1] + p[2] + p[3];
    for (double& x : p) x = x / total * static_cast<double>(shots);
    entries.push_back({pair, p});
  }
  return TomographyRecord(std::move(entries), shots);
}

MleResult reconstruct_mle_detailed(const TomographyRecord& record, const MleOptions& options) {
  const auto& entries = record.entries();
  if (entries.empty()) throw RankDeficiencyError("tomography record is empty");

  std::vector<Matrix4c> ops;
  std::vector<double> counts;
  ops.reserve(entries.size() * 4);
  double total = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    double pair_total = 0.0;
    for (double c : entries[k].counts) pair_total += c;
    if (pair_total <= 0.0) {
      throw RankDeficiencyError("setting pair " + std::to_string(k) + " has no counts");
    }
    const auto proj = outcome_projectors(entries[k].settings);
    for (int o = 0; o < 4; ++o) {
      ops.push_back(proj[o]);
      counts.push_back(entries[k].counts[o]);
      total += entries[k].counts[o];
    }
  }

  Eigen::MatrixXd coords(static_cast<Eigen::Index>(ops.size()), 16);
  for (std::size_t i = 0; i < ops.size(); ++i) coords.row(static_cast<Eigen::Index>(i)) = pauli_coordinates(ops[i]).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(coords);
  qr.setThreshold(1e-9);
  if (qr.rank() < 16) {
    throw RankDeficiencyError("setting set spans only " + std::to_string(qr.rank()) +
                              " of 16 operator dimensions");
  }

  const Matrix4c identity = Matrix4c::Identity();
  // Per-count log-likelihood; `scale` is the summed magnitude used to judge round-off.
  struct Likelihood {
    double value;
    double scale;
  };
  auto log_likelihood = [&](const Matrix4c& rho) {
    Likelihood l{0.0, 0.0};
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (counts[i] > 0.0) {
        const double term = counts[i] / total * std::log(std::max(expectation(ops[i], rho), 1e-300));
        l.value += term;
        l.scale += std::abs(term);
      }
    }
    return l;
  };
  auto r_operator = [&](const Matrix4c& rho) {
    Matrix4c r = Matrix4c::Zero();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (counts[i] > 0.0) r += (counts[i] / std::max(expectation(ops[i], rho), 1e-300)) * ops[i];
    }
    return Matrix4c(r / total);
  };
  auto regularize = [&](Matrix4c rho) {
    rho = 0.5 * (rho + rho.adjoint());
    rho += options.regularization * identity;
    return Matrix4c(rho / rho.trace().real());
  };
  auto finish = [&](const Matrix4c& rho, int it, double gradient, double value) {
    return MleResult{TwoQubitDensity(rho, Tolerances{1e-9, 1e-8}), it, gradient, value * total};
  };

  Matrix4c rho = 0.25 * identity;
  double step = 1.0;
  double gradient = 0.0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    // The ascent test compares against the regularized iterate the step starts from.
    rho = regularize(rho);
    const Likelihood current = log_likelihood(rho);
    const Matrix4c r = r_operator(rho);
    // Stationarity residual: the factor gradient (R - I) A mapped back through A^dagger.
    gradient = ((r - identity) * rho).norm();
    if (gradient < options.gradient_tolerance) return finish(rho, it, gradient, current.value);
    const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * current.scale;
    bool accepted = false;
    while (step > 1e-8) {
      const Matrix4c lift = identity + step * (r - identity);
      Matrix4c candidate = lift * rho * lift.adjoint();
      candidate = 0.5 * (candidate + candidate.adjoint());
      candidate /= candidate.trace().real();
      if (log_likelihood(candidate).value >= current.value - roundoff) {
        rho = candidate;
        step = std::min(step * 1.5, 1.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  char message[128];
  std::snprintf(message, sizeof message, "MLE stopped after %d iterations with gradient norm %.3e",
                it, gradient);
  throw ConvergenceError(message, it, gradient);
}

TwoQubitDensity reconstruct_mle(const TomographyRecord& record, const MleOptions& options) {
  return reconstruct_mle_detailed(record, options).state;
}

}  // namespace mmsim
