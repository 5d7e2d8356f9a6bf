#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mmsim/polarization.hpp"

namespace mmsim {

struct SettingPair {
  MeasurementSetting alice;
  MeasurementSetting bob;
};

/// Outcome order: (+1,+1), (+1,-1), (-1,+1), (-1,-1).
using OutcomeCounts = std::array<double, 4>;

struct TomographyEntry {
  SettingPair settings;
  OutcomeCounts counts{};
};

/// Outcome counts for a list of setting pairs, each measured with the same shot budget.
class TomographyRecord {
 public:
  TomographyRecord(std::vector<TomographyEntry> entries, std::uint64_t shots_per_pair);

  const std::vector<TomographyEntry>& entries() const { return entries_; }
  std::uint64_t shots_per_pair() const { return shots_; }

 private:
  std::vector<TomographyEntry> entries_;
  std::uint64_t shots_;
};

/// H, V, D, A, R, L.
std::vector<MeasurementSetting> default_analyzer_states();

/// All 36 ordered pairs of the default analyzer states.
std::vector<SettingPair> default_tomography_settings();

OutcomeCounts outcome_probabilities(const TwoQubitDensity& rho, const SettingPair& pair);

/// Multinomial samples of the joint outcomes; pair k draws from stream derive_seed(seed, k).
TomographyRecord simulate_tomography(const TwoQubitDensity& rho,
                                     const std::vector<SettingPair>& pairs,
                                     std::uint64_t shots, std::uint64_t seed);

/// Record holding exact expected counts (no sampling noise).
TomographyRecord expected_record(const TwoQubitDensity& rho, const std::vector<SettingPair>& pairs,
                                 std::uint64_t shots);

struct MleOptions {
  int max_iterations = 200000;
  double gradient_tolerance = 1e-9;
  double regularization = 1e-12;
};

struct MleResult {
  TwoQubitDensity state;
  int iterations = 0;
  double gradient_norm = 0.0;
  double log_likelihood = 0.0;
};

/// Maximum-likelihood two-qubit state by diluted R-rho-R iteration on rho = A A^dagger.
///
/// Every accepted step increases the likelihood up to round-off and the step size adapts.
/// Stops when the stationarity residual ||(R - I) rho||_F drops below the tolerance.
/// Throws RankDeficiencyError for informationally incomplete data and ConvergenceError when
/// the cap is reached or no ascent step remains.
MleResult reconstruct_mle_detailed(const TomographyRecord& record, const MleOptions& options = {});

TwoQubitDensity reconstruct_mle(const TomographyRecord& record, const MleOptions& options = {});

}  // namespace mmsim
