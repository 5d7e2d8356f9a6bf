#include <benchmark/benchmark.h>

#include <cmath>

#include "mmsim/fock.hpp"
#include "mmsim/macro_size.hpp"
#include "mmsim/noise_model.hpp"
#include "mmsim/spdc.hpp"
#include "mmsim/tomography.hpp"

using namespace mmsim;

static void BM_DisplacementOperator(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(displacement_operator(Complex(1.5, 0.5), n_max));
  }
}
BENCHMARK(BM_DisplacementOperator)->Arg(20)->Arg(60)->Arg(120);

static void BM_DisplaceState(benchmark::State& state) {
  const TruncatedState photon = TruncatedState::fock(1, 120);
  for (auto _ : state) benchmark::DoNotOptimize(displace(photon, Complex(std::sqrt(47.0), 0.0)));
}
BENCHMARK(BM_DisplaceState);

static void BM_GuessingProbability(benchmark::State& state) {
  const double alpha = std::sqrt(47.0);
  const MacroComponentPair pair = macro_components(alpha, default_cutoff(alpha));
  for (auto _ : state) benchmark::DoNotOptimize(guessing_probability(pair, 10.0));
}
BENCHMARK(BM_GuessingProbability);

static void BM_PredictWitnesses(benchmark::State& state) {
  const ExperimentParams params;
  for (auto _ : state) benchmark::DoNotOptimize(predict_witnesses(13.3, params));
}
BENCHMARK(BM_PredictWitnesses);

static void BM_JointProbabilities(benchmark::State& state) {
  const DetailedParams params;
  for (auto _ : state) benchmark::DoNotOptimize(joint_probabilities(0.3, 0.7, params));
}
BENCHMARK(BM_JointProbabilities);

static void BM_MonteCarloOracle(benchmark::State& state) {
  const DetailedParams params;
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_oracle(0.3, 0.7, params, 10000, 5));
}
BENCHMARK(BM_MonteCarloOracle)->Unit(benchmark::kMillisecond);

static void BM_MleReconstruction(benchmark::State& state) {
  const TomographyRecord record = simulate_tomography(werner_state(0.94), default_tomography_settings(), 1000000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_mle(record));
}
BENCHMARK(BM_MleReconstruction)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
