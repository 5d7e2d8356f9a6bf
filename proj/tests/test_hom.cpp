#include <doctest.h>

#include "mmsim/errors.hpp"
#include "mmsim/hom.hpp"
#include "oracles.hpp"

using namespace mmsim;

namespace {

RVector poisson_vec(double mean, int n_max) {
  RVector p(n_max + 1);
  for (int n = 0; n <= n_max; ++n) p[n] = oracle::poisson(mean, n);
  return p;
}

RVector delta(int n, int n_max) {
  RVector p = RVector::Zero(n_max + 1);
  p[n] = 1.0;
  return p;
}

// Two coherent fields of random relative phase on a balanced splitter, ideal click detectors.
double coherent_coincidence(double mu1, double mu2) {
  const int steps = 4000;
  double sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double phi = 2.0 * kPi * (k + 0.5) / steps;
    const Complex a(std::sqrt(mu1), 0.0), b = std::polar(std::sqrt(mu2), phi);
    const double i1 = std::norm(a + b) / 2.0, i2 = std::norm(a - b) / 2.0;
    sum += (1.0 - std::exp(-i1)) * (1.0 - std::exp(-i2));
  }
  return sum / steps;
}

double direct_overlap(const TemporalProfiles& p, int steps) {
  const double k = 4.0 * std::log(2.0) / (p.csp_fwhm * p.csp_fwhm);
  double cross = 0.0, c = 0.0, h = 0.0;
  const double dt = p.window / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = -0.5 * p.window + (i + 0.5) * dt;
    const double ic = std::exp(-k * t * t), ih = std::exp(-std::abs(t) / p.coherence_time);
    cross += std::sqrt(ic * ih) * dt;
    c += ic * dt;
    h += ih * dt;
  }
  return cross * cross / (c * h);
}

}  // namespace

TEST_SUITE("hom") {
  TEST_CASE("two single photons never coincide") {
    const ClickDetector ideal(1.0, 0.0);
    CHECK(coincidence_probability(delta(1, 3), delta(1, 3), delta(0, 3), ideal) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(coincidence_probability(delta(1, 3), delta(1, 3), delta(0, 3), ideal)) < 1e-15);
    CHECK(coincidence_probability(delta(1, 3), delta(0, 3), delta(1, 3), ideal) == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("phase-averaged coherent inputs") {
    const ClickDetector ideal(1.0, 0.0);
    for (auto [m1, m2] : {std::pair{0.05, 0.05}, std::pair{0.3, 0.1}, std::pair{1.0, 0.4}}) {
      const double direct = coherent_coincidence(m1, m2);
      const double fock = coincidence_probability(poisson_vec(m1, 25), poisson_vec(m2, 25), delta(0, 25), ideal);
      CHECK(fock == doctest::Approx(direct).epsilon(1e-9));
    }
    const double v = hom_visibility(poisson_vec(0.002, 14), 0.002, 1.0, ideal);
    CHECK(v == doctest::Approx(0.5).epsilon(0.01));
    CHECK(v <= 0.5 + 1e-12);
  }

  TEST_CASE("distinguishable inputs show no dip") {
    HomParams p;
    p.overlap = 0.0;
    CHECK(std::abs(hom_visibility(p)) < 1e-12);
  }

  TEST_CASE("heralded signal distribution") {
    HomParams p;
    p.pair_probability = 0.05;
    const int n_max = 10;
    const RVector s = heralded_signal_distribution(p, n_max);
    std::vector<double> pairs(n_max + 1);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      pairs[n] = (1.0 - 0.05) * std::pow(0.05, n) * (1.0 - std::pow(1.0 - p.idler_efficiency, n));
      total += pairs[n];
    }
    for (int k = 0; k <= n_max; ++k) {
      double expected = 0.0;
      for (int n = k; n <= n_max; ++n) {
        expected += pairs[n] / total * std::exp(oracle::log_fact(n) - oracle::log_fact(k) - oracle::log_fact(n - k)) *
                    std::pow(0.19, k) * std::pow(0.81, n - k);
      }
      CHECK(s[k] == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s[0] == doctest::Approx(0.81).epsilon(0.01));
  }

  TEST_CASE("expected visibility at the operating point") {
    const HomParams p;
    CHECK(std::abs(hom_visibility(p) - 0.85) <= 0.03);
  }

  TEST_CASE("visibility against source parameters") {
    HomParams p;
    double prev = 2.0;
    for (double pair = 0.001; pair <= 0.1; pair *= 1.5) {
      p.pair_probability = pair;
      const double v = hom_visibility(p);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }

    HomParams q;
    std::vector<double> mus, vs;
    for (double mu = 0.001; mu <= 0.3; mu *= 1.2) {
      q.csp_mean = mu;
      mus.push_back(mu);
      vs.push_back(hom_visibility(q));
    }
    const auto peak = std::max_element(vs.begin(), vs.end()) - vs.begin();
    CHECK(peak > 0);
    CHECK(peak + 1 < static_cast<long>(vs.size()));
    for (std::size_t i = static_cast<std::size_t>(peak) + 1; i < vs.size(); ++i) CHECK(vs[i] <= vs[i - 1] + 1e-12);
    for (long i = 1; i <= peak; ++i) CHECK(vs[i] >= vs[i - 1] - 1e-12);
  }

  TEST_CASE("overlap ratio") {
    CHECK(overlap_ratio(0.74, 0.85) == doctest::Approx(0.8706).epsilon(1e-4));
    CHECK(overlap_ratio(0.85, 0.85) == 1.0);
    CHECK(overlap_ratio(0.5, 1.0) == 0.5);
    CHECK_THROWS_AS(overlap_ratio(0.9, 0.85), ModelInconsistencyError);
    CHECK_THROWS_AS(overlap_ratio(0.5, 0.0), ValidationError);
  }

  TEST_CASE("temporal overlap") {
    TemporalProfiles p;
    CHECK(temporal_overlap(p) == doctest::Approx(direct_overlap(p, 200000)).epsilon(1e-8));
    p.window = 1e-4;
    CHECK(temporal_overlap(p) == doctest::Approx(1.0).epsilon(1e-6));
    // The cusp of the exponential profile against the smooth Gaussian gives a shallow bump
    // below about 1.5 ns; beyond it the overlap falls monotonically.
    TemporalProfiles q;
    double prev = 1.0 + 1e-12;
    for (double w = 0.1; w <= 20.0; w += 0.1) {
      q.window = w;
      const double xi = temporal_overlap(q);
      CHECK(xi <= prev + (w < 1.5 ? 1e-4 : 1e-12));
      CHECK(xi <= 1.0 + 1e-12);
      if (w < 1.5) CHECK(xi == doctest::Approx(direct_overlap(q, 200000)).epsilon(1e-9));
      prev = xi;
    }
    const auto points = overlap_vs_window(TemporalProfiles{}, {1.0, 3.0}, 0.85);
    CHECK(points[1].measured_visibility == doctest::Approx(0.85 * temporal_overlap(TemporalProfiles{})));
  }

  TEST_CASE("pulse width calibration reproduces the overlap ratio") {
    const TemporalProfiles p;
    const double target = overlap_ratio(0.74, 0.85);
    const double fwhm = calibrate_csp_fwhm(p, target);
    TemporalProfiles q = p;
    q.csp_fwhm = fwhm;
    CHECK(temporal_overlap(q) == doctest::Approx(target).epsilon(1e-6));
    CHECK(std::abs(temporal_overlap(q) - target) <= 0.05);
  }

  TEST_CASE("invalid inputs") {
    HomParams p;
    p.pair_probability = 1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    HomParams q;
    q.idler_efficiency = 0.0;
    CHECK_THROWS_AS(heralded_signal_distribution(q, 6), UndefinedInputError);
  }
}
