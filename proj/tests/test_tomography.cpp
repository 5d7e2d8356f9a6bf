#include <doctest.h>

#include "mmsim/errors.hpp"
#include "mmsim/tomography.hpp"

using namespace mmsim;

namespace {

Vector2c ket(double theta, double chi, bool plus) {
  if (plus) return Vector2c(std::cos(theta), std::polar(1.0, chi) * std::sin(theta));
  return Vector2c(std::sin(theta), -std::polar(1.0, chi) * std::cos(theta));
}

double born(const Matrix4c& rho, const SettingPair& p, bool a_plus, bool b_plus) {
  const Vector2c a = ket(p.alice.theta(), p.alice.chi(), a_plus);
  const Vector2c b = ket(p.bob.theta(), p.bob.chi(), b_plus);
  Eigen::Vector4cd k;
  k << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
  return (k.adjoint() * rho * k)(0, 0).real();
}

}  // namespace

TEST_SUITE("tomography") {
  TEST_CASE("analyzer states span the Bloch axes") {
    const auto states = default_analyzer_states();
    REQUIRE(states.size() == 6);
    const Eigen::Vector3d z = states[0].bloch(), x = states[2].bloch(), y = states[4].bloch();
    CHECK((z - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);
    CHECK((states[1].bloch() + z).norm() < 1e-12);
    CHECK(std::abs(x.dot(z)) < 1e-12);
    CHECK(std::abs(y.dot(z)) < 1e-12);
    CHECK(std::abs(x.dot(y)) < 1e-12);
    CHECK(default_tomography_settings().size() == 36);
  }

  TEST_CASE("outcome probabilities equal explicit Born rule values") {
    const Matrix4c rho = werner_state(0.7).matrix();
    for (const SettingPair& p : default_tomography_settings()) {
      const OutcomeCounts q = outcome_probabilities(werner_state(0.7), p);
      CHECK(q[0] == doctest::Approx(born(rho, p, true, true)).epsilon(1e-12));
      CHECK(q[1] == doctest::Approx(born(rho, p, true, false)).epsilon(1e-12));
      CHECK(q[2] == doctest::Approx(born(rho, p, false, true)).epsilon(1e-12));
      CHECK(q[3] == doctest::Approx(born(rho, p, false, false)).epsilon(1e-12));
    }
  }

  TEST_CASE("HH state on the H/H setting clicks ++ only") {
    const TwoQubitDensity hh = TwoQubitDensity::product(Vector2c(1, 0), Vector2c(1, 0));
    const SettingPair hpair{MeasurementSetting(0.0), MeasurementSetting(0.0)};
    const TomographyRecord r = simulate_tomography(hh, {hpair}, 5000, 3);
    CHECK(r.entries()[0].counts[0] == 5000);
    CHECK(r.entries()[0].counts[1] + r.entries()[0].counts[2] + r.entries()[0].counts[3] == 0);
  }

  TEST_CASE("frequencies converge to Born probabilities") {
    const TwoQubitDensity rho = werner_state(0.8);
    const auto pairs = default_tomography_settings();
    const std::uint64_t shots = 1000000;
    const TomographyRecord r = simulate_tomography(rho, pairs, shots, 21);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const OutcomeCounts p = outcome_probabilities(rho, pairs[k]);
      for (int o = 0; o < 4; ++o) {
        const double sd = std::sqrt(shots * p[o] * (1.0 - p[o]));
        CHECK(std::abs(r.entries()[k].counts[o] - shots * p[o]) <= 5.0 * sd + 1e-9);
      }
    }
  }

  TEST_CASE("simulation is deterministic for a seed") {
    const auto pairs = default_tomography_settings();
    const TomographyRecord a = simulate_tomography(werner_state(0.9), pairs, 1000, 5);
    const TomographyRecord b = simulate_tomography(werner_state(0.9), pairs, 1000, 5);
    const TomographyRecord c = simulate_tomography(werner_state(0.9), pairs, 1000, 6);
    bool same = true, differ = false;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      same = same && a.entries()[k].counts == b.entries()[k].counts;
      differ = differ || a.entries()[k].counts != c.entries()[k].counts;
    }
    CHECK(same);
    CHECK(differ);
  }

  TEST_CASE("bell state round trip at 1e6 shots") {
    const TomographyRecord r = simulate_tomography(bell_state(), default_tomography_settings(), 1000000, 9);
    const MleResult res = reconstruct_mle_detailed(r);
    CHECK(fidelity(bell_state(), res.state) >= 0.995);
    CHECK(res.gradient_norm < 1e-9);
  }

  TEST_CASE("exact frequencies reconstruct the state") {
    const TomographyRecord r = expected_record(bell_state(), default_tomography_settings(), 1000);
    CHECK(fidelity(bell_state(), reconstruct_mle(r)) >= 1.0 - 1e-6);
    const TwoQubitDensity w = werner_state(0.6);
    const TwoQubitDensity est = reconstruct_mle(expected_record(w, default_tomography_settings(), 1000));
    CHECK((est.matrix() - w.matrix()).norm() < 1e-5);
  }

  TEST_CASE("werner 0.5 partial transpose survives reconstruction") {
    const TomographyRecord r = simulate_tomography(werner_state(0.5), default_tomography_settings(), 1000000, 13);
    const TwoQubitDensity est = reconstruct_mle(r);
    CHECK(std::abs(ppt_min_eigenvalue(est) - (1.0 - 1.5) / 4.0) <= 0.01);
  }

  TEST_CASE("estimates are valid density matrices") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const TomographyRecord r = simulate_tomography(werner_state(0.3 * seed), default_tomography_settings(), 200, seed);
      const TwoQubitDensity est = reconstruct_mle(r);
      CHECK(std::abs(est.matrix().trace().real() - 1.0) < 1e-12);
      CHECK((est.matrix() - est.matrix().adjoint()).norm() < 1e-12);
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix4c>(est.matrix()).eigenvalues().minCoeff() >= -1e-12);
    }
  }

  TEST_CASE("degenerate records") {
    auto entries = expected_record(bell_state(), default_tomography_settings(), 100).entries();
    entries[7].counts = {0, 0, 0, 0};
    CHECK_THROWS_AS(reconstruct_mle(TomographyRecord(entries, 100)), RankDeficiencyError);

    std::vector<SettingPair> zz{{MeasurementSetting(0.0), MeasurementSetting(0.0)},
                                {MeasurementSetting(kPi / 2), MeasurementSetting(0.0)}};
    CHECK_THROWS_AS(reconstruct_mle(expected_record(bell_state(), zz, 100)), RankDeficiencyError);

    auto bad = expected_record(bell_state(), default_tomography_settings(), 100).entries();
    bad[0].counts[0] = -1.0;
    CHECK_THROWS_AS(TomographyRecord(bad, 100), ValidationError);
    auto wrong_total = expected_record(bell_state(), default_tomography_settings(), 100).entries();
    wrong_total[0].counts[0] += 5.0;
    CHECK_THROWS_AS(TomographyRecord(wrong_total, 100), ValidationError);
  }
}
