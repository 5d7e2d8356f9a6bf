#include <doctest.h>

#include <random>

#include "mmsim/errors.hpp"
#include "mmsim/polarization.hpp"

using namespace mmsim;

namespace {

Vector2c linear(double theta) { return Vector2c(std::cos(theta), std::sin(theta)); }

TwoQubitDensity random_state(std::mt19937_64& rng, int rank) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = Complex(g(rng), g(rng));
  Matrix4c rho = a * a.adjoint();
  return TwoQubitDensity(rho / rho.trace().real());
}

// Independent correlator: sum over outcome projectors built from explicit kets.
double correlator_by_projectors(const Matrix4c& rho, double ta, double tb) {
  double e = 0.0;
  for (int sa : {1, -1}) {
    for (int sb : {1, -1}) {
      const Vector2c ka = sa > 0 ? linear(ta) : linear(ta + kPi / 2);
      const Vector2c kb = sb > 0 ? linear(tb) : linear(tb + kPi / 2);
      Eigen::Vector4cd k;
      k << ka[0] * kb[0], ka[0] * kb[1], ka[1] * kb[0], ka[1] * kb[1];
      e += sa * sb * (k.adjoint() * rho * k)(0, 0).real();
    }
  }
  return e;
}

}  // namespace

TEST_SUITE("polarization") {
  TEST_CASE("bell state witnesses") {
    const TwoQubitDensity bell = bell_state();
    CHECK(concurrence(bell) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ppt_min_eigenvalue(bell) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(chsh_value(bell, default_chsh_settings()) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(chsh_maximum(bell) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  }

  TEST_CASE("correlator agrees with explicit projectors") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int trial = 0; trial < 20; ++trial) {
      const TwoQubitDensity rho = random_state(rng, 1 + trial % 4);
      const double ta = u(rng), tb = u(rng);
      CHECK(correlator(rho, MeasurementSetting(ta), MeasurementSetting(tb)) ==
            doctest::Approx(correlator_by_projectors(rho.matrix(), ta, tb)).epsilon(1e-12));
    }
  }

  TEST_CASE("werner state edges") {
    CHECK((werner_state(1.0).matrix() - bell_state().matrix()).norm() < 1e-15);
    CHECK((werner_state(0.0).matrix() - 0.25 * Matrix4c::Identity()).norm() < 1e-15);
    CHECK(concurrence(werner_state(0.0)) == doctest::Approx(0.0));
    CHECK(chsh_value(werner_state(0.94), default_chsh_settings()) ==
          doctest::Approx(2.0 * std::sqrt(2.0) * 0.94).epsilon(1e-12));
    CHECK(chsh_value(werner_state(0.5), default_chsh_settings()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(chsh_maximum(werner_state(0.7)) == doctest::Approx(2.0 * std::sqrt(2.0) * 0.7).epsilon(1e-12));
    CHECK(concurrence(werner_state(1.0 / 3.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ppt_min_eigenvalue(werner_state(0.396)) == doctest::Approx(-0.047).epsilon(1e-3));
    CHECK_THROWS_AS(werner_state(1.2), ValidationError);
  }

  TEST_CASE("werner identities over a visibility grid") {
    for (int k = 0; k <= 100; ++k) {
      const double w = k / 100.0;
      const TwoQubitDensity rho = werner_state(w);
      CHECK(std::abs(concurrence(rho) - std::max(0.0, (3.0 * w - 1.0) / 2.0)) < 1e-10);
      CHECK(std::abs(ppt_min_eigenvalue(rho) - (1.0 - 3.0 * w) / 4.0) < 1e-10);
      CHECK(std::abs(chsh_maximum(rho) - 2.0 * std::sqrt(2.0) * w) < 1e-10);
      if (w > 1.0 / 3.0) CHECK(std::abs(concurrence(rho) + 2.0 * ppt_min_eigenvalue(rho)) < 1e-10);
    }
  }

  TEST_CASE("product states respect the local bound") {
    const TwoQubitDensity hh = TwoQubitDensity::product(Vector2c(1, 0), Vector2c(1, 0));
    CHECK(chsh_maximum(hh) == doctest::Approx(2.0).epsilon(1e-12));
    const Eigen::Matrix3d t = correlation_matrix(hh);
    CHECK(std::abs(t(2, 2) - 1.0) < 1e-14);
    CHECK(t.cwiseAbs().sum() == doctest::Approx(1.0));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int trial = 0; trial < 50; ++trial) {
      ChshSettings s{MeasurementSetting(u(rng)), MeasurementSetting(u(rng)), MeasurementSetting(u(rng)),
                     MeasurementSetting(u(rng))};
      CHECK(chsh_value(hh, s) <= 2.0 + 1e-12);
      CHECK(ppt_min_eigenvalue(hh) >= -1e-12);
    }
  }

  TEST_CASE("horodecki bound dominates every setting") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int trial = 0; trial < 40; ++trial) {
      const TwoQubitDensity rho = random_state(rng, 1 + trial % 4);
      const double bound = chsh_maximum(rho);
      for (int k = 0; k < 20; ++k) {
        ChshSettings s{MeasurementSetting(u(rng), u(rng)), MeasurementSetting(u(rng), u(rng)),
                       MeasurementSetting(u(rng), u(rng)), MeasurementSetting(u(rng), u(rng))};
        CHECK(chsh_value(rho, s) <= bound + 1e-6);
      }
      const ChshSettings best = optimize_chsh_settings(rho);
      CHECK(chsh_value(rho, best) == doctest::Approx(bound).epsilon(1e-6));
    }
  }

  TEST_CASE("concurrence of pure states") {
    for (double t : {0.0, 0.2, 0.5, kPi / 4}) {
      Eigen::Vector4cd psi(std::cos(t), 0, 0, std::sin(t));
      const TwoQubitDensity rho(psi * psi.adjoint());
      CHECK(concurrence(rho) == doctest::Approx(std::abs(std::sin(2 * t))).epsilon(1e-10));
    }
  }

  TEST_CASE("separable mixtures are PPT") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      Matrix4c rho = Matrix4c::Zero();
      for (int k = 0; k < 3; ++k) {
        Vector2c a(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
        Vector2c b(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
        rho += TwoQubitDensity::product(a.normalized(), b.normalized()).matrix() / 3.0;
      }
      const TwoQubitDensity s(rho);
      CHECK(ppt_min_eigenvalue(s) >= -1e-10);
      CHECK(concurrence(s) <= 1e-7);
    }
  }

  TEST_CASE("fidelity") {
    CHECK(fidelity(bell_state(), bell_state()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(bell_state(), werner_state(0.6)) == doctest::Approx(0.6 + 0.4 / 4).epsilon(1e-12));
    const TwoQubitDensity mixed = werner_state(0.3);
    CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("invalid density matrices are rejected") {
    Matrix4c bad = Matrix4c::Identity();
    CHECK_THROWS_AS(TwoQubitDensity{bad}, ValidationError);
    Matrix4c neg = Matrix4c::Zero();
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    CHECK_THROWS_AS(TwoQubitDensity{neg}, ValidationError);
  }

  TEST_CASE("arbitrary analyzer basis keeps the entangled form") {
    const auto identity = arbitrary_polarization_equivalence_check(1.0, 0.0, 0.3);
    CHECK(identity.equivalent);
    CHECK(identity.residual < 1e-14);
    CHECK(arbitrary_polarization_equivalence_check(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0).residual < 1e-10);
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int trial = 0; trial < 100; ++trial) {
      Vector2c v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
      v.normalize();
      const auto c = arbitrary_polarization_equivalence_check(v[0], v[1], u(rng));
      CHECK(c.equivalent);
      CHECK(c.residual < 1e-10);
    }
  }
}
