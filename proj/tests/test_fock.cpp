#include <doctest.h>

#include <random>

#include "mmsim/errors.hpp"
#include "mmsim/fock.hpp"
#include "mmsim/linalg.hpp"
#include "oracles.hpp"

using namespace mmsim;

namespace {

CVector random_amplitudes(int n_max, std::mt19937_64& rng, int support) {
  std::normal_distribution<double> g;
  CVector v = CVector::Zero(n_max + 1);
  for (int n = 0; n <= support; ++n) v[n] = Complex(g(rng), g(rng));
  return v / v.norm();
}

CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(h);
  return qr.householderQ();
}

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("coherent state coefficients match the closed form") {
    const TruncatedState zero = coherent_state(Complex(0.0, 0.0), 10);
    CHECK(std::abs(zero.amplitude(0) - 1.0) < 1e-15);
    for (int n = 1; n <= 10; ++n) CHECK(std::abs(zero.amplitude(n)) < 1e-15);

    const TruncatedState s = coherent_state(Complex(2.0, 0.0), 30);
    CHECK(s.mean_photon_number() == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(std::abs(s.amplitude(2) / s.amplitude(0) - 4.0 / std::sqrt(2.0)) < 1e-12);
    for (int n = 0; n <= 30; ++n) CHECK(std::abs(s.amplitude(n) - oracle::coherent_coeff(2.0, n)) < 1e-12);
  }

  TEST_CASE("coherent state reports truncation") {
    CHECK_THROWS_AS(coherent_state(Complex(5.0, 0.0), 10), TruncationError);
  }

  TEST_CASE("displacement of vacuum and identity cases") {
    const CMatrix d0 = displacement_operator(Complex(0.0, 0.0), 12);
    CHECK((d0 - CMatrix::Identity(13, 13)).cwiseAbs().maxCoeff() < 1e-14);

    for (Complex a : {Complex(1.2, 0.0), Complex(0.4, -0.9), Complex(-1.5, 0.3)}) {
      const TruncatedState displaced = displace(TruncatedState::fock(0, 40), a);
      const TruncatedState direct = coherent_state(a, 40);
      CHECK((displaced.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("displaced single photon matches the closed form") {
    for (double a : {0.5, 1.0, 2.0, -1.3, std::sqrt(47.0)}) {
      const int n_max = static_cast<int>(a * a + 10 * std::abs(a) + 30);
      const TruncatedState s = displace(TruncatedState::fock(1, n_max), Complex(a, 0.0));
      double worst = 0.0;
      for (int n = 0; n <= n_max - 10; ++n) {
        worst = std::max(worst, std::abs(s.amplitude(n) - oracle::displaced_one_coeff(a, n)));
      }
      CHECK(worst < 1e-10);
      CHECK(s.mean_photon_number() == doctest::Approx(a * a + 1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("displaced single photon distribution") {
    const double a = 1.7;
    const RVector p = photon_number_distribution(displace(TruncatedState::fock(1, 60), Complex(a, 0.0)));
    for (int n = 0; n < 40; ++n) {
      const double expected = std::exp(-a * a + (n - 1) * std::log(a * a) - oracle::log_fact(n)) *
                              (n - a * a) * (n - a * a);
      CHECK(std::abs(p[n] - expected) < 1e-10);
    }
  }

  TEST_CASE("displacement composition is the identity on the resolved block") {
    for (Complex a : {Complex(0.3, 0.1), Complex(1.5, -0.7), Complex(0.0, 2.5)}) {
      const CMatrix prod = displacement_operator(a, 90) * displacement_operator(-a, 90);
      CHECK((prod.topLeftCorner(25, 25) - CMatrix::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("beam splitter amplitudes") {
    const CVector in = (CVector(2) << 1.0, 1.0).finished();
    CHECK((beam_splitter(1.0).apply(in) - in).norm() < 1e-15);
    const CVector out = beam_splitter(0.5).apply(in);
    CHECK(std::abs(out[0] - std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(out[1]) < 1e-14);
  }

  TEST_CASE("single photon on a balanced splitter") {
    CMatrix c = CMatrix::Zero(2, 2);
    c(1, 0) = 1.0;
    const CMatrix out = beam_splitter(0.5).apply_two_mode(c);
    CHECK(std::abs(std::abs(out(1, 0)) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(std::abs(out(0, 1)) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(out(0, 0)) < 1e-14);
  }

  TEST_CASE("two single photons bunch on a balanced splitter") {
    CMatrix c = CMatrix::Zero(2, 2);
    c(1, 1) = 1.0;
    const CMatrix out = beam_splitter(0.5).apply_two_mode(c);
    CHECK(std::abs(out(1, 1)) < 1e-14);
    CHECK(std::norm(out(2, 0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(out(0, 2)) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("mode transforms preserve the norm") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      const ModeTransform u(random_unitary(2, rng));
      CMatrix c = CMatrix::Zero(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; i + j < 6; ++j) c(i, j) = Complex(g(rng), g(rng));
      c /= c.norm();
      CHECK(u.apply_two_mode(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
      const CVector amps = (CVector(2) << Complex(g(rng), g(rng)), Complex(g(rng), g(rng))).finished();
      CHECK(u.apply(amps).norm() == doctest::Approx(amps.norm()).epsilon(1e-12));
    }
  }

  TEST_CASE("two-mode operator agrees with the coefficient map") {
    std::mt19937_64 rng(3);
    const ModeTransform u(random_unitary(2, rng));
    const int n_max = 6;
    const CMatrix op = u.fock_operator(n_max);
    CMatrix c = CMatrix::Zero(n_max + 1, n_max + 1);
    c(2, 1) = 0.6;
    c(0, 3) = Complex(0.0, 0.8);
    CVector flat = CVector::Zero((n_max + 1) * (n_max + 1));
    for (int i = 0; i <= n_max; ++i)
      for (int j = 0; j <= n_max; ++j) flat[i * (n_max + 1) + j] = c(i, j);
    const CVector out = op * flat;
    const CMatrix direct = u.apply_two_mode(c);
    for (int i = 0; i < direct.rows(); ++i)
      for (int j = 0; j < direct.cols(); ++j) CHECK(std::abs(out[i * (n_max + 1) + j] - direct(i, j)) < 1e-12);
  }

  TEST_CASE("loss channel cases") {
    const DensityOperator one = DensityOperator::fock(1, 5);
    CHECK((loss_channel(1.0, one).matrix() - one.matrix()).norm() < 1e-15);
    const DensityOperator gone = loss_channel(0.0, one);
    CHECK(std::abs(gone.matrix()(0, 0) - 1.0) < 1e-15);
    const DensityOperator half = loss_channel(0.5, one);
    CHECK(std::abs(half.matrix()(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(half.matrix()(1, 1) - 0.5) < 1e-14);
  }

  TEST_CASE("loss channel is a semigroup") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityOperator rho = TruncatedState(random_amplitudes(12, rng, 12)).density();
      const double e1 = 0.1 + 0.08 * trial, e2 = 0.9 - 0.05 * trial;
      const CMatrix twice = loss_channel(e1, loss_channel(e2, rho)).matrix();
      const CMatrix once = loss_channel(e1 * e2, rho).matrix();
      CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("loss maps a coherent state to an attenuated coherent state") {
    const Complex a(1.3, 0.4);
    const DensityOperator out = loss_channel(0.3, coherent_state(a, 40).density());
    const CMatrix expected = coherent_state(std::sqrt(0.3) * a, 40).density().matrix();
    CHECK((out.matrix() - expected).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("click detector probabilities") {
    const ClickDetector ideal(0.7, 0.0);
    CHECK(no_click_probability(ideal, DensityOperator::fock(0, 4)) == doctest::Approx(1.0));
    const ClickDetector d(0.6, 1e-3);
    for (int n = 0; n <= 6; ++n) {
      const double expected = (1.0 - 1e-3) * std::pow(0.4, n);
      CHECK(no_click_probability(d, DensityOperator::fock(n, 8)) == doctest::Approx(expected).epsilon(1e-13));
      CHECK(click_probability(d, DensityOperator::fock(n, 8)) == doctest::Approx(1.0 - expected).epsilon(1e-13));
    }
    const Complex a(1.1, -0.6);
    double poisson_sum = 0.0;
    for (int n = 0; n < 80; ++n) poisson_sum += oracle::poisson(std::norm(a), n) * (1.0 - 1e-3) * std::pow(0.4, n);
    const double p = no_click_probability(d, coherent_state(a, 40).density());
    CHECK(p == doctest::Approx(poisson_sum).epsilon(1e-10));
    CHECK(p == doctest::Approx((1.0 - 1e-3) * std::exp(-0.6 * std::norm(a))).epsilon(1e-10));
  }

  TEST_CASE("photon-number distributions") {
    const RVector one = photon_number_distribution(TruncatedState::fock(1, 4));
    CHECK(one[1] == 1.0);
    CHECK(one.sum() == 1.0);
    const RVector p = photon_number_distribution(coherent_state(Complex(std::sqrt(2.0), 0.0), 40));
    for (int n = 0; n <= 40; ++n) CHECK(std::abs(p[n] - oracle::poisson(2.0, n)) < 1e-13);
  }

  TEST_CASE("thermal state") {
    const DensityOperator t = DensityOperator::thermal(0.8, 80);
    for (int n = 0; n < 20; ++n) CHECK(std::abs(t.matrix()(n, n).real() - oracle::thermal(0.8, n)) < 1e-13);
    CHECK(t.mean_photon_number() == doctest::Approx(0.8).epsilon(1e-9));
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(ClickDetector(1.2, 0.0), ValidationError);
    CHECK_THROWS_AS(loss_channel(-0.1, DensityOperator::fock(0, 2)), ValidationError);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(ModeTransform{bad}, ValidationError);
  }

  TEST_CASE("linear algebra helpers") {
    CMatrix a(2, 2);
    a << 0.0, 1.0, -1.0, 0.0;
    const CMatrix e = linalg::expm(a * 0.7);
    CHECK(std::abs(e(0, 0) - std::cos(0.7)) < 1e-14);
    CHECK(std::abs(e(0, 1) - std::sin(0.7)) < 1e-14);
    const auto rule = linalg::gauss_hermite(20);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double x = rule.nodes[i];
      m0 += rule.weights[i];
      m2 += rule.weights[i] * x * x;
      m4 += rule.weights[i] * x * x * x * x;
    }
    CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3 * std::sqrt(kPi) / 4).epsilon(1e-13));
  }
}
