#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mmsim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Numerical tolerances shared across modules.
///
/// `numeric` bounds round-off style errors (Hermiticity, unitarity, identities);
/// `truncation` bounds the probability mass allowed to fall outside a Fock cutoff.
struct Tolerances {
  double numeric = 1e-10;
  double truncation = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace mmsim
