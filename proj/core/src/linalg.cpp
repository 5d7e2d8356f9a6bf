#include "mmsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmsim::linalg {

namespace {

double one_norm(const CMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  const auto n = a.rows();
  if (n == 0) return a;

  // Scale so the Taylor tail after 18 terms is below 0.5^19/19!, far under 1e-16.
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);

  constexpr int kTerms = 18;
  CMatrix result = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= kTerms; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

double hermiticity_error(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const CMatrix& u) {
  const CMatrix id = CMatrix::Identity(u.cols(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMatrix sqrt_psd(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

Quadrature gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k - 1, k) = jacobi(k, k - 1) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  Quadrature q{solver.eigenvalues(), RVector(n)};
  for (int k = 0; k < n; ++k) {
    const double v = solver.eigenvectors()(0, k);
    q.weights[k] = std::sqrt(kPi) * v * v;
  }
  return q;
}

}  // namespace mmsim::linalg
