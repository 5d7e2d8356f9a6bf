#pragma once

#include "mmsim/types.hpp"

namespace mmsim::linalg {

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
CMatrix expm(const CMatrix& a);

/// Largest deviation of `m` from Hermiticity, max |m - m^H|.
double hermiticity_error(const CMatrix& m);

/// Largest entry of |u^H u - I|.
double unitarity_error(const CMatrix& u);

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const CMatrix& m);

/// Principal square root of a Hermitian PSD matrix (negative eigenvalues clipped to zero).
CMatrix sqrt_psd(const CMatrix& m);

/// log(n!) via lgamma; exact enough for the photon numbers used here.
double log_factorial(int n);

/// log of the binomial coefficient C(n, k).
double log_binomial(int n, int k);

struct Quadrature {
  RVector nodes;
  RVector weights;
};

/// Gauss-Hermite rule for integrals of f(x) exp(-x^2) over the real line (Golub-Welsch).
Quadrature gauss_hermite(int n);

}  // namespace mmsim::linalg
