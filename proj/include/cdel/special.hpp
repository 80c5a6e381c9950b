#pragma once

#include <complex>

// Scalar special functions used by the spectral and family-determinant layers.
// Everything here is deterministic and has no state.

namespace cdel::special {

using cplx = std::complex<double>;

struct with_ds {
    cplx value;
    cplx ds; // derivative with respect to s
};

// Even Bernoulli number B_{two_k}, two_k in [0, 30].
double bernoulli_even(int two_k);

// Hurwitz zeta sum_{n>=0} (n+a)^{-s}, continued in s.  Requires a > 0 and
// s != 1.  Absolute error below 1e-12 for |s| <= 10.
cplx hurwitz_zeta(cplx s, double a);
double hurwitz_zeta(double s, double a);
with_ds hurwitz_zeta_ds(cplx s, double a);
double hurwitz_zeta_ds_real(double s, double a);

// Digamma on the real line, poles at 0, -1, -2, ... rejected.
double digamma(double x);

// Generalized binomial coefficient binom(-s, j) and its s-derivative.
cplx binom_neg(cplx s, int j);
with_ds binom_neg_ds(cplx s, int j);

// Jacobi theta_1(z | tau) in the convention with simple zero at z = 0 and
// theta1(z+1) = -theta1(z).  Im(tau) > 0.
cplx theta1(cplx z, cplx tau);
// theta1(z | tau) / z with the removable singularity filled in.
cplx theta1_over_z(cplx z, cplx tau);
// Dedekind eta(tau), Im(tau) > 0.
cplx dedekind_eta(cplx tau);

// Exponential integral E_1(x) for x > 0.
double expint_e1(double x);

// sum over the integer lattice of exp(-pi (k+x)^T A (k+x)) for symmetric
// positive definite A = [[a11, a12], [a12, a22]].  Switches to the Poisson
// dual form when the direct sum decays too slowly.
double lattice_gauss_sum(double a11, double a12, double a22, double x1, double x2);

} // namespace cdel::special
