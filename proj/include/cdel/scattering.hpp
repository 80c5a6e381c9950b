#pragma once

#include "cdel/gy.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

// Half-line reflection data for channel potentials with compact support.  Each
// channel solves -psi'' + V psi = lambda^2 psi from its boundary condition at
// the origin; past the support the solution is matched onto incoming and
// outgoing waves and the reflection coefficient is their ratio.  Channel
// matrices are diagonal; boundary twists conjugate one factor before the
// product is taken.
namespace cdel::scattering {

using cmat = Eigen::MatrixXcd;

struct Channel {
    gy::BC bc;
    std::function<double(double)> V; // zero past x = a
    double a = 1.0;
};

std::complex<double> reflection(const Channel& ch, double lambda);

cmat reflection_diag(const std::vector<Channel>& chs, double lambda);

// H^{-1} C_minus(lambda) H C_plus(lambda)
cmat twisted_reflection(const cmat& H, const std::vector<Channel>& minus,
                        const std::vector<Channel>& plus, double lambda);

// limit of C(lambda) as lambda -> 0 by Richardson extrapolation over
// lambda0 / 2^j; a threshold resonance makes the extrapolation diverge and is
// reported as degenerate_error
cmat zero_energy(const std::function<cmat(double)>& C, double lambda0 = 0.1);

// det(1 - Cf) with the unitarity bookkeeping the glued determinants rely on:
// eigenvalues must pair under conjugation, the determinant must come out real
// and positive, and an eigenvalue at 1 is a degenerate configuration
double det_one_minus(const cmat& Cf);

} // namespace cdel::scattering
