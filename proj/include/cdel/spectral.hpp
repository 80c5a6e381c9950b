#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

// Zeta-regularized spectral sums for one-dimensional Schrodinger operators.
//
// A SpectrumModel is either a closed-form quadratic family c (n + alpha)^2 over
// n in Z, or an explicit list of low eigenvalues together with the data (L,
// int V) that fixes the quadratic tail the remaining spectrum is modeled by.
// The zeta function of a model is evaluated by Hurwitz-zeta resummation of the
// tail; at the half-integer points where the tail hits the Hurwitz pole the
// evaluation returns the finite part in s together with the residue.
namespace cdel::spectral {

struct SpectrumModel {
    enum class Kind { affine_square, numeric };
    enum class Topology { circle, interval };

    Kind kind = Kind::affine_square;
    double c = 1.0;     // affine_square scale
    double alpha = 0.0; // affine_square offset in [0, 1)

    std::vector<double> eigenvalues; // numeric head, ascending, zero modes kept
    double L = 0.0;                  // base length
    double intV = 0.0;               // integral of the potential over the base
    Topology topology = Topology::circle;

    int zero_modes() const;
};

SpectrumModel affine_square_model(double c, double alpha);
SpectrumModel numeric_model(std::vector<double> eigenvalues, double L, double intV,
                            SpectrumModel::Topology topology = SpectrumModel::Topology::circle);

struct ZetaPoint {
    double fp = 0.0;      // value, or finite part in s at a pole
    double residue = 0.0; // residue of the simple pole, 0 when regular
    bool pole = false;
};

// zeta(s) = sum lambda^-s over nonzero modes, continued via the tail families
ZetaPoint spectral_zeta(const SpectrumModel& m, double s);

double a_half(const SpectrumModel& m);      // residue at s = -1/2
double fp_neg_half(const SpectrumModel& m); // finite part at s = -1/2

double log_det_star(const SpectrumModel& m); // -zeta'(0), zero modes dropped
double zeta_det_star(const SpectrumModel& m);

// lowest nonzero eigenvalues of the model, ascending, multiplicities expanded
std::vector<double> lowest_eigenvalues(const SpectrumModel& m, std::size_t count);

// heat-kernel route: Mellin transform of the theta function with the t->0
// singularity split off in closed form; quadratic families only
double mellin_zeta(const SpectrumModel& m, double s);

// half the difference of the two zeta(0) branches of the first-order family
// n + alpha, n in Z
double eta0_circle(double alpha);

// Rayleigh-Ritz spectra with closed-form matrix elements
// interval [0, L], Dirichlet ends, V = v0 + v1 x + v2 x^2; lowest n_keep values
std::vector<double> interval_quadratic_spectrum(double L, double v0, double v1, double v2,
                                                int n_keep, int n_basis);
// circle of length L, V = v0 + v1 cos(2 pi x / L); lowest n_keep values
std::vector<double> circle_cosine_spectrum(double L, double v0, double v1, int n_keep,
                                           int n_basis);

} // namespace cdel::spectral
