#pragma once

#include "cdel/gy.hpp"
#include "cdel/spectral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

// Determinants of Laplace operators glued along a long product neck.
//
// Everything is reduced to one-dimensional mode problems over the spectrum of
// the neck cross-section: each cross-section eigenvalue mu contributes
// -y'' + (mu + V) y on the glued interval, the zero modes contribute a finite
// matching determinant mixed by the gluing holonomy, and the regularized
// product over modes is assembled from per-mode logs with the divergent Weyl
// tail resummed through the cross-section zeta function.  Operator
// determinants here are graded: the scalar per-mode product enters squared.
namespace cdel::surgery {

using cmat = Eigen::MatrixXcd;

// cross-section data shared by both ends of the neck
struct BoundaryData {
    spectral::SpectrumModel spectrum; // one copy of the cross-section operator
    int copies = 1;                   // independent copies of the cross-section
    cmat hol0, hol1;                  // gluing holonomies on the zero channels
    double theta_nonzero = 0.0;       // relative twist on every nonzero mode
};

// one side's interior stand-in: a boundary condition at the far end and a
// potential supported on [0, a] next to it, with a free neck beyond.  The
// potential must vanish (with its derivative) at x = a.
struct HalfModel {
    gy::BC bc;
    std::function<double(double)> V; // empty means free
    double a = 0.0;
};

// the bulk stand-in applies to every nonzero mode; each scalar zero channel
// carries its own
struct Side {
    HalfModel bulk;
    std::vector<HalfModel> zero;
};

struct Config {
    BoundaryData bd;
    Side plus, minus;
};

// regularized product of nu^2 + mu over the twisted momentum lattice of a
// circle of length ell.  mu = 0 gives 4 sin^2(theta / 2); mu = theta = 0 is a
// kernel and is refused.
double twisted_circle_mode_det(double mu, double ell, double theta);

// product of |1 - lambda|^2 = 4 sin^2(theta / 2) over the eigenvalues of a
// unitary matrix; an eigenvalue at 1 is a zero mode of the twisted fiber and
// is refused
double zero_twist_det(const cmat& rel);

// sum of sqrt(mu) over the nonzero modes, continued through the pole: finite
// part plus (2 - 2 log 2) times the residue
double reg_sqrt_sum(const spectral::SpectrumModel& m);

// graded determinant of the cross-section operator twisted around a circle of
// length 2R, in log form; every relative zero-holonomy eigenangle must be
// away from 0
double mapping_torus_log_det(const BoundaryData& bd, double R, std::size_t cutoff = 200);
double mapping_torus_det(const BoundaryData& bd, double R, std::size_t cutoff = 200);

struct DetTriple {
    double log_glued;      // sides joined across the neck, zero channels mixed by hol
    double log_dir_plus;   // plus side alone, Dirichlet wall at the junction
    double log_dir_minus;  // minus side alone, Dirichlet wall at the junction
};

// graded determinants at neck half-length R.  A per-mode or zero-sector
// determinant falling below exp(-R / 2) signals an exponentially small
// eigenvalue of the glued operator and is refused.
DetTriple glued_and_dirichlet_dets(const BoundaryData& bd, const Side& plus,
                                   const Side& minus, const cmat& hol, double R,
                                   std::size_t cutoff = 200);

// |phi| = sqrt(detF0 detG / detF1) from the three log determinants
double phi_modulus(double log_detF0, double log_detF1, double log_detG);

// fit v ~ A exp(B R): the rate is read off the last doubling step, the
// prefactor by Aitken extrapolation of the per-sample intercepts
struct FitResult {
    double A = 0.0;
    double B = 0.0;
    double max_residual = 0.0;
};
FitResult asymptotic_fit(const std::vector<std::pair<double, double>>& samples);

// ---- shipped configurations (free interiors, a = 0) ----

// single circle cross-section, one complex zero mode twisted by a phase;
// Dirichlet bulk stand-in on the plus side, Neumann on the minus side
Config circle_phase_config(double theta0, double theta1);

// two circle copies, zero channels (Neumann, Dirichlet) mixed by rotations
Config rotation_pair_config(double theta0, double theta1);

// massive circle cross-section k^2 + vbar over k in Z, no zero modes,
// Dirichlet bulk stand-ins; the head keeps |k| <= n_head explicitly
Config massive_circle_config(double vbar, int n_head);

struct AdiabaticRow {
    double R = 0.0;
    double log_detF0 = 0.0, log_detF1 = 0.0, log_detG = 0.0;
    double log_det0p = 0.0, log_det0m = 0.0;
    double phi_mod = 0.0; // |phi_R|
    double rhs = 0.0;     // zero-twist det * C-det ratio * exp(2 R rate / 4)
    double ratio = 0.0;   // R^{2h} detF0 / (det0plus det0minus)
};

struct AdiabaticResult {
    std::vector<AdiabaticRow> rows;
    int h = 0;                   // scalar zero channels
    double det_zero_twist = 1.0; // zero_twist_det of hol0^dagger hol1
    double rate = 0.0;           // asymptotic log-slope of the graded torus det
    double det_star = 1.0;       // cross-section determinant, zero modes dropped
    double det1mC0 = 1.0, det1mC1 = 1.0;
    double adia_limit = 1.0;     // 2^{-4h} det_star det(1 - C_{f0})^2
    FitResult g_fit;             // fit of the graded torus det over R
};

AdiabaticResult run_adiabatic(const Config& cfg, const std::vector<double>& Rs,
                              std::size_t cutoff = 200);

} // namespace cdel::surgery
