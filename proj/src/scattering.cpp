#include "cdel/scattering.hpp"
#include "cdel/errors.hpp"

#include <cmath>

namespace cdel::scattering {

using cplx = std::complex<double>;

std::complex<double> reflection(const Channel& ch, double lambda)
{
    if (lambda == 0.0)
        throw config_error("reflection: use zero_energy for the lambda -> 0 limit");

    gy::State s;
    switch (ch.bc.type) {
    case gy::BC::Type::dirichlet: s = {0.0, 1.0, 0.0}; break;
    case gy::BC::Type::neumann: s = {1.0, 0.0, 0.0}; break;
    case gy::BC::Type::robin: s = {1.0, ch.bc.beta, 0.0}; break;
    }
    const double l2 = lambda * lambda;
    gy::propagate(
        s, [&](double x) { return ch.V(x) - l2; }, 0.0, ch.a);

    // the common exp(logscale) cancels in the ratio
    const cplx il(0.0, lambda);
    const cplx e_out = std::exp(cplx(0.0, -lambda * ch.a));
    const cplx e_in = std::exp(cplx(0.0, lambda * ch.a));
    const cplx x_out = (il * s.y + s.dy) * e_out;
    const cplx x_in = (il * s.y - s.dy) * e_in;
    if (std::abs(x_in) < 1e-14 * (std::abs(s.y) + std::abs(s.dy)))
        throw degenerate_error("reflection: vanishing incoming amplitude");
    return x_out / x_in;
}

cmat reflection_diag(const std::vector<Channel>& chs, double lambda)
{
    cmat C = cmat::Zero(chs.size(), chs.size());
    for (size_t k = 0; k < chs.size(); ++k) C((long)k, (long)k) = reflection(chs[k], lambda);
    return C;
}

cmat twisted_reflection(const cmat& H, const std::vector<Channel>& minus,
                        const std::vector<Channel>& plus, double lambda)
{
    if (H.rows() != (long)minus.size() || minus.size() != plus.size())
        throw config_error("twisted_reflection: channel count mismatch");
    const cmat Cm = reflection_diag(minus, lambda);
    const cmat Cp = reflection_diag(plus, lambda);
    return H.inverse() * Cm * H * Cp;
}

cmat zero_energy(const std::function<cmat(double)>& C, double lambda0)
{
    constexpr int J = 6;
    std::vector<cmat> tab(J);
    std::vector<double> l(J);
    for (int j = 0; j < J; ++j) {
        l[j] = lambda0 / std::pow(2.0, j);
        tab[j] = C(l[j]);
    }
    // successive differences must contract before extrapolating
    double prev = (tab[1] - tab[0]).norm();
    for (int j = 2; j < J; ++j) {
        const double cur = (tab[j] - tab[j - 1]).norm();
        if (cur > 0.6 * prev + 1e-12)
            throw degenerate_error("zero_energy: limit does not settle (threshold resonance)");
        prev = cur;
    }

    // Neville to lambda = 0
    for (int m = 1; m < J; ++m)
        for (int j = 0; j < J - m; ++j)
            tab[j] = (l[j] * tab[j + 1] - l[j + m] * tab[j]) / (l[j] - l[j + m]);
    return tab[0];
}

double det_one_minus(const cmat& Cf)
{
    const long h = Cf.rows();
    Eigen::ComplexEigenSolver<cmat> es(Cf);
    const auto ev = es.eigenvalues();

    for (long i = 0; i < h; ++i) {
        if (std::abs(std::abs(ev[i]) - 1.0) > 1e-8)
            throw config_error("det_one_minus: reflection matrix is not unitary");
        if (std::abs(ev[i] - cplx(1.0, 0.0)) < 1e-7)
            throw degenerate_error("det_one_minus: unit eigenvalue, glued operator has a zero mode");
    }
    // conjugate pairing: every eigenvalue off the real axis needs its mirror
    for (long i = 0; i < h; ++i) {
        if (std::abs(ev[i].imag()) <= 1e-8) continue;
        double best = 1e9;
        for (long j = 0; j < h; ++j)
            best = std::min(best, std::abs(ev[j] - std::conj(ev[i])));
        if (best > 1e-8)
            throw config_error("det_one_minus: spectrum is not conjugation symmetric");
    }

    cplx det(1.0, 0.0);
    for (long i = 0; i < h; ++i) det *= cplx(1.0, 0.0) - ev[i];
    if (std::abs(det.imag()) > 1e-8 * (1.0 + std::abs(det.real())))
        throw config_error("det_one_minus: determinant has a spurious imaginary part");
    if (det.real() <= 0.0)
        throw degenerate_error("det_one_minus: determinant vanishes, glued operator has a zero mode");
    return det.real();
}

} // namespace cdel::scattering
