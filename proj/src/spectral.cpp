#include "cdel/spectral.hpp"
#include "cdel/errors.hpp"
#include "cdel/special.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdel::spectral {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double zero_cut = 1e-10;

struct Fam {
    double w; // multiplicity weight
    double x; // Hurwitz offset of the tail
};

struct Families {
    std::vector<double> head; // nonzero explicit eigenvalues
    int h = 0;
    double mu = 1.0;
    double vbar = 0.0;
    std::vector<Fam> fams;
};

Families split(const SpectrumModel& m)
{
    Families F;
    if (m.kind == SpectrumModel::Kind::affine_square) {
        if (m.c <= 0.0) throw config_error("affine_square: scale must be positive");
        if (m.alpha < 0.0 || m.alpha >= 1.0)
            throw config_error("affine_square: offset must lie in [0, 1)");
        F.mu = std::sqrt(m.c);
        if (m.alpha == 0.0) {
            F.h = 1;
            F.fams = {{2.0, 1.0}};
        } else {
            F.fams = {{1.0, m.alpha}, {1.0, 1.0 - m.alpha}};
        }
        return F;
    }

    if (m.L <= 0.0) throw config_error("numeric spectrum: base length must be positive");
    std::vector<double> ev = m.eigenvalues;
    std::sort(ev.begin(), ev.end());
    for (double l : ev) {
        if (l < -zero_cut) throw config_error("numeric spectrum: negative eigenvalue");
        if (std::abs(l) < zero_cut)
            ++F.h;
        else
            F.head.push_back(l);
    }
    F.vbar = m.intV / m.L;
    const size_t K = ev.size();
    int N;
    if (m.topology == SpectrumModel::Topology::circle) {
        if (K % 2 != 1)
            throw config_error("numeric circle spectrum: expected an odd count (n = -N..N)");
        N = (int)((K - 1) / 2);
        F.mu = 2.0 * pi / m.L;
        F.fams = {{2.0, (double)N + 1.0}};
    } else {
        N = (int)K;
        F.mu = pi / m.L;
        F.fams = {{1.0, (double)N + 1.0}};
    }
    if (F.vbar >= F.mu * F.mu * (N + 1.0) * (N + 1.0))
        throw config_error("numeric spectrum: tail start below the potential mean");
    return F;
}

} // namespace

int SpectrumModel::zero_modes() const { return split(*this).h; }

SpectrumModel affine_square_model(double c, double alpha)
{
    SpectrumModel m;
    m.kind = SpectrumModel::Kind::affine_square;
    m.c = c;
    m.alpha = alpha;
    return m;
}

SpectrumModel numeric_model(std::vector<double> eigenvalues, double L, double intV,
                            SpectrumModel::Topology topology)
{
    SpectrumModel m;
    m.kind = SpectrumModel::Kind::numeric;
    m.eigenvalues = std::move(eigenvalues);
    m.L = L;
    m.intV = intV;
    m.topology = topology;
    split(m); // validate
    return m;
}

ZetaPoint spectral_zeta(const SpectrumModel& m, double s)
{
    const Families F = split(m);
    ZetaPoint out;

    for (double l : F.head) out.fp += std::pow(l, -s);

    const double lmu = std::log(F.mu);
    for (const auto& f : F.fams) {
        double vp = 1.0; // vbar^j
        int calm = 0;
        for (int j = 0; j < 300; ++j) {
            if (j > 0) {
                vp *= F.vbar;
                if (vp == 0.0) break;
            }
            const double w = 2.0 * s + 2.0 * j;
            const auto bin = special::binom_neg_ds(std::complex<double>(s, 0.0), j);
            const double pref = f.w * bin.value.real() * vp * std::pow(F.mu, -w);
            double term;
            if (std::abs(w - 1.0) < 1e-9) {
                const double prefds =
                    f.w * vp * std::pow(F.mu, -w) *
                    (bin.ds.real() - 2.0 * lmu * bin.value.real());
                out.residue += pref / 2.0;
                out.fp += prefds / 2.0 - pref * special::digamma(f.x);
                out.pole = true;
                term = pref; // scale marker for the truncation test
            } else {
                term = pref * special::hurwitz_zeta(w, f.x);
                out.fp += term;
            }
            if (j > 0 && std::abs(term) < 1e-17 * (1.0 + std::abs(out.fp))) {
                if (++calm == 2) break;
            } else {
                calm = 0;
            }
            if (j == 299) throw config_error("spectral zeta: tail series did not settle");
        }
    }
    return out;
}

double a_half(const SpectrumModel& m) { return spectral_zeta(m, -0.5).residue; }

double fp_neg_half(const SpectrumModel& m) { return spectral_zeta(m, -0.5).fp; }

double log_det_star(const SpectrumModel& m)
{
    const Families F = split(m);
    double acc = 0.0;
    for (double l : F.head) acc += std::log(l);

    const double lmu = std::log(F.mu);
    for (const auto& f : F.fams) {
        acc += f.w * (2.0 * lmu * special::hurwitz_zeta(0.0, f.x) -
                      2.0 * special::hurwitz_zeta_ds_real(0.0, f.x));
        double vp = 1.0;
        double sgn = -1.0;
        for (int j = 1; j <= 200 && F.vbar != 0.0; ++j) {
            vp *= F.vbar;
            sgn = -sgn; // (-1)^{j+1}
            const double term =
                f.w * sgn / j * vp * std::pow(F.mu, -2.0 * j) * special::hurwitz_zeta(2.0 * j, f.x);
            acc += term;
            if (std::abs(term) < 1e-17 * (1.0 + std::abs(acc))) break;
            if (j == 200) throw config_error("log_det_star: tail series did not settle");
        }
    }
    return acc;
}

double zeta_det_star(const SpectrumModel& m) { return std::exp(log_det_star(m)); }

std::vector<double> lowest_eigenvalues(const SpectrumModel& m, std::size_t count)
{
    const Families F = split(m);
    std::vector<double> out;
    out.reserve(count);
    std::vector<int> n(F.fams.size(), 0); // next lattice index per tail family
    std::size_t hi = 0;
    while (out.size() < count) {
        double best = std::numeric_limits<double>::infinity();
        int pick = -1;
        if (hi < F.head.size()) {
            best = F.head[hi];
            pick = -2;
        }
        for (std::size_t f = 0; f < F.fams.size(); ++f) {
            const double t = F.mu * (n[f] + F.fams[f].x);
            const double v = t * t + F.vbar;
            if (v < best) {
                best = v;
                pick = static_cast<int>(f);
            }
        }
        if (pick == -2) {
            out.push_back(best);
            ++hi;
            continue;
        }
        const int w = static_cast<int>(F.fams[static_cast<std::size_t>(pick)].w);
        for (int r = 0; r < w && out.size() < count; ++r) out.push_back(best);
        ++n[static_cast<std::size_t>(pick)];
    }
    return out;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

double mellin_zeta(const SpectrumModel& m, double s)
{
    if (m.kind != SpectrumModel::Kind::affine_square)
        throw config_error("mellin route: quadratic families only");
    if (std::abs(s - 0.5) < 1e-9)
        throw config_error("mellin route: pole at s = 1/2");
    if (s <= -1.0 + 1e-9)
        throw config_error("mellin route: s must exceed -1");

    const double c = m.c, alpha = m.alpha;
    const int h = (alpha == 0.0) ? 1 : 0;

    auto theta_direct = [&](double t) {
        const double reach = std::sqrt(45.0 / (c * t)) + 1.0;
        double acc = 0.0;
        for (int n = (int)std::floor(-reach - alpha); n <= (int)std::ceil(reach - alpha);
             ++n)
            acc += std::exp(-c * (n + alpha) * (n + alpha) * t);
        return acc;
    };
    auto sing = [&](double t) { return std::sqrt(pi / (c * t)); };
    auto theta_minus_sing = [&](double t) {
        if (t < 0.35) {
            double acc = 0.0;
            for (int k = 1;; ++k) {
                const double ex = pi * pi * k * k / (c * t);
                if (ex > 45.0) break;
                acc += std::exp(-ex) * std::cos(2.0 * pi * k * alpha);
            }
            return sing(t) * 2.0 * acc;
        }
        return theta_direct(t) - sing(t);
    };

    const double A = integrate(
        [&](double t) {
            if (t < 1e-8) return 0.0;
            return std::pow(t, s - 1.0) * theta_minus_sing(t);
        },
        1e-8, 1.0, 1e-13);

    const double lmin =
        (alpha == 0.0) ? c : c * std::min(alpha * alpha, (1.0 - alpha) * (1.0 - alpha));
    const double T = 45.0 / lmin + 1.0;
    const double B = integrate(
        [&](double t) { return std::pow(t, s - 1.0) * (theta_direct(t) - h); }, 1.0, T,
        1e-13);

    return (s * A + s * std::sqrt(pi / c) / (s - 0.5) - h + s * B) / std::tgamma(s + 1.0);
}

double eta0_circle(double alpha)
{
    if (alpha <= 0.0 || alpha >= 1.0)
        throw config_error("eta0_circle: offset must lie in (0, 1)");
    return 0.5 * (special::hurwitz_zeta(0.0, alpha) -
                  special::hurwitz_zeta(0.0, 1.0 - alpha));
}

// ---- Rayleigh-Ritz spectra ----

namespace {

// int_0^L x^m cos(k pi x / L) dx for m = 1, 2
double xcos_moment(int m, int k, double L)
{
    if (k == 0) return m == 1 ? L * L / 2.0 : L * L * L / 3.0;
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    const double k2p2 = (double)k * k * pi * pi;
    if (m == 1) return (sgn - 1.0) * L * L / k2p2;
    return 2.0 * L * L * L * sgn / k2p2;
}

} // namespace

std::vector<double> interval_quadratic_spectrum(double L, double v0, double v1, double v2,
                                                int n_keep, int n_basis)
{
    if (n_keep > n_basis) throw config_error("spectrum request exceeds basis size");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n_basis, n_basis);
    for (int i = 1; i <= n_basis; ++i) {
        for (int j = i; j <= n_basis; ++j) {
            double v = (i == j) ? v0 + (i * pi / L) * (i * pi / L) : 0.0;
            const double d1 = 0.5 * (xcos_moment(1, i - j, L) - xcos_moment(1, i + j, L));
            const double d2 = 0.5 * (xcos_moment(2, i - j, L) - xcos_moment(2, i + j, L));
            v += (2.0 / L) * (v1 * d1 + v2 * d2);
            H(i - 1, j - 1) = v;
            H(j - 1, i - 1) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n_keep);
    return out;
}

std::vector<double> circle_cosine_spectrum(double L, double v0, double v1, int n_keep,
                                           int n_basis)
{
    const double w = 2.0 * pi / L;
    // cosine block includes the constant mode
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n_basis + 1, n_basis + 1);
    for (int k = 0; k <= n_basis; ++k) C(k, k) = (w * k) * (w * k) + v0;
    if (n_basis >= 1) {
        C(0, 1) = C(1, 0) = v1 / std::sqrt(2.0);
        for (int k = 1; k < n_basis; ++k) C(k, k + 1) = C(k + 1, k) = v1 / 2.0;
    }
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n_basis, n_basis);
    for (int k = 1; k <= n_basis; ++k) S(k - 1, k - 1) = (w * k) * (w * k) + v0;
    for (int k = 1; k < n_basis; ++k) S(k - 1, k) = S(k, k - 1) = v1 / 2.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(C), es(S);
    std::vector<double> all;
    all.insert(all.end(), ec.eigenvalues().data(),
               ec.eigenvalues().data() + n_basis + 1);
    all.insert(all.end(), es.eigenvalues().data(), es.eigenvalues().data() + n_basis);
    std::sort(all.begin(), all.end());
    if ((size_t)n_keep > all.size()) throw config_error("spectrum request exceeds basis size");
    all.resize(n_keep);
    return all;
}

} // namespace cdel::spectral
