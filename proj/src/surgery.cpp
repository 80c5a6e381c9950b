#include "cdel/surgery.hpp"
#include "cdel/errors.hpp"
#include "cdel/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace cdel::surgery {

namespace {

// WKB tail of the scalar per-mode log determinant in powers of sqrt(mu):
//   L sqrt(mu) + q log(mu) + w / sqrt(mu) + u / mu + w2 / mu^{3/2} + u2 / mu^2
struct TailCoef {
    double L = 0.0, q = 0.0, w = 0.0, u = 0.0, w2 = 0.0, u2 = 0.0;
};

double tail_value(const TailCoef& t, double mu)
{
    const double r = std::sqrt(mu);
    return t.L * r + t.q * std::log(mu) + t.w / r + t.u / mu + t.w2 / (mu * r) +
           t.u2 / (mu * mu);
}

struct Moments {
    double intV = 0.0, intV2 = 0.0, V0 = 0.0, dV0 = 0.0, d2V0 = 0.0, d2Va = 0.0;
};

Moments side_moments(const HalfModel& hm)
{
    Moments mo;
    if (!hm.V || hm.a <= 0.0) return mo;
    const int n = 4000; // composite Simpson on a fine even grid
    const double h = hm.a / n;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double v = hm.V(i * h);
        s1 += w * v;
        s2 += w * v * v;
    }
    mo.intV = s1 * h / 3.0;
    mo.intV2 = s2 * h / 3.0;
    mo.V0 = hm.V(0.0);
    const auto& V = hm.V;
    const double d = std::min(1.5e-3, hm.a / 16.0);
    mo.dV0 = (-3.0 * V(0.0) + 4.0 * V(d) - V(2.0 * d)) / (2.0 * d);
    mo.d2V0 = (2.0 * V(0.0) - 5.0 * V(d) + 4.0 * V(2.0 * d) - V(3.0 * d)) / (d * d);
    const double a = hm.a;
    mo.d2Va = (2.0 * V(a) - 5.0 * V(a - d) + 4.0 * V(a - 2.0 * d) - V(a - 3.0 * d)) / (d * d);
    return mo;
}

// stand-in end contribution to the tail; the launch constant, the amplitude
// factor of the growing solution, and the support-edge term of the curvature
// ladder are folded together
TailCoef end_tail(const gy::BC& bc, const Moments& mo)
{
    TailCoef t;
    // pieces shared by every launch: the potential moments of the running
    // amplitude and the curvature boundary terms at the two support edges
    t.w = mo.intV / 2.0;
    t.u = mo.V0 / 4.0;
    t.w2 = -mo.intV2 / 8.0 - mo.dV0 / 8.0;
    t.u2 = -mo.V0 * mo.V0 / 8.0 + mo.d2V0 / 16.0 - mo.d2Va / 16.0;
    switch (bc.type) {
    case gy::BC::Type::dirichlet:
        t.q = -0.25;
        t.u -= mo.V0 / 2.0;
        t.u2 += mo.V0 * mo.V0 / 4.0 - mo.d2V0 / 8.0;
        break;
    case gy::BC::Type::neumann:
        t.q = 0.25;
        t.w2 += mo.dV0 / 4.0;
        break;
    default: { // robin
        const double b = bc.beta;
        t.q = 0.25;
        t.w += b;
        t.u -= b * b / 2.0;
        t.w2 += mo.dV0 / 4.0 - b * mo.V0 / 2.0 + b * b * b / 3.0;
        t.u2 += b * b * mo.V0 / 2.0 - b * mo.dV0 / 4.0 - b * b * b * b / 4.0;
        break;
    }
    }
    return t;
}

// solution launched from the stand-in, integrated up to the junction
gy::State side_state(const HalfModel& hm, double mu, double ell)
{
    gy::State s = gy::launch(hm.bc);
    if (hm.V && hm.a > 0.0) {
        const auto& V = hm.V;
        gy::propagate(s, [&V, mu](double x) { return mu + V(x); }, 0.0, hm.a);
        gy::propagate_const(s, mu, ell - hm.a);
    } else {
        gy::propagate_const(s, mu, ell);
    }
    return s;
}

// the gluing determinant only sees |det|, so a constant phase on a single
// zero channel is removable; genuinely mixed channels must come in real
// orthogonal form
Eigen::MatrixXd real_zero_holonomy(const cmat& hol)
{
    const int h = static_cast<int>(hol.rows());
    if (h == 1) {
        if (std::abs(std::abs(hol(0, 0)) - 1.0) > 1e-9)
            throw config_error("surgery: zero holonomy must be unitary");
        return Eigen::MatrixXd::Identity(1, 1);
    }
    if (hol.imag().cwiseAbs().maxCoeff() > 1e-9)
        throw config_error("surgery: mixed zero holonomy must be real orthogonal");
    Eigen::MatrixXd H = hol.real();
    if ((H.transpose() * H - Eigen::MatrixXd::Identity(h, h)).norm() > 1e-8)
        throw config_error("surgery: zero holonomy must be orthogonal");
    return H;
}

void check_boundary(const BoundaryData& bd)
{
    if (bd.copies < 1) throw config_error("surgery: copies must be positive");
    const int h = bd.copies * bd.spectrum.zero_modes();
    if (h > 0 && (bd.hol0.rows() != h || bd.hol0.cols() != h || bd.hol1.rows() != h ||
                  bd.hol1.cols() != h))
        throw config_error("surgery: zero holonomy dimension mismatch");
}

} // namespace

double twisted_circle_mode_det(double mu, double ell, double theta)
{
    if (mu < 0.0) throw config_error("surgery: negative cross-section eigenvalue");
    if (ell <= 0.0) throw config_error("surgery: circle length must be positive");
    if (mu == 0.0) {
        const double s = std::sin(0.5 * theta);
        if (s == 0.0) throw degenerate_error("surgery: untwisted zero mode has a kernel");
        return 4.0 * s * s;
    }
    const double x = ell * std::sqrt(mu);
    return 2.0 * (std::cosh(x) - std::cos(theta));
}

double zero_twist_det(const cmat& rel)
{
    if (rel.rows() != rel.cols()) throw config_error("surgery: holonomy must be square");
    const int h = static_cast<int>(rel.rows());
    if (h == 0) return 1.0;
    if ((rel.adjoint() * rel - cmat::Identity(h, h)).norm() > 1e-9)
        throw config_error("surgery: relative holonomy must be unitary");
    Eigen::ComplexEigenSolver<cmat> es(rel, false);
    double acc = 1.0;
    for (int i = 0; i < h; ++i) {
        const double d = std::norm(es.eigenvalues()[i] - std::complex<double>(1.0));
        if (d < 1e-12) throw degenerate_error("surgery: twisted zero sector has a kernel");
        acc *= d; // |1 - e^{i t}|^2 = 4 sin^2(t / 2)
    }
    return acc;
}

double reg_sqrt_sum(const spectral::SpectrumModel& m)
{
    const spectral::ZetaPoint z = spectral::spectral_zeta(m, -0.5);
    return z.fp + (2.0 - 2.0 * std::log(2.0)) * z.residue;
}

double mapping_torus_log_det(const BoundaryData& bd, double R, std::size_t cutoff)
{
    if (R <= 0.0) throw config_error("surgery: neck half-length must be positive");
    if (cutoff < 1) throw config_error("surgery: cutoff must be positive");
    check_boundary(bd);

    double zero_log = 0.0;
    if (bd.copies * bd.spectrum.zero_modes() > 0)
        zero_log = std::log(zero_twist_det(bd.hol0.adjoint() * bd.hol1));

    // log[2 (cosh x - cos t)] = x + log1p(e^{-2x} - 2 e^{-x} cos t); the linear
    // parts resum to the regularized sqrt-sum, the brackets decay like e^{-2x}
    const std::vector<double> mus = spectral::lowest_eigenvalues(bd.spectrum, cutoff);
    const double ct = std::cos(bd.theta_nonzero);
    long double acc = 0.0L;
    for (double mu : mus) {
        const double e = std::exp(-2.0 * R * std::sqrt(mu));
        acc += std::log1p(e * e - 2.0 * e * ct);
    }
    const double scalar =
        bd.copies * (static_cast<double>(acc) + 2.0 * R * reg_sqrt_sum(bd.spectrum)) + zero_log;
    return 2.0 * scalar;
}

double mapping_torus_det(const BoundaryData& bd, double R, std::size_t cutoff)
{
    return std::exp(mapping_torus_log_det(bd, R, cutoff));
}

DetTriple glued_and_dirichlet_dets(const BoundaryData& bd, const Side& plus, const Side& minus,
                                   const cmat& hol, double R, std::size_t cutoff)
{
    if (R <= 0.0) throw config_error("surgery: neck half-length must be positive");
    if (cutoff < 1) throw config_error("surgery: cutoff must be positive");
    check_boundary(bd);
    if (plus.bulk.a < 0.0 || minus.bulk.a < 0.0)
        throw config_error("surgery: potential support must be nonnegative");

    const spectral::SpectrumModel& m = bd.spectrum;
    const int h = bd.copies * m.zero_modes();
    if (static_cast<int>(plus.zero.size()) != h || static_cast<int>(minus.zero.size()) != h)
        throw config_error("surgery: zero channel count must match the zero-mode space");
    if (h > 0 && (hol.rows() != h || hol.cols() != h))
        throw config_error("surgery: gluing holonomy dimension mismatch");

    const double ellp = plus.bulk.a + R;
    const double ellm = minus.bulk.a + R;
    const Moments mp = side_moments(plus.bulk);
    const Moments mm = side_moments(minus.bulk);
    const TailCoef ep = end_tail(plus.bulk.bc, mp);
    const TailCoef em = end_tail(minus.bulk.bc, mm);

    TailCoef tF{ellp + ellm, ep.q + em.q, ep.w + em.w, ep.u + em.u, ep.w2 + em.w2,
                ep.u2 + em.u2};
    // one-sided problems put a Dirichlet wall at the junction
    TailCoef tP{ellp, ep.q - 0.25, ep.w, ep.u, ep.w2, ep.u2};
    TailCoef tM{ellm, em.q - 0.25, em.w, em.u, em.w2, em.u2};

    const std::vector<double> mus = spectral::lowest_eigenvalues(m, cutoff);
    long double accF = 0.0L, accP = 0.0L, accM = 0.0L;
    for (std::size_t k = 0; k < mus.size();) {
        const double mu = mus[k];
        std::size_t c = 1;
        while (k + c < mus.size() && mus[k + c] == mu) ++c;
        const double weight = static_cast<double>(c) * bd.copies;

        const gy::State sp = side_state(plus.bulk, mu, ellp);
        const gy::State sm = side_state(minus.bulk, mu, ellm);
        if (sp.y <= 0.0 || sm.y <= 0.0)
            throw degenerate_error("surgery: one-sided mode determinant not positive");
        const double wr = sp.y * sm.dy + sp.dy * sm.y; // junction Wronskian pairing
        if (wr <= 0.0) throw degenerate_error("surgery: glued mode determinant not positive");

        const double lgF = std::log(2.0 * wr) + sp.logscale + sm.logscale;
        const double lgP = std::log(2.0 * sp.y) + sp.logscale;
        const double lgM = std::log(2.0 * sm.y) + sm.logscale;

        const double bF = lgF - tail_value(tF, mu);
        if (bF < -0.5 * R)
            throw degenerate_error("surgery: glued mode determinant below the collapse threshold");
        accF += weight * static_cast<long double>(bF);
        accP += weight * static_cast<long double>(lgP - tail_value(tP, mu));
        accM += weight * static_cast<long double>(lgM - tail_value(tM, mu));
        k += c;
    }

    const double fp1 = reg_sqrt_sum(m);
    const double fplog = spectral::log_det_star(m);
    const double zhalf = spectral::spectral_zeta(m, 0.5).fp;
    const double zone = spectral::spectral_zeta(m, 1.0).fp;
    const double z32 = spectral::spectral_zeta(m, 1.5).fp;
    const double ztwo = spectral::spectral_zeta(m, 2.0).fp;
    const auto totals = [&](const TailCoef& t) {
        return bd.copies * (t.L * fp1 + t.q * fplog + t.w * zhalf + t.u * zone + t.w2 * z32 +
                            t.u2 * ztwo);
    };

    double zF = 0.0, zP = 0.0, zM = 0.0;
    if (h > 0) {
        const Eigen::MatrixXd H = real_zero_holonomy(hol);
        Eigen::VectorXd yp(h), dp(h), ym(h), dm(h);
        for (int j = 0; j < h; ++j) {
            const gy::State a = side_state(plus.zero[j], 0.0, plus.zero[j].a + R);
            const gy::State b = side_state(minus.zero[j], 0.0, minus.zero[j].a + R);
            yp[j] = a.y * std::exp(a.logscale);
            dp[j] = a.dy * std::exp(a.logscale);
            ym[j] = b.y * std::exp(b.logscale);
            dm[j] = b.dy * std::exp(b.logscale);
            if (yp[j] <= 0.0 || ym[j] <= 0.0)
                throw degenerate_error("surgery: zero-channel determinant not positive");
            zP += std::log(2.0 * yp[j]);
            zM += std::log(2.0 * ym[j]);
        }
        // match values and derivatives across the junction; the minus side is
        // traversed against the gluing orientation, hence the sign flip
        Eigen::MatrixXd M(2 * h, 2 * h);
        M.block(0, 0, h, h) = H * yp.asDiagonal();
        M.block(0, h, h, h) = Eigen::MatrixXd(ym.asDiagonal());
        M.block(h, 0, h, h) = H * dp.asDiagonal();
        M.block(h, h, h, h) = -Eigen::MatrixXd(dm.asDiagonal());
        zF = h * std::log(2.0) + std::log(std::abs(M.determinant()));
        if (!(zF >= -0.5 * R))
            throw degenerate_error("surgery: zero-sector gluing determinant below the collapse threshold");
    }

    DetTriple out{};
    out.log_glued = 2.0 * (static_cast<double>(accF) + totals(tF) + zF);
    out.log_dir_plus = 2.0 * (static_cast<double>(accP) + totals(tP) + zP);
    out.log_dir_minus = 2.0 * (static_cast<double>(accM) + totals(tM) + zM);
    return out;
}

double phi_modulus(double log_detF0, double log_detF1, double log_detG)
{
    return std::exp(0.5 * (log_detF0 + log_detG - log_detF1));
}

FitResult asymptotic_fit(const std::vector<std::pair<double, double>>& samples)
{
    if (samples.size() < 2) throw config_error("surgery: fit needs at least two samples");
    const std::size_t n = samples.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (samples[i].second <= 0.0) throw config_error("surgery: fit values must be positive");
        x[i] = samples[i].first;
        y[i] = std::log(samples[i].second);
    }
    if (x[n - 1] == x[n - 2]) throw config_error("surgery: fit needs distinct sample points");

    // the last step is the least contaminated by the decaying corrections, so
    // the rate is read off there; the remaining intercept drift is geometric
    // over a doubling grid and Aitken extrapolation removes it
    FitResult f;
    f.B = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = y[i] - f.B * x[i];

    double astar = a[n - 1];
    if (n >= 3) {
        const double d1 = a[n - 2] - a[n - 3];
        const double d2 = a[n - 1] - a[n - 2];
        const double dd = d2 - d1;
        if (std::abs(dd) > 1e-13 * (1.0 + std::abs(a[n - 1]))) {
            const double c = a[n - 1] - d2 * d2 / dd;
            if (std::abs(c - a[n - 1]) < 16.0 * std::abs(d2)) astar = c;
        }
    }
    f.A = std::exp(astar);
    for (std::size_t i = 0; i < n; ++i)
        f.max_residual = std::max(f.max_residual, std::abs(y[i] - (astar + f.B * x[i])));
    return f;
}

Config circle_phase_config(double theta0, double theta1)
{
    Config c;
    c.bd.spectrum = spectral::affine_square_model(1.0, 0.0);
    c.bd.hol0 = cmat::Constant(1, 1, std::polar(1.0, theta0));
    c.bd.hol1 = cmat::Constant(1, 1, std::polar(1.0, theta1));
    c.plus.bulk = HalfModel{gy::BC::dirichlet(), {}, 0.0};
    c.minus.bulk = HalfModel{gy::BC::neumann(), {}, 0.0};
    c.plus.zero = {c.plus.bulk};
    c.minus.zero = {c.minus.bulk};
    return c;
}

Config rotation_pair_config(double theta0, double theta1)
{
    const auto rot = [](double t) {
        cmat H(2, 2);
        H << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
        return H;
    };
    Config c;
    c.bd.spectrum = spectral::affine_square_model(1.0, 0.0);
    c.bd.copies = 2;
    c.bd.hol0 = rot(theta0);
    c.bd.hol1 = rot(theta1);
    c.plus.bulk = HalfModel{gy::BC::dirichlet(), {}, 0.0};
    c.minus.bulk = HalfModel{gy::BC::dirichlet(), {}, 0.0};
    c.plus.zero = {HalfModel{gy::BC::neumann(), {}, 0.0}, HalfModel{gy::BC::dirichlet(), {}, 0.0}};
    c.minus.zero = c.plus.zero;
    return c;
}

Config massive_circle_config(double vbar, int n_head)
{
    if (vbar <= 0.0) throw config_error("surgery: massive circle needs a positive offset");
    if (n_head < 1) throw config_error("surgery: massive circle needs an explicit head");
    std::vector<double> ev;
    ev.reserve(2 * n_head + 1);
    ev.push_back(vbar);
    for (int k = 1; k <= n_head; ++k) {
        ev.push_back(k * static_cast<double>(k) + vbar);
        ev.push_back(k * static_cast<double>(k) + vbar);
    }
    const double L = 2.0 * 3.14159265358979323846;
    Config c;
    c.bd.spectrum = spectral::numeric_model(std::move(ev), L, vbar * L,
                                            spectral::SpectrumModel::Topology::circle);
    c.plus.bulk = HalfModel{gy::BC::dirichlet(), {}, 0.0};
    c.minus.bulk = HalfModel{gy::BC::dirichlet(), {}, 0.0};
    return c;
}

AdiabaticResult run_adiabatic(const Config& cfg, const std::vector<double>& Rs,
                              std::size_t cutoff)
{
    check_boundary(cfg.bd);
    AdiabaticResult out;
    const spectral::SpectrumModel& m = cfg.bd.spectrum;
    out.h = cfg.bd.copies * m.zero_modes();
    const double fp = cfg.bd.copies * reg_sqrt_sum(m);
    out.rate = 4.0 * fp;
    out.det_star = std::exp(cfg.bd.copies * spectral::log_det_star(m));

    if (out.h > 0) {
        out.det_zero_twist = zero_twist_det(cfg.bd.hol0.adjoint() * cfg.bd.hol1);
        const auto channel = [](const HalfModel& z) {
            scattering::Channel ch;
            ch.bc = z.bc;
            ch.V = [](double) { return 0.0; };
            if (z.V) ch.V = z.V;
            ch.a = z.a > 0.0 ? z.a : 1.0;
            return ch;
        };
        std::vector<scattering::Channel> chp, chm;
        for (const HalfModel& z : cfg.plus.zero) chp.push_back(channel(z));
        for (const HalfModel& z : cfg.minus.zero) chm.push_back(channel(z));
        const auto cdet = [&](const cmat& H) {
            const cmat cf = scattering::zero_energy(
                [&](double l) { return scattering::twisted_reflection(H, chm, chp, l); });
            return scattering::det_one_minus(cf);
        };
        out.det1mC0 = cdet(cfg.bd.hol0);
        out.det1mC1 = cdet(cfg.bd.hol1);
    }
    out.adia_limit =
        std::pow(2.0, -4.0 * out.h) * out.det_star * out.det1mC0 * out.det1mC0;

    std::vector<std::pair<double, double>> gsamp;
    for (double R : Rs) {
        AdiabaticRow row;
        row.R = R;
        row.log_detG = mapping_torus_log_det(cfg.bd, R, cutoff);
        const DetTriple t0 = glued_and_dirichlet_dets(cfg.bd, cfg.plus, cfg.minus, cfg.bd.hol0, R, cutoff);
        const DetTriple t1 = glued_and_dirichlet_dets(cfg.bd, cfg.plus, cfg.minus, cfg.bd.hol1, R, cutoff);
        row.log_detF0 = t0.log_glued;
        row.log_detF1 = t1.log_glued;
        row.log_det0p = t0.log_dir_plus;
        row.log_det0m = t0.log_dir_minus;
        row.phi_mod = phi_modulus(row.log_detF0, row.log_detF1, row.log_detG);
        row.rhs = out.det_zero_twist * (out.det1mC0 / out.det1mC1) * std::exp(2.0 * R * fp);
        row.ratio = std::exp(2.0 * out.h * std::log(R) + row.log_detF0 - row.log_det0p -
                             row.log_det0m);
        gsamp.emplace_back(R, std::exp(row.log_detG));
        out.rows.push_back(row);
    }
    if (out.rows.size() >= 2) out.g_fit = asymptotic_fit(gsamp);
    return out;
}

} // namespace cdel::surgery
