#include "cdel/special.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cdel::special {

namespace {

constexpr double pi = 3.14159265358979323846;

// B_{2k} = bern_num[k] / bern_den[k], k = 0..15.  Exact in int64.
constexpr std::array<std::int64_t, 16> bern_num = {
    1, 1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611, 854513,
    -236364091, 8553103, -23749461029LL, 8615841276005LL};
constexpr std::array<std::int64_t, 16> bern_den = {
    1, 6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730, 6, 870, 14322};

using cplxl = std::complex<long double>;

inline long double logr(long double x) { return std::log(x); }
inline cplxl cpow_r(long double x, cplxl e) { return std::exp(e * std::log(x)); }
inline double real_part(cplxl z) { return (double)z.real(); }
inline double imag_part(cplxl z) { return (double)z.imag(); }

// Thin complex layer over __float128; only what Euler-Maclaurin needs.
struct cq {
    __float128 re, im;
};
inline cq operator+(cq a, cq b) { return {a.re + b.re, a.im + b.im}; }
inline cq operator-(cq a, cq b) { return {a.re - b.re, a.im - b.im}; }
inline cq operator-(cq a) { return {-a.re, -a.im}; }
inline cq operator*(cq a, cq b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cq operator*(__float128 a, cq b) { return {a * b.re, a * b.im}; }
inline cq operator/(cq a, cq b)
{
    const __float128 d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline __float128 logr(__float128 x) { return logq(x); }
inline cq cpow_r(__float128 x, cq e)
{
    const __float128 L = logq(x);
    const __float128 m = expq(e.re * L);
    return {m * cosq(e.im * L), m * sinq(e.im * L)};
}
inline double real_part(cq z) { return (double)z.re; }
inline double imag_part(cq z) { return (double)z.im; }

template <class R> struct em_traits;
template <> struct em_traits<long double> {
    using C = cplxl;
    static C make(double re, double im) { return {(long double)re, (long double)im}; }
};
template <> struct em_traits<__float128> {
    using C = cq;
    static C make(double re, double im) { return {(__float128)re, (__float128)im}; }
};

// Euler-Maclaurin core with the s-derivative carried through every term.
template <class R>
void em_hurwitz(typename em_traits<R>::C s, R a, typename em_traits<R>::C& val,
                typename em_traits<R>::C& dval)
{
    using T = em_traits<R>;
    using C = typename T::C;
    const double smod = std::hypot(real_part(s), imag_part(s));

    int N = (int)std::ceil(25.0 + 1.3 * smod - (double)a);
    if (N < 0) N = 0;
    const R x = (R)N + a;
    const R lx = logr(x);
    const C one = T::make(1, 0);

    C v = T::make(0, 0), dv = T::make(0, 0);
    for (int n = 0; n < N; ++n) {
        const R b = (R)n + a;
        const C t = cpow_r(b, -s);
        v = v + t;
        dv = dv - logr(b) * t;
    }

    // integral term x^{1-s}/(s-1)
    const C sm1 = s - one;
    const C t1 = cpow_r(x, one - s) / sm1;
    v = v + t1;
    dv = dv - lx * t1 - t1 / sm1;

    // boundary term x^{-s}/2
    const C xs = cpow_r(x, -s);
    v = v + (R)0.5 * xs;
    dv = dv - ((R)0.5 * lx) * xs;

    // corrections: B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}
    C poch = one, dpoch = T::make(0, 0);
    R fact = (R)1;
    R xm = (R)1; // x^{-(2j-1)}
    for (int j = 1; j <= 15; ++j) {
        const int lo = (j == 1) ? 0 : 2 * j - 3;
        for (int m = lo; m <= 2 * j - 2; ++m) {
            const C f = s + T::make(m, 0);
            dpoch = dpoch * f + poch;
            poch = poch * f;
        }
        fact = fact * (R)(2 * j - 1) * (R)(2 * j);
        xm = xm / x;
        if (j > 1) xm = xm / x;
        const R c = (R)bern_num[j] / (R)bern_den[j] / fact * xm;
        const C base = c * xs;
        v = v + base * poch;
        dv = dv + base * dpoch - lx * (base * poch);
    }
    val = v;
    dval = dv;
}

} // namespace

double bernoulli_even(int two_k)
{
    if (two_k < 0 || two_k > 30 || two_k % 2)
        throw std::domain_error("bernoulli_even: index out of range");
    const int k = two_k / 2;
    return (double)bern_num[k] / (double)bern_den[k];
}

with_ds hurwitz_zeta_ds(cplx s, double a)
{
    if (a <= 0.0) throw std::domain_error("hurwitz_zeta: requires a > 0");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (s.real() < -2.0) {
        // the leading Euler-Maclaurin pieces cancel by ~x^{1-Re s}; quad
        // precision keeps the survivors accurate
        cq sv{(__float128)s.real(), (__float128)s.imag()}, v{}, dv{};
        em_hurwitz<__float128>(sv, (__float128)a, v, dv);
        return {cplx(real_part(v), imag_part(v)), cplx(real_part(dv), imag_part(dv))};
    }
    cplxl sv((long double)s.real(), (long double)s.imag()), v, dv;
    em_hurwitz<long double>(sv, (long double)a, v, dv);
    return {cplx(real_part(v), imag_part(v)), cplx(real_part(dv), imag_part(dv))};
}

cplx hurwitz_zeta(cplx s, double a) { return hurwitz_zeta_ds(s, a).value; }

double hurwitz_zeta(double s, double a)
{
    return hurwitz_zeta_ds(cplx(s, 0.0), a).value.real();
}

double hurwitz_zeta_ds_real(double s, double a)
{
    return hurwitz_zeta_ds(cplx(s, 0.0), a).ds.real();
}

double digamma(double x)
{
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("digamma: pole at nonpositive integer");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series: log x - 1/(2x) - sum B_{2k}/(2k x^{2k})
    double r = std::log(x) - 0.5 / x;
    const double ix2 = 1.0 / (x * x);
    double p = 1.0;
    for (int k = 1; k <= 7; ++k) {
        p *= ix2;
        r -= bernoulli_even(2 * k) / (2.0 * k) * p;
    }
    return acc + r;
}

cplx binom_neg(cplx s, int j) { return binom_neg_ds(s, j).value; }

with_ds binom_neg_ds(cplx s, int j)
{
    // binom(-s, j) = prod_{i=0}^{j-1} (-s - i) / j!
    cplx p(1.0, 0.0), dp(0.0, 0.0);
    double fact = 1.0;
    for (int i = 0; i < j; ++i) {
        const cplx f = -s - cplx(i, 0);
        dp = dp * f - p;
        p = p * f;
        fact *= (i + 1);
    }
    return {p / fact, dp / fact};
}

cplx theta1(cplx z, cplx tau)
{
    if (tau.imag() <= 0.0) throw std::domain_error("theta1: Im(tau) must be positive");
    const cplx ipi(0.0, pi);
    cplx sum(0.0, 0.0);
    for (int n = 0; n <= 400; ++n) {
        const double h = n + 0.5;
        const cplx term = ((n % 2) ? -2.0 : 2.0) * std::exp(ipi * tau * (h * h)) *
                          std::sin((2.0 * n + 1.0) * pi * z);
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum)) && n > 2) break;
    }
    return sum;
}

cplx theta1_over_z(cplx z, cplx tau)
{
    if (tau.imag() <= 0.0) throw std::domain_error("theta1: Im(tau) must be positive");
    const cplx ipi(0.0, pi);
    auto sinc = [](cplx w) {
        if (std::abs(w) < 1e-4) {
            const cplx w2 = w * w;
            return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
        }
        return std::sin(w) / w;
    };
    cplx sum(0.0, 0.0);
    for (int n = 0; n <= 400; ++n) {
        const double h = n + 0.5;
        const double c = (2.0 * n + 1.0) * pi;
        const cplx term = ((n % 2) ? -2.0 : 2.0) * std::exp(ipi * tau * (h * h)) * c *
                          sinc(c * z);
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum)) && n > 2) break;
    }
    return sum;
}

cplx dedekind_eta(cplx tau)
{
    if (tau.imag() <= 0.0) throw std::domain_error("dedekind_eta: Im(tau) must be positive");
    const cplx q = std::exp(cplx(0.0, 2.0 * pi) * tau);
    cplx prod(1.0, 0.0);
    cplx qn(1.0, 0.0);
    for (int n = 1; n <= 600; ++n) {
        qn *= q;
        prod *= (1.0 - qn);
        if (std::abs(qn) < 1e-18) break;
    }
    return std::exp(cplx(0.0, pi / 12.0) * tau) * prod;
}

double expint_e1(double x)
{
    if (x <= 0.0) throw std::domain_error("expint_e1: requires x > 0");
    return -std::expint(-x);
}

double lattice_gauss_sum(double a11, double a12, double a22, double x1, double x2)
{
    const double det = a11 * a22 - a12 * a12;
    if (det <= 0.0 || a11 <= 0.0)
        throw std::domain_error("lattice_gauss_sum: matrix must be positive definite");
    const double tr = a11 + a22;
    const double lmin = 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));

    if (lmin >= 1.0) {
        // direct sum; terms below exp(-45) are dropped
        const int M = (int)std::ceil(std::sqrt(45.0 / (pi * lmin))) + 2;
        double s = 0.0;
        for (int k1 = -M; k1 <= M; ++k1)
            for (int k2 = -M; k2 <= M; ++k2) {
                const double u = k1 + x1, v = k2 + x2;
                const double q = a11 * u * u + 2.0 * a12 * u * v + a22 * v * v;
                if (q < 45.0 / pi) s += std::exp(-pi * q);
            }
        return s;
    }

    // Poisson dual: sum exp(-pi j^T A^{-1} j) cos(2 pi j.x) / sqrt(det A)
    const double b11 = a22 / det, b12 = -a12 / det, b22 = a11 / det;
    const double trb = b11 + b22, detb = 1.0 / det;
    const double lminb = 0.5 * (trb - std::sqrt(trb * trb - 4.0 * detb));
    const int M = (int)std::ceil(std::sqrt(45.0 / (pi * lminb))) + 2;
    double s = 0.0;
    for (int j1 = -M; j1 <= M; ++j1)
        for (int j2 = -M; j2 <= M; ++j2) {
            const double q = b11 * j1 * j1 + 2.0 * b12 * j1 * j2 + b22 * j2 * j2;
            if (q < 45.0 / pi)
                s += std::exp(-pi * q) * std::cos(2.0 * pi * (j1 * x1 + j2 * x2));
        }
    return s / std::sqrt(det);
}

} // namespace cdel::special
