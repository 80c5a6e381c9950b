#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdel/errors.hpp"
#include "cdel/special.hpp"
#include "cdel/spectral.hpp"

#include <cmath>

using namespace cdel;
using namespace cdel::spectral;

namespace {

constexpr double pi = 3.14159265358979323846;

// eigenvalues {n^2 + v : |n| <= N}, the n = 0 entry first
std::vector<double> toy_circle(double v, int N)
{
    std::vector<double> ev = {v};
    for (int n = 1; n <= N; ++n) {
        ev.push_back(n * n + v);
        ev.push_back(n * n + v);
    }
    return ev;
}

} // namespace

TEST_CASE("closed-form determinants of the circle families")
{
    CHECK(zeta_det_star(affine_square_model(1.0, 0.0)) ==
          doctest::Approx(4.0 * pi * pi).epsilon(1e-10));
    // det picks up 1/c when the scale changes
    CHECK(zeta_det_star(affine_square_model(2.0, 0.0)) ==
          doctest::Approx(4.0 * pi * pi / 2.0).epsilon(1e-10));
    for (double a : {0.25, 1.0 / 3.0, 0.5}) {
        const double want = 4.0 * std::sin(pi * a) * std::sin(pi * a);
        CHECK(zeta_det_star(affine_square_model(1.0, a)) ==
              doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("free-circle numeric determinant is cutoff independent")
{
    for (int N : {5, 9, 17}) {
        auto m = numeric_model(toy_circle(0.0, N), 2.0 * pi, 0.0);
        CHECK(m.zero_modes() == 1);
        CHECK(zeta_det_star(m) == doctest::Approx(4.0 * pi * pi).epsilon(1e-10));
    }
}

TEST_CASE("free-interval numeric determinant is cutoff independent")
{
    for (int N : {6, 13}) {
        std::vector<double> ev;
        const double L = 1.7;
        for (int n = 1; n <= N; ++n) ev.push_back((n * pi / L) * (n * pi / L));
        auto m = numeric_model(ev, L, 0.0, SpectrumModel::Topology::interval);
        CHECK(zeta_det_star(m) == doctest::Approx(2.0 * L).epsilon(1e-10));
    }
}

TEST_CASE("constant-potential interval determinant matches sinh form")
{
    const double L = 1.3, c = 2.1;
    for (int N : {8, 20}) {
        std::vector<double> ev;
        for (int n = 1; n <= N; ++n) ev.push_back((n * pi / L) * (n * pi / L) + c);
        auto m = numeric_model(ev, L, c * L, SpectrumModel::Topology::interval);
        const double want = 2.0 * std::sinh(std::sqrt(c) * L) / std::sqrt(c);
        CHECK(zeta_det_star(m) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("finite part and residue at s = -1/2")
{
    // frozen from the direct binomial series over Riemann zeta values
    const double want_fp = 0.2584163405460403918156;
    for (int N : {7, 12, 20}) {
        auto m = numeric_model(toy_circle(0.7, N), 2.0 * pi, 0.7 * 2.0 * pi);
        auto z = spectral_zeta(m, -0.5);
        CHECK(z.pole);
        CHECK(z.residue == doctest::Approx(0.35).epsilon(1e-12));
        CHECK(z.fp == doctest::Approx(want_fp).epsilon(1e-9));
        CHECK(a_half(m) == doctest::Approx(0.35).epsilon(1e-12));
        CHECK(fp_neg_half(m) == doctest::Approx(want_fp).epsilon(1e-9));
    }

    // without a potential the point is regular and sums to twice zetaR(-1)
    auto m0 = numeric_model(toy_circle(0.0, 9), 2.0 * pi, 0.0);
    auto z0 = spectral_zeta(m0, -0.5);
    CHECK_FALSE(z0.pole);
    CHECK(z0.fp == doctest::Approx(-1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("pole structure at s = +1/2")
{
    auto aff = affine_square_model(1.0, 0.3);
    auto z = spectral_zeta(aff, 0.5);
    CHECK(z.pole);
    CHECK(z.residue == doctest::Approx(1.0).epsilon(1e-12));
    // frozen: -psi(0.3) - psi(0.7)
    CHECK(z.fp == doctest::Approx(4.722547775898067603713).epsilon(1e-10));

    auto num = numeric_model(toy_circle(0.7, 9), 2.0 * pi, 0.7 * 2.0 * pi);
    CHECK(spectral_zeta(num, 0.5).residue == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heat-kernel route agrees with the Hurwitz route")
{
    for (auto [c, a] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {1.0, 0.3}, {2.3, 0.25}}) {
        auto m = affine_square_model(c, a);
        for (double s : {-0.5, 0.0, 2.0}) {
            const double hur = spectral_zeta(m, s).fp;
            const double mel = mellin_zeta(m, s);
            CHECK(std::abs(mel - hur) < 1e-8);
        }
    }
}

TEST_CASE("zeta at zero counts zero modes")
{
    CHECK(spectral_zeta(affine_square_model(1.0, 0.0), 0.0).fp ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(spectral_zeta(affine_square_model(1.0, 0.3), 0.0).fp ==
          doctest::Approx(0.0).epsilon(1e-12));
    // a shifted spectrum has no zero mode, so the count at s = 0 vanishes
    auto m = numeric_model(toy_circle(0.7, 6), 2.0 * pi, 0.7 * 2.0 * pi);
    CHECK(std::abs(spectral_zeta(m, 0.0).fp) < 1e-10);
    auto m0 = numeric_model(toy_circle(0.0, 6), 2.0 * pi, 0.0);
    CHECK(spectral_zeta(m0, 0.0).fp == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("half eta invariant of the shifted circle")
{
    CHECK(eta0_circle(0.25) == doctest::Approx(0.25).epsilon(1e-12));
    // Abel-summed oracle with one Richardson sweep
    for (double a : {0.3, 0.7}) {
        auto f = [a](double eps) {
            return (std::exp(-eps * a) - std::exp(-eps * (1.0 - a))) /
                   (1.0 - std::exp(-eps));
        };
        const double eps = 1e-3;
        const double abel = (4.0 * f(eps / 2.0) - f(eps)) / 3.0;
        CHECK(eta0_circle(a) == doctest::Approx(0.5 * abel).epsilon(1e-8));
    }
    CHECK(eta0_circle(0.3) == doctest::Approx(-eta0_circle(0.7)).epsilon(1e-14));
}

TEST_CASE("rayleigh-ritz spectra reproduce solvable cases")
{
    // constant potential on the interval: exact values (n pi / L)^2 + v0
    auto ev = interval_quadratic_spectrum(1.3, 2.1, 0.0, 0.0, 10, 60);
    for (int n = 1; n <= 10; ++n)
        CHECK(ev[n - 1] ==
              doctest::Approx((n * pi / 1.3) * (n * pi / 1.3) + 2.1).epsilon(1e-12));

    // constant potential on the circle: v0, then doubly degenerate levels
    auto cv = circle_cosine_spectrum(2.0 * pi, 0.5, 0.0, 7, 40);
    CHECK(cv[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cv[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(cv[2] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(cv[3] == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(cv[5] == doctest::Approx(9.5).epsilon(1e-12));

    // harmonic-style well: basis growth must not move the low levels
    auto a = interval_quadratic_spectrum(1.0, 0.0, -3.0, 9.0, 5, 200);
    auto b = interval_quadratic_spectrum(1.0, 0.0, -3.0, 9.0, 5, 320);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-9);
}
