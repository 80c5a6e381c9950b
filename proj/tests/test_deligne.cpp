#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdel/errors.hpp"
#include "cdel/models.hpp"

#include <complex>
#include <random>

using namespace cdel;
using namespace cdel::deligne;

namespace {

std::mt19937 rng(20260814u);

Form random_form(size_t n)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Form f(n);
    for (auto& x : f) x = u(rng);
    return f;
}

double frac01(double x)
{
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

// exact-branch phase from a real-valued function h on the base: angles mod 1,
// windings chosen so lifted increments reproduce true differences of h
Phase phase_of(const dec::Triangulation& t, const std::vector<double>& h)
{
    Phase p;
    p.angle.resize(t.n_vertices);
    p.wind.resize(t.edges.size());
    for (int v = 0; v < t.n_vertices; ++v) p.angle[v] = frac01(h[v]);
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        p.wind[e] = (long long)std::llround((h[v] - h[u]) -
                                            wrap_pm(p.angle[v] - p.angle[u]));
    }
    return p;
}

// gauge move: c01_l += d0(g_l), transitions multiplied by g_l - g_k in angle
Deligne1 gauged(const Deligne1& c, const std::vector<std::vector<double>>& g)
{
    const auto& t = c.cov->base;
    Deligne1 out;
    out.cov = c.cov;
    out.c01.resize(c.c01.size());
    for (size_t l = 0; l < c.c01.size(); ++l) {
        out.c01[l] = c.c01[l];
        const auto dg = dec::d0(t, g[l]);
        for (size_t e = 0; e < dg.size(); ++e) out.c01[l][e] += dg[e];
    }
    for (const auto& [key, p] : c.c10) {
        const auto [l, k] = key;
        std::vector<double> diff(t.n_vertices);
        for (int v = 0; v < t.n_vertices; ++v) diff[v] = g[l][v] - g[k][v];
        const Phase q = phase_of(t, diff);
        out.c10[key] = phase_combine(t, {{&p, 1}, {&q, 1}});
    }
    return out;
}

double max_abs(const std::map<std::vector<int>, Form>& m)
{
    double r = 0;
    for (const auto& [k, f] : m)
        for (double x : f) r = std::max(r, std::abs(x));
    return r;
}

} // namespace

TEST_CASE("repeated overlap differential annihilates chart data")
{
    auto torus = dec::build_triangulation("torus", 12);
    std::vector<std::shared_ptr<const Cover>> covers = {
        models::circle_four_chart_cover(16),
        models::torus_grid_cover(torus, 3),
        models::sphere_band_cover(5, 0.45, -0.25, 0.45),
    };
    for (const auto& cov : covers) {
        const size_t ne = cov->base.edges.size();
        for (int trial = 0; trial < 40; ++trial) {
            std::map<std::vector<int>, Form> c0;
            for (int l = 0; l < cov->n_charts(); ++l) c0[{l}] = random_form(ne);
            auto d1c = cech_delta_forms(*cov, c0, 1);
            auto d2c = cech_delta_forms(*cov, d1c, 1);
            CHECK(max_abs(d2c) < 1e-12);
        }
        // same starting from pair data, landing on triples and quadruples
        std::map<std::vector<int>, Form> c1;
        for (const auto& [tup, sub] : cov->overlaps)
            if (tup.size() == 2) c1[tup] = random_form(ne);
        auto d1 = cech_delta_forms(*cov, c1, 1);
        auto d2 = cech_delta_forms(*cov, d1, 1);
        CHECK(max_abs(d2) < 1e-12);
    }
}

TEST_CASE("phase lifts add under combination")
{
    auto cov = models::circle_four_chart_cover(16);
    const auto& t = cov->base;
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<double> h1(t.n_vertices), h2(t.n_vertices);
    for (auto& x : h1) x = u(rng);
    for (auto& x : h2) x = u(rng);
    const Phase p1 = phase_of(t, h1), p2 = phase_of(t, h2);
    const Phase q = phase_combine(t, {{&p1, 1}, {&p2, -1}});
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const double want = lift_increment(t, p1, (int)e) - lift_increment(t, p2, (int)e);
        CHECK(lift_increment(t, q, (int)e) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("monopole cocycle validates and carries its charge")
{
    for (int n : {1, 2}) {
        auto cov = models::sphere_two_chart_cover(8, 0.45);
        CHECK_FALSE(cov->good); // equatorial band is an annulus
        CHECK_FALSE(cov->warnings.empty());
        REQUIRE(cov->clutch_cycles.size() == 1);

        auto c = models::monopole_on(cov, n);
        auto rep = validate_cocycle(c, 1e-9);
        CHECK(rep.pass);
        CHECK(rep.residuals.at("closedness") < 1e-11);

        auto cur = curvature_and_class(c, 1e-9);
        CHECK_FALSE(cur.cls.refused);
        CHECK(cur.cls.chern == n);
        CHECK(cur.cls.chern_residual < 1e-6);
        REQUIRE(cur.cls.clutch_windings.size() == 1);
        CHECK(cur.cls.clutch_windings[0] == n);
    }
}

TEST_CASE("class extraction refuses without a clutching route")
{
    auto t = dec::build_triangulation("sphere", 8);
    std::vector<int> north, south;
    for (int v = 0; v < t.n_vertices; ++v) {
        if (t.positions[v][2] > -0.45) north.push_back(v);
        if (t.positions[v][2] < 0.45) south.push_back(v);
    }
    auto bare = build_cover(std::move(t), {north, south}); // no clutch cycle attached
    auto c = models::monopole_on(bare, 1);
    auto cur = curvature_and_class(c, 1e-9);
    CHECK(cur.cls.refused);
    CHECK(cur.cls.chern == 1); // curvature integral still reported
}

TEST_CASE("twisted circle holonomy agrees across gauges and assignments")
{
    const double alpha = 0.3;
    const int n = 16;
    auto cov = models::circle_two_chart_cover(n, 2);
    const auto loop = models::circle_loop(n);
    const cplx want = std::exp(cplx(0.0, 2 * 3.14159265358979323846 * alpha));

    auto ca = models::twist_connection_on(cov, alpha);
    auto cb = models::twist_clutching_on(cov, alpha);
    CHECK(validate_cocycle(ca, 1e-12).pass);
    CHECK(validate_cocycle(cb, 1e-12).pass);
    CHECK(std::abs(holonomy(ca, loop) - want) < 1e-12);
    CHECK(std::abs(holonomy(cb, loop) - want) < 1e-12);

    // explicit chart assignments must not matter where both charts contain the edge
    std::vector<int> prefer0(n), prefer1(n);
    for (int i = 0; i < n; ++i) {
        const int e = cov->base.edge_id(i, (i + 1) % n);
        prefer0[i] = cov->edge_in[0][e] ? 0 : 1;
        prefer1[i] = cov->edge_in[1][e] ? 1 : 0;
    }
    CHECK(std::abs(holonomy(cb, loop, prefer0) - holonomy(cb, loop, prefer1)) < 1e-12);

    // holonomy is a gauge invariant
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<std::vector<double>> g(2, std::vector<double>(n));
    for (auto& gl : g)
        for (auto& x : gl) x = u(rng);
    auto cg = gauged(cb, g);
    CHECK(validate_cocycle(cg, 1e-10).pass);
    CHECK(std::abs(holonomy(cg, loop) - want) < 1e-11);
}

TEST_CASE("holonomy survives refinement")
{
    const double alpha = 0.3;
    const int n = 16;
    auto coarse = models::circle_two_chart_cover(n, 2);
    auto fine = models::circle_four_chart_cover(n);
    CHECK(fine->good);
    auto c = models::twist_clutching_on(coarse, alpha);
    auto cf = refine(c, fine, models::circle_refinement_map());
    CHECK(validate_cocycle(cf, 1e-12).pass);
    const auto loop = models::circle_loop(n);
    CHECK(std::abs(holonomy(c, loop) - holonomy(cf, loop)) < 1e-12);

    auto scov = models::sphere_two_chart_cover(8, 0.45);
    auto sfine = models::sphere_band_cover(8, 0.45, -0.25, 0.45);
    auto m = models::monopole_on(scov, 1);
    auto mf = refine(m, sfine, models::sphere_refinement_map());
    CHECK(validate_cocycle(mf, 1e-9).pass);
    const auto& ring = scov->clutch_cycles[0].path;
    CHECK(std::abs(holonomy(m, ring) - holonomy(mf, ring)) < 1e-9);
}

TEST_CASE("refinement rejects a bad chart map")
{
    auto coarse = models::circle_two_chart_cover(16, 2);
    auto fine = models::circle_four_chart_cover(16);
    auto c = models::twist_clutching_on(coarse, 0.3);
    CHECK_THROWS_AS(refine(c, fine, {1, 1, 0, 0}), config_error);
}

TEST_CASE("tensor and inverse act on the class")
{
    auto cov = models::sphere_two_chart_cover(8, 0.45);
    auto m1 = models::monopole_on(cov, 1);
    auto m2 = tensor(m1, m1);
    CHECK(validate_cocycle(m2, 1e-9).pass);
    auto cur2 = curvature_and_class(m2, 1e-9);
    CHECK(cur2.cls.chern == 2);
    CHECK(cur2.cls.clutch_windings[0] == 2);

    auto inv = inverse(models::monopole_on(cov, 2));
    CHECK(validate_cocycle(inv, 1e-9).pass);
    auto curi = curvature_and_class(inv, 1e-9);
    CHECK(curi.cls.chern == -2);
    CHECK(curi.cls.clutch_windings[0] == -2);

    auto flat = tensor(m1, inverse(m1));
    auto curf = curvature_and_class(flat, 1e-9);
    CHECK(curf.cls.chern == 0);
    CHECK(std::abs(curf.cls.curvature_integral) < 1e-9);
}

TEST_CASE("validation localizes an injected defect")
{
    auto cov = models::sphere_two_chart_cover(8, 0.45);
    auto c = models::monopole_on(cov, 1);
    const auto& sub = cov->overlap({0, 1});
    REQUIRE_FALSE(sub.edges.empty());
    const int bad = sub.edges[sub.edges.size() / 2];
    c.c10[{0, 1}].wind[bad] += 1;

    auto rep = validate_cocycle(c, 1e-9);
    CHECK_FALSE(rep.pass);
    CHECK(rep.residuals.at("closedness") == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE_FALSE(rep.failures.empty());
    bool mentions = false;
    for (const auto& s : rep.failures)
        if (s.find("closedness") != std::string::npos) mentions = true;
    CHECK(mentions);
}

TEST_CASE("degree-one sections glue against the transition data")
{
    const double alpha = 0.3;
    const int n = 16;
    auto cov = models::circle_two_chart_cover(n, 2);
    auto c = models::twist_clutching_on(cov, alpha);

    Section1 s;
    s.u.assign(2, std::vector<double>(n, 0.0));
    const auto comp = components(cov->base, cov->overlap({0, 1}));
    const int home = comp.at(0);
    for (const auto& [v, cid] : comp)
        if (cid == home) s.u[1][v] = alpha; // matches the clutching transition
    CHECK(validate_section(c, s, 1e-12).pass);

    Section1 zero;
    zero.u.assign(2, std::vector<double>(n, 0.0));
    auto rep = validate_section(c, zero, 1e-6);
    CHECK_FALSE(rep.pass);
    CHECK(rep.residuals.at("section_gluing") == doctest::Approx(alpha).epsilon(1e-12));
}

TEST_CASE("line section gradient reproduces the connection")
{
    const int n = 16;
    auto cov = models::circle_two_chart_cover(n, 2);
    auto c = models::twist_connection_on(cov, 0.3);

    LineSection phi;
    phi.phi.assign(2, std::vector<cplx>(n, cplx(1.0, 0.0)));
    auto res = line_section_ops(c, phi, 1e-10);
    CHECK(res.gluing.pass);
    for (size_t e = 0; e < cov->base.edges.size(); ++e) {
        REQUIRE(res.defined[e]);
        CHECK(res.omega_re[e] == doctest::Approx(c.c01[0][e]).epsilon(1e-12));
        CHECK(res.omega_im[e] == doctest::Approx(0.0).epsilon(1e-12));
    }

    auto cb = models::twist_clutching_on(cov, 0.3);
    auto bad = line_section_ops(cb, phi, 1e-10);
    CHECK_FALSE(bad.gluing.pass); // constant section cannot glue across the clutch
}

TEST_CASE("torus block cover is good and has deep overlaps")
{
    auto torus = dec::build_triangulation("torus", 24);
    auto cov = models::torus_grid_cover(torus, 3);
    CHECK(cov->good);
    CHECK(cov->n_charts() == 9);
    bool has_quad = false;
    for (const auto& [tup, sub] : cov->overlaps)
        if (tup.size() == 4 && !sub.verts.empty()) has_quad = true;
    CHECK(has_quad);
}
