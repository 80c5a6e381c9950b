#include "cdel/models.hpp"
#include "cdel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cdel::models {

using deligne::Cover;
using deligne::Deligne1;
using deligne::Phase;
using deligne::build_cover;

namespace {

constexpr double two_pi = 6.28318530717958647692;

double frac01(double x)
{
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

std::vector<int> arc(int n, int from, int to)
{
    std::vector<int> out;
    for (int i = from; ; ++i) {
        out.push_back(((i % n) + n) % n);
        if (((i % n) + n) % n == ((to % n) + n) % n) break;
    }
    return out;
}

// directed boundary walk of a face region; direction taken from the inside
// faces, so the loop carries the induced orientation
std::vector<int> region_boundary_loop(const dec::Triangulation& t,
                                      const std::vector<char>& inside)
{
    std::vector<std::array<int, 2>> edge_faces(t.edges.size(), {-1, -1});
    std::vector<std::array<int, 2>> edge_sign(t.edges.size(), {0, 0});
    for (size_t f = 0; f < t.faces.size(); ++f)
        for (const auto& [e, s] : t.face_edges((int)f)) {
            const int slot = edge_faces[e][0] < 0 ? 0 : 1;
            edge_faces[e][slot] = (int)f;
            edge_sign[e][slot] = s;
        }

    std::map<int, int> next;
    size_t n_boundary = 0;
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const auto [f0, f1] = edge_faces[e];
        if (f0 < 0 || f1 < 0) continue;
        if (inside[f0] == inside[f1]) continue;
        ++n_boundary;
        const int s = inside[f0] ? edge_sign[e][0] : edge_sign[e][1];
        const int u = s > 0 ? t.edges[e][0] : t.edges[e][1];
        const int v = s > 0 ? t.edges[e][1] : t.edges[e][0];
        if (next.count(u))
            throw config_error("region boundary is not a simple cycle (branch at vertex " +
                               std::to_string(u) + ")");
        next[u] = v;
    }
    if (next.empty()) throw config_error("region boundary is empty");

    std::vector<int> loop;
    const int start = next.begin()->first;
    int v = start;
    do {
        loop.push_back(v);
        auto it = next.find(v);
        if (it == next.end())
            throw config_error("region boundary walk broke at vertex " + std::to_string(v));
        v = it->second;
    } while (v != start && loop.size() <= n_boundary);
    if (loop.size() != n_boundary)
        throw config_error("region boundary has more than one component");
    return loop;
}

} // namespace

std::shared_ptr<const Cover> circle_two_chart_cover(int n, int margin)
{
    auto t = dec::build_triangulation("circle", n);
    std::vector<std::vector<int>> charts = {arc(n, -margin, n / 2 + margin),
                                            arc(n, n / 2 - margin, margin)};
    return build_cover(std::move(t), charts);
}

std::shared_ptr<const Cover> circle_four_chart_cover(int n)
{
    if (n % 4 != 0) throw config_error("four-chart circle cover needs n divisible by 4");
    auto t = dec::build_triangulation("circle", n);
    const int q = n / 4;
    std::vector<std::vector<int>> charts;
    for (int k = 0; k < 4; ++k) charts.push_back(arc(n, k * q - 1, k * q + q + 1));
    return build_cover(std::move(t), charts);
}

std::vector<int> circle_refinement_map() { return {0, 0, 1, 1}; }

std::shared_ptr<const Cover> torus_grid_cover(const dec::Triangulation& torus, int blocks)
{
    if (torus.kind != "torus") throw config_error("torus_grid_cover needs a torus base");
    const int n = torus.resolution;
    if (n % blocks != 0) throw config_error("torus_grid_cover: blocks must divide n");
    const int step = n / blocks, w = step + 3;
    if (w >= n) throw config_error("torus_grid_cover: patches would wrap onto themselves");

    auto id = [n](int i, int j) {
        return (((i % n) + n) % n) * n + (((j % n) + n) % n);
    };
    std::vector<std::vector<int>> charts;
    for (int I = 0; I < blocks; ++I)
        for (int J = 0; J < blocks; ++J) {
            std::vector<int> vs;
            for (int i = step * I; i < step * I + w; ++i)
                for (int j = step * J; j < step * J + w; ++j) vs.push_back(id(i, j));
            charts.push_back(std::move(vs));
        }
    return build_cover(torus, charts);
}

std::shared_ptr<const Cover> sphere_two_chart_cover(int frequency, double zcut)
{
    auto t = dec::build_triangulation("sphere", frequency);
    std::vector<int> north, south;
    for (int v = 0; v < t.n_vertices; ++v) {
        if (t.positions[v][2] > -zcut) north.push_back(v);
        if (t.positions[v][2] < zcut) south.push_back(v);
    }
    auto cov = build_cover(t, {north, south});

    // cap assignment by face centroid, offset to dodge symmetric pinch points
    std::vector<char> inside(t.faces.size(), 0);
    for (size_t f = 0; f < t.faces.size(); ++f) {
        double z = 0;
        for (int v : t.faces[f]) z += t.positions[v][2];
        inside[f] = (z / 3.0 >= 0.0137) ? 1 : 0;
    }
    Cover with_clutch = *cov;
    with_clutch.clutch_cycles.push_back({0, 1, region_boundary_loop(t, inside)});
    return std::make_shared<const Cover>(std::move(with_clutch));
}

std::shared_ptr<const Cover> sphere_band_cover(int frequency, double zcut, double zlo,
                                               double zhi)
{
    auto t = dec::build_triangulation("sphere", frequency);
    std::vector<int> north, south, band;
    for (int v = 0; v < t.n_vertices; ++v) {
        const double z = t.positions[v][2];
        if (z > -zcut) north.push_back(v);
        if (z < zcut) south.push_back(v);
        if (z > zlo && z < zhi) band.push_back(v);
    }
    return build_cover(std::move(t), {north, south, band});
}

std::vector<int> sphere_refinement_map() { return {0, 1, 0}; }

Deligne1 monopole_on(std::shared_ptr<const Cover> cov, int charge)
{
    const auto& t = cov->base;
    if (t.kind != "sphere") throw config_error("monopole_on needs a sphere base");
    const int nv = t.n_vertices;
    const size_t ne = t.edges.size();

    std::vector<double> phi(nv), z(nv);
    std::vector<char> pole(nv, 0);
    for (int v = 0; v < nv; ++v) {
        const auto& p = t.positions[v];
        z[v] = p[2];
        const double rho2 = p[0] * p[0] + p[1] * p[1];
        pole[v] = rho2 < 1e-20;
        phi[v] = pole[v] ? 0.0 : std::atan2(p[1], p[0]);
    }

    std::vector<double> dphi(ne, 0.0);
    for (size_t e = 0; e < ne; ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        if (pole[u] || pole[v]) continue;
        double d = phi[v] - phi[u];
        while (d > 3.14159265358979323846) d -= two_pi;
        while (d <= -3.14159265358979323846) d += two_pi;
        dphi[e] = d;
    }

    Deligne1 c;
    c.cov = cov;
    c.c01.assign(2, deligne::Form(ne, 0.0));
    for (size_t e = 0; e < ne; ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        const double zmid = 0.5 * (z[u] + z[v]);
        c.c01[0][e] = charge * (1.0 - zmid) * dphi[e] / (2.0 * two_pi);
        c.c01[1][e] = c.c01[0][e] - charge * dphi[e] / two_pi;
    }

    Phase p;
    p.angle.assign(nv, 0.0);
    p.wind.assign(ne, 0);
    for (int v = 0; v < nv; ++v)
        p.angle[v] = pole[v] ? 0.0 : frac01(charge * phi[v] / two_pi);
    for (size_t e = 0; e < ne; ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        const double da = deligne::wrap_pm(p.angle[v] - p.angle[u]);
        p.wind[e] = (long long)std::llround(charge * dphi[e] / two_pi - da);
    }
    c.c10[{0, 1}] = std::move(p);
    return c;
}

Deligne1 twist_connection_on(std::shared_ptr<const Cover> cov, double alpha)
{
    const auto& t = cov->base;
    if (t.kind != "circle") throw config_error("twist model needs a circle base");
    const int n = t.n_vertices;
    const size_t ne = t.edges.size();

    deligne::Form a(ne, 0.0);
    for (size_t e = 0; e < ne; ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        a[e] = alpha * deligne::wrap_pm((double)(v - u) / n);
    }

    Deligne1 c;
    c.cov = cov;
    c.c01.assign(cov->n_charts(), a);
    Phase trivial;
    trivial.angle.assign(n, 0.0);
    trivial.wind.assign(ne, 0);
    for (const auto& [tup, sub] : cov->overlaps)
        if (tup.size() == 2) c.c10[{tup[0], tup[1]}] = trivial;
    return c;
}

Deligne1 twist_clutching_on(std::shared_ptr<const Cover> cov, double alpha)
{
    const auto& t = cov->base;
    if (t.kind != "circle") throw config_error("twist model needs a circle base");
    if (cov->n_charts() != 2) throw config_error("clutching gauge needs two charts");
    const int n = t.n_vertices;
    const size_t ne = t.edges.size();

    const auto& sub = cov->overlap({0, 1});
    const auto comp = deligne::components(t, sub);
    auto it0 = comp.find(0);
    if (it0 == comp.end())
        throw config_error("clutching gauge expects vertex 0 inside the overlap");

    Phase p;
    p.angle.assign(n, 0.0);
    p.wind.assign(ne, 0);
    for (const auto& [v, cid] : comp)
        if (cid == it0->second) p.angle[v] = frac01(alpha);

    Deligne1 c;
    c.cov = cov;
    c.c01.assign(2, deligne::Form(ne, 0.0));
    c.c10[{0, 1}] = std::move(p);
    return c;
}

std::vector<int> circle_loop(int n)
{
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    return out;
}

} // namespace cdel::models
