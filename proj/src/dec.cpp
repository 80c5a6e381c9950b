#include "cdel/dec.hpp"
#include "cdel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cdel::dec {

namespace {

constexpr double pi = 3.14159265358979323846;

void finalize_edges(Triangulation& t, const std::set<std::pair<int, int>>& eset)
{
    t.edges.reserve(eset.size());
    for (const auto& [u, v] : eset) {
        t.edge_index[{u, v}] = (int)t.edges.size();
        t.edges.push_back({u, v});
    }
}

std::set<std::pair<int, int>> edges_of_faces(const std::vector<std::array<int, 3>>& faces)
{
    std::set<std::pair<int, int>> eset;
    for (const auto& f : faces)
        for (int k = 0; k < 3; ++k) {
            int u = f[k], v = f[(k + 1) % 3];
            if (u > v) std::swap(u, v);
            eset.insert({u, v});
        }
    return eset;
}

Triangulation build_circle(int n)
{
    Triangulation t;
    t.kind = "circle";
    t.resolution = n;
    t.dimension = 1;
    t.n_vertices = n;
    std::set<std::pair<int, int>> eset;
    for (int i = 0; i < n; ++i) {
        int u = i, v = (i + 1) % n;
        if (u > v) std::swap(u, v);
        eset.insert({u, v});
    }
    finalize_edges(t, eset);
    t.positions.resize(n);
    for (int i = 0; i < n; ++i)
        t.positions[i] = {std::cos(2 * pi * i / n), std::sin(2 * pi * i / n), 0.0};
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = i;
    t.generator_cycles.push_back(cyc);
    return t;
}

Triangulation build_torus(int n)
{
    Triangulation t;
    t.kind = "torus";
    t.resolution = n;
    t.dimension = 2;
    t.n_vertices = n * n;
    auto id = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int A = id(i, j), B = id(i + 1, j), C = id(i + 1, j + 1), D = id(i, j + 1);
            // clockwise in (x, y): the face sum pairs with d(y dx) as +1
            t.faces.push_back({A, C, B});
            t.faces.push_back({A, D, C});
        }
    finalize_edges(t, edges_of_faces(t.faces));
    t.positions.resize(t.n_vertices);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.positions[id(i, j)] = {(double)i / n, (double)j / n, 0.0};
    std::vector<int> cx(n), cy(n);
    for (int i = 0; i < n; ++i) cx[i] = id(i, 0);
    for (int j = 0; j < n; ++j) cy[j] = id(0, j);
    t.generator_cycles.push_back(cx);
    t.generator_cycles.push_back(cy);
    return t;
}

Triangulation build_sphere(int f)
{
    const double ph = (1.0 + std::sqrt(5.0)) / 2.0;
    const std::array<std::array<double, 3>, 12> base = {{{-1, ph, 0},
                                                         {1, ph, 0},
                                                         {-1, -ph, 0},
                                                         {1, -ph, 0},
                                                         {0, -1, ph},
                                                         {0, 1, ph},
                                                         {0, -1, -ph},
                                                         {0, 1, -ph},
                                                         {ph, 0, -1},
                                                         {ph, 0, 1},
                                                         {-ph, 0, -1},
                                                         {-ph, 0, 1}}};
    const std::array<std::array<int, 3>, 20> ifaces = {{{0, 11, 5},  {0, 5, 1},  {0, 1, 7},
                                                        {0, 7, 10},  {0, 10, 11}, {1, 5, 9},
                                                        {5, 11, 4},  {11, 10, 2}, {10, 7, 6},
                                                        {7, 1, 8},   {3, 9, 4},  {3, 4, 2},
                                                        {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                                        {4, 9, 5},   {2, 4, 11}, {6, 2, 10},
                                                        {8, 6, 7},   {9, 8, 1}}};

    Triangulation t;
    t.kind = "sphere";
    t.resolution = f;
    t.dimension = 2;

    std::map<std::array<long long, 3>, int> seen;
    auto vertex_at = [&](std::array<double, 3> p) {
        const double nrm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        for (auto& c : p) c /= nrm;
        const std::array<long long, 3> key = {(long long)std::llround(p[0] * 1e9),
                                              (long long)std::llround(p[1] * 1e9),
                                              (long long)std::llround(p[2] * 1e9)};
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        const int idx = (int)t.positions.size();
        seen[key] = idx;
        t.positions.push_back(p);
        return idx;
    };

    for (const auto& F : ifaces) {
        const auto &A = base[F[0]], &B = base[F[1]], &C = base[F[2]];
        auto bary = [&](int i, int j) {
            std::array<double, 3> p;
            for (int k = 0; k < 3; ++k)
                p[k] = (A[k] * (f - i - j) + B[k] * i + C[k] * j) / f;
            return vertex_at(p);
        };
        for (int i = 0; i < f; ++i)
            for (int j = 0; i + j < f; ++j) {
                t.faces.push_back({bary(i, j), bary(i + 1, j), bary(i, j + 1)});
                if (i + j < f - 1)
                    t.faces.push_back({bary(i + 1, j), bary(i + 1, j + 1), bary(i, j + 1)});
            }
    }
    t.n_vertices = (int)t.positions.size();

    // force outward orientation regardless of the seed list's handedness
    for (auto& F : t.faces) {
        const auto &a = t.positions[F[0]], &b = t.positions[F[1]], &c = t.positions[F[2]];
        const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
        const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
        const double nx = uy * vz - uz * vy, ny = uz * vx - ux * vz, nz = ux * vy - uy * vx;
        if (nx * a[0] + ny * a[1] + nz * a[2] < 0.0) std::swap(F[1], F[2]);
    }
    finalize_edges(t, edges_of_faces(t.faces));
    return t;
}

} // namespace

int Triangulation::edge_id(int u, int v) const
{
    if (u > v) std::swap(u, v);
    auto it = edge_index.find({u, v});
    if (it == edge_index.end())
        throw config_error("edge_id: {" + std::to_string(u) + "," + std::to_string(v) +
                           "} is not an edge");
    return it->second;
}

std::array<std::pair<int, int>, 3> Triangulation::face_edges(int f) const
{
    const auto& F = faces.at(f);
    std::array<std::pair<int, int>, 3> out;
    for (int k = 0; k < 3; ++k) {
        const int u = F[k], v = F[(k + 1) % 3];
        out[k] = {edge_id(u, v), u < v ? 1 : -1};
    }
    return out;
}

Triangulation build_triangulation(const std::string& kind, int resolution)
{
    if (resolution < 3)
        throw config_error("build_triangulation: resolution must be >= 3");
    if (kind == "circle") return build_circle(resolution);
    if (kind == "torus") return build_torus(resolution);
    if (kind == "sphere") return build_sphere(resolution);
    throw config_error("build_triangulation: unknown kind '" + kind + "'");
}

template <class S>
static std::vector<S> d0_impl(const Triangulation& t, const std::vector<S>& f)
{
    if ((int)f.size() != t.n_vertices) throw config_error("d0: size mismatch");
    std::vector<S> out(t.edges.size());
    for (size_t e = 0; e < t.edges.size(); ++e)
        out[e] = f[t.edges[e][1]] - f[t.edges[e][0]];
    return out;
}

std::vector<double> d0(const Triangulation& t, const std::vector<double>& f)
{
    return d0_impl(t, f);
}
std::vector<long long> d0(const Triangulation& t, const std::vector<long long>& f)
{
    return d0_impl(t, f);
}

template <class S>
static std::vector<S> d1_impl(const Triangulation& t, const std::vector<S>& a)
{
    if (a.size() != t.edges.size()) throw config_error("d1: size mismatch");
    std::vector<S> out(t.faces.size());
    for (size_t f = 0; f < t.faces.size(); ++f) {
        S acc = S(0);
        for (const auto& [e, sgn] : t.face_edges((int)f))
            acc += sgn > 0 ? a[e] : -a[e];
        out[f] = acc;
    }
    return out;
}

std::vector<double> d1(const Triangulation& t, const std::vector<double>& a)
{
    return d1_impl(t, a);
}
std::vector<long long> d1(const Triangulation& t, const std::vector<long long>& a)
{
    return d1_impl(t, a);
}

double eval_dir(const Triangulation& t, const std::vector<double>& a, int u, int v)
{
    const int e = t.edge_id(u, v);
    return u < v ? a[e] : -a[e];
}

template <class S>
static S integrate_cycle_impl(const Triangulation& t, const std::vector<S>& a,
                              const std::vector<int>& path)
{
    S acc = S(0);
    for (size_t k = 0; k < path.size(); ++k) {
        const int u = path[k], v = path[(k + 1) % path.size()];
        const int e = t.edge_id(u, v);
        acc += u < v ? a[e] : -a[e];
    }
    return acc;
}

double integrate_cycle(const Triangulation& t, const std::vector<double>& a,
                       const std::vector<int>& path)
{
    return integrate_cycle_impl(t, a, path);
}
long long integrate_cycle(const Triangulation& t, const std::vector<long long>& a,
                          const std::vector<int>& path)
{
    return integrate_cycle_impl(t, a, path);
}

double integrate_all_faces(const Triangulation& t, const std::vector<double>& w)
{
    if (w.size() != t.faces.size()) throw config_error("integrate_all_faces: size mismatch");
    double acc = 0.0;
    for (double x : w) acc += x;
    return acc;
}

bool is_closed_oriented_surface(const Triangulation& t)
{
    if (t.dimension != 2) return false;
    // net orientation count per edge must be 0, and each edge used twice
    std::vector<int> net(t.edges.size(), 0), uses(t.edges.size(), 0);
    for (size_t f = 0; f < t.faces.size(); ++f)
        for (const auto& [e, sgn] : t.face_edges((int)f)) {
            net[e] += sgn;
            ++uses[e];
        }
    for (size_t e = 0; e < t.edges.size(); ++e)
        if (net[e] != 0 || uses[e] != 2) return false;
    return true;
}

} // namespace cdel::dec
