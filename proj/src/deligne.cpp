#include "cdel/deligne.hpp"
#include "cdel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cdel::deligne {

namespace {

constexpr double two_pi = 6.28318530717958647692;

double frac01(double x)
{
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

double dist_to_int(double x) { return std::abs(x - std::round(x)); }

std::string cell_edge(const dec::Triangulation& t, int e)
{
    return "edge {" + std::to_string(t.edges[e][0]) + "," + std::to_string(t.edges[e][1]) +
           "}";
}

std::string tuple_tag(const std::vector<int>& tup)
{
    std::string s = "(";
    for (size_t i = 0; i < tup.size(); ++i) s += (i ? "," : "") + std::to_string(tup[i]);
    return s + ")";
}

} // namespace

double wrap_pm(double x) { return x - std::round(x); }

double lift_increment(const dec::Triangulation& t, const Phase& p, int edge)
{
    const int u = t.edges[edge][0], v = t.edges[edge][1];
    return wrap_pm(p.angle[v] - p.angle[u]) + (double)p.wind[edge];
}

Phase phase_combine(const dec::Triangulation& t,
                    const std::vector<std::pair<const Phase*, int>>& terms)
{
    Phase out;
    out.angle.assign(t.n_vertices, 0.0);
    out.wind.assign(t.edges.size(), 0);
    for (int v = 0; v < t.n_vertices; ++v) {
        double a = 0.0;
        for (const auto& [p, c] : terms) a += c * p->angle[v];
        out.angle[v] = frac01(a);
    }
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        double lift = 0.0;
        for (const auto& [p, c] : terms)
            lift += c * (wrap_pm(p->angle[v] - p->angle[u]) + (double)p->wind[e]);
        const double da = wrap_pm(out.angle[v] - out.angle[u]);
        out.wind[e] = (long long)std::llround(lift - da);
    }
    return out;
}

void Report::note(const std::string& cond, double r, double tol, const std::string& cell)
{
    auto it = residuals.find(cond);
    if (it == residuals.end())
        residuals[cond] = r;
    else
        it->second = std::max(it->second, r);
    if (r > tol) {
        pass = false;
        if (failures.size() < 40)
            failures.push_back(cond + " @ " + cell + " = " + std::to_string(r));
    }
}

// ---- accessors with antisymmetry ----

double Deligne1::pair_angle(int l, int k, int v) const
{
    if (l < k) return c10.at({l, k}).angle[v];
    return frac01(-c10.at({k, l}).angle[v]);
}

double Deligne1::pair_lift(int l, int k, int e) const
{
    if (l < k) return lift_increment(cov->base, c10.at({l, k}), e);
    return -lift_increment(cov->base, c10.at({k, l}), e);
}

long long Deligne1::pair_wind(int l, int k, int e) const
{
    const double lift = pair_lift(l, k, e);
    const int u = cov->base.edges[e][0], v = cov->base.edges[e][1];
    return (long long)std::llround(lift - wrap_pm(pair_angle(l, k, v) - pair_angle(l, k, u)));
}

double Deligne2::pair_form(int l, int k, int e) const
{
    if (l < k) return c11.at({l, k})[e];
    return -c11.at({k, l})[e];
}

namespace {
// parity sort of a triple; returns sign, sorted in place
int sort3(int& a, int& b, int& c)
{
    int s = 1;
    if (a > b) { std::swap(a, b); s = -s; }
    if (b > c) { std::swap(b, c); s = -s; }
    if (a > b) { std::swap(a, b); s = -s; }
    return s;
}
} // namespace

double Deligne2::triple_angle(int i, int j, int k, int v) const
{
    int a = i, b = j, c = k;
    const int s = sort3(a, b, c);
    const double ang = c20.at({a, b, c}).angle[v];
    return s > 0 ? ang : frac01(-ang);
}

double Deligne2::triple_lift(int i, int j, int k, int e) const
{
    int a = i, b = j, c = k;
    const int s = sort3(a, b, c);
    return s * lift_increment(cov->base, c20.at({a, b, c}), e);
}

double GerbeSection::pair_angle(int l, int k, int v) const
{
    if (l < k) return b10.at({l, k}).angle[v];
    return frac01(-b10.at({k, l}).angle[v]);
}

// ---- Cech differential ----

std::map<std::vector<int>, Form>
cech_delta_forms(const Cover& cov, const std::map<std::vector<int>, Form>& cochain,
                 int cell_dim)
{
    if (cochain.empty()) return {};
    const size_t p1 = cochain.begin()->first.size(); // tuple size p+1
    size_t ncells = 0;
    if (cell_dim == 0) ncells = cov.base.n_vertices;
    else if (cell_dim == 1) ncells = cov.base.edges.size();
    else ncells = cov.base.faces.size();

    std::map<std::vector<int>, Form> out;
    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() != p1 + 1) continue;
        Form acc(ncells, 0.0);
        for (size_t j = 0; j < tup.size(); ++j) {
            std::vector<int> face;
            for (size_t i = 0; i < tup.size(); ++i)
                if (i != j) face.push_back(tup[i]);
            auto it = cochain.find(face);
            if (it == cochain.end())
                throw config_error("cech_delta: cochain missing on overlap " +
                                   tuple_tag(face));
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            for (size_t c = 0; c < ncells; ++c) acc[c] += sgn * it->second[c];
        }
        out.emplace(tup, std::move(acc));
    }
    return out;
}

std::map<std::vector<int>, std::vector<double>>
cech_delta_angles(const Cover& cov,
                  const std::map<std::vector<int>, std::vector<double>>& cochain)
{
    if (cochain.empty()) return {};
    const size_t p1 = cochain.begin()->first.size();
    const size_t nv = cov.base.n_vertices;
    std::map<std::vector<int>, std::vector<double>> out;
    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() != p1 + 1) continue;
        std::vector<double> acc(nv, 0.0);
        for (size_t j = 0; j < tup.size(); ++j) {
            std::vector<int> face;
            for (size_t i = 0; i < tup.size(); ++i)
                if (i != j) face.push_back(tup[i]);
            auto it = cochain.find(face);
            if (it == cochain.end())
                throw config_error("cech_delta: cochain missing on overlap " +
                                   tuple_tag(face));
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            for (size_t v = 0; v < nv; ++v) acc[v] += sgn * it->second[v];
        }
        out.emplace(tup, std::move(acc));
    }
    return out;
}

// ---- validation ----

Report validate_cocycle(const Deligne1& c, double tol)
{
    Report rep;
    const auto& cov = *c.cov;
    const auto& t = cov.base;

    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() == 2) {
            const int l = tup[0], k = tup[1];
            if (!c.c10.count({l, k})) {
                rep.pass = false;
                rep.failures.push_back("missing c10 on overlap " + tuple_tag(tup));
                continue;
            }
            for (int e : sub.edges) {
                const double r =
                    std::abs(c.c01[k][e] - c.c01[l][e] + c.pair_lift(l, k, e));
                rep.note("closedness", r, tol, tuple_tag(tup) + " " + cell_edge(t, e));
            }
        } else if (tup.size() == 3) {
            const int i = tup[0], j = tup[1], k = tup[2];
            if (!c.c10.count({i, j}) || !c.c10.count({i, k}) || !c.c10.count({j, k}))
                continue; // reported via the pair pass
            auto N = [&](int v) {
                return c.pair_angle(j, k, v) - c.pair_angle(i, k, v) +
                       c.pair_angle(i, j, v);
            };
            for (int v : sub.verts)
                rep.note("triple_phase", dist_to_int(N(v)), tol,
                         tuple_tag(tup) + " vertex " + std::to_string(v));
            for (int e : sub.edges) {
                const double lsum = c.pair_lift(j, k, e) - c.pair_lift(i, k, e) +
                                    c.pair_lift(i, j, e);
                rep.note("triple_wind", std::abs(lsum), tol,
                         tuple_tag(tup) + " " + cell_edge(t, e));
            }
        }
    }
    return rep;
}

Report validate_cocycle(const Deligne2& c, double tol)
{
    Report rep;
    const auto& cov = *c.cov;
    const auto& t = cov.base;

    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() == 2) {
            const int l = tup[0], k = tup[1];
            if (!c.c11.count({l, k})) {
                rep.pass = false;
                rep.failures.push_back("missing c11 on overlap " + tuple_tag(tup));
                continue;
            }
            const auto& c11lk = c.c11.at({l, k});
            for (int f : sub.faces) {
                double dc11 = 0.0;
                for (const auto& [e, sgn] : t.face_edges(f)) dc11 += sgn * c11lk[e];
                const double r = std::abs(c.c02[k][f] - c.c02[l][f] + dc11);
                rep.note("face", r, tol, tuple_tag(tup) + " face " + std::to_string(f));
            }
        } else if (tup.size() == 3) {
            const int i = tup[0], j = tup[1], k = tup[2];
            if (!c.c20.count({i, j, k})) {
                rep.pass = false;
                rep.failures.push_back("missing c20 on overlap " + tuple_tag(tup));
                continue;
            }
            for (int e : sub.edges) {
                const double delta11 =
                    c.pair_form(j, k, e) - c.pair_form(i, k, e) + c.pair_form(i, j, e);
                const double r = std::abs(delta11 - c.triple_lift(i, j, k, e));
                rep.note("pair_edge", r, tol, tuple_tag(tup) + " " + cell_edge(t, e));
            }
        } else if (tup.size() == 4) {
            const int i = tup[0], j = tup[1], k = tup[2], l = tup[3];
            auto A = [&](int v) {
                return c.triple_angle(j, k, l, v) - c.triple_angle(i, k, l, v) +
                       c.triple_angle(i, j, l, v) - c.triple_angle(i, j, k, v);
            };
            for (int v : sub.verts)
                rep.note("quad_phase", dist_to_int(A(v)), tol,
                         tuple_tag(tup) + " vertex " + std::to_string(v));
            for (int e : sub.edges) {
                const double lsum = c.triple_lift(j, k, l, e) - c.triple_lift(i, k, l, e) +
                                    c.triple_lift(i, j, l, e) - c.triple_lift(i, j, k, e);
                rep.note("quad_wind", std::abs(lsum), tol,
                         tuple_tag(tup) + " " + cell_edge(t, e));
            }
        }
    }
    return rep;
}

Report validate_section(const Deligne1& c, const Section1& s, double tol)
{
    Report rep;
    for (const auto& [tup, sub] : c.cov->overlaps) {
        if (tup.size() != 2) continue;
        const int l = tup[0], k = tup[1];
        for (int v : sub.verts) {
            const double r =
                dist_to_int(s.u[k][v] - s.u[l][v] - c.pair_angle(l, k, v));
            rep.note("section_gluing", r, tol,
                     tuple_tag(tup) + " vertex " + std::to_string(v));
        }
    }
    return rep;
}

Report validate_section(const Deligne2& c, const GerbeSection& b, double tol)
{
    Report rep;
    const auto& t = c.cov->base;
    for (const auto& [tup, sub] : c.cov->overlaps) {
        if (tup.size() == 2) {
            const int l = tup[0], k = tup[1];
            if (!b.b10.count({l, k})) {
                rep.pass = false;
                rep.failures.push_back("missing b10 on overlap " + tuple_tag(tup));
                continue;
            }
            const auto& ph = b.b10.at({l, k});
            for (int e : sub.edges) {
                const double r = std::abs(-lift_increment(t, ph, e) -
                                          (b.b01[k][e] - b.b01[l][e]) -
                                          c.c11.at({l, k})[e]);
                rep.note("sec_pair", r, tol, tuple_tag(tup) + " " + cell_edge(t, e));
            }
        } else if (tup.size() == 3) {
            const int i = tup[0], j = tup[1], k = tup[2];
            for (int v : sub.verts) {
                const double db = b.pair_angle(j, k, v) - b.pair_angle(i, k, v) +
                                  b.pair_angle(i, j, v);
                const double r = dist_to_int(-db - c.triple_angle(i, j, k, v));
                rep.note("sec_triple", r, tol,
                         tuple_tag(tup) + " vertex " + std::to_string(v));
            }
        }
    }
    return rep;
}

// ---- algebra ----

namespace {
void require_same_cover(const void* a, const void* b)
{
    if (a != b) throw config_error("cocycle algebra: cover mismatch");
}
} // namespace

Deligne1 tensor(const Deligne1& a, const Deligne1& b)
{
    require_same_cover(a.cov.get(), b.cov.get());
    Deligne1 out;
    out.cov = a.cov;
    out.c01.resize(a.c01.size());
    for (size_t l = 0; l < a.c01.size(); ++l) {
        out.c01[l] = a.c01[l];
        for (size_t e = 0; e < out.c01[l].size(); ++e) out.c01[l][e] += b.c01[l][e];
    }
    for (const auto& [key, pa] : a.c10)
        out.c10[key] = phase_combine(a.cov->base, {{&pa, 1}, {&b.c10.at(key), 1}});
    return out;
}

Deligne1 inverse(const Deligne1& a)
{
    Deligne1 out;
    out.cov = a.cov;
    out.c01.resize(a.c01.size());
    for (size_t l = 0; l < a.c01.size(); ++l) {
        out.c01[l].assign(a.c01[l].size(), 0.0);
        for (size_t e = 0; e < a.c01[l].size(); ++e) out.c01[l][e] = -a.c01[l][e];
    }
    for (const auto& [key, pa] : a.c10)
        out.c10[key] = phase_combine(a.cov->base, {{&pa, -1}});
    return out;
}

Deligne2 tensor(const Deligne2& a, const Deligne2& b)
{
    require_same_cover(a.cov.get(), b.cov.get());
    Deligne2 out;
    out.cov = a.cov;
    out.c02.resize(a.c02.size());
    for (size_t l = 0; l < a.c02.size(); ++l) {
        out.c02[l] = a.c02[l];
        for (size_t f = 0; f < out.c02[l].size(); ++f) out.c02[l][f] += b.c02[l][f];
    }
    for (const auto& [key, fa] : a.c11) {
        Form f = fa;
        const auto& fb = b.c11.at(key);
        for (size_t e = 0; e < f.size(); ++e) f[e] += fb[e];
        out.c11[key] = std::move(f);
    }
    for (const auto& [key, pa] : a.c20)
        out.c20[key] = phase_combine(a.cov->base, {{&pa, 1}, {&b.c20.at(key), 1}});
    return out;
}

// ---- curvature and class ----

Curvature1 curvature_and_class(const Deligne1& c, double tol)
{
    const auto& cov = *c.cov;
    const auto& t = cov.base;
    Curvature1 out;

    if (t.dimension == 2) {
        std::vector<Form> Rl(cov.n_charts());
        for (int l = 0; l < cov.n_charts(); ++l) Rl[l] = dec::d1(t, c.c01[l]);

        for (const auto& [tup, sub] : cov.overlaps) {
            if (tup.size() != 2) continue;
            for (int f : sub.faces)
                if (std::abs(Rl[tup[0]][f] - Rl[tup[1]][f]) > tol)
                    throw config_error("curvature: chart mismatch on face " +
                                       std::to_string(f) + " of overlap " +
                                       tuple_tag(tup));
        }
        out.R.assign(t.faces.size(), 0.0);
        for (size_t f = 0; f < t.faces.size(); ++f)
            for (int l = 0; l < cov.n_charts(); ++l)
                if (cov.face_in[l][f]) {
                    out.R[f] = Rl[l][f];
                    break;
                }
        for (double x : out.R) out.cls.curvature_integral += x;
    }

    out.cls.chern = (long long)std::llround(out.cls.curvature_integral);
    out.cls.chern_residual =
        std::abs(out.cls.curvature_integral - (double)out.cls.chern);

    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() != 3 || sub.verts.empty()) continue;
        const int i = tup[0], j = tup[1], k = tup[2];
        if (!c.c10.count({i, j}) || !c.c10.count({i, k}) || !c.c10.count({j, k})) continue;
        const int v0 = sub.verts.front();
        out.cls.triple_integers[tup] = (long long)std::llround(
            c.pair_angle(j, k, v0) - c.pair_angle(i, k, v0) + c.pair_angle(i, j, v0));
    }

    for (const auto& cc : cov.clutch_cycles) {
        double w = 0.0;
        for (size_t i = 0; i < cc.path.size(); ++i) {
            const int u = cc.path[i], v = cc.path[(i + 1) % cc.path.size()];
            const int e = t.edge_id(u, v);
            const double lift = c.pair_lift(cc.l, cc.k, e);
            w += (u < v) ? lift : -lift;
        }
        if (dist_to_int(w) > tol)
            out.cls.notes.push_back("clutch winding not integral: " + std::to_string(w));
        out.cls.clutch_windings.push_back((long long)std::llround(w));
    }

    if (!cov.good && cov.clutch_cycles.empty()) {
        out.cls.refused = true;
        out.cls.notes.push_back(
            "cover is not good and provides no clutching cycle; integer class "
            "extraction refused");
    }
    return out;
}

Class2Data curvature_and_class(const Deligne2& c, double tol)
{
    (void)tol;
    Class2Data out;
    const auto& cov = *c.cov;
    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() != 4 || sub.verts.empty()) continue;
        const int i = tup[0], j = tup[1], k = tup[2], l = tup[3];
        const int v0 = sub.verts.front();
        out.quad_integers[tup] = (long long)std::llround(
            c.triple_angle(j, k, l, v0) - c.triple_angle(i, k, l, v0) +
            c.triple_angle(i, j, l, v0) - c.triple_angle(i, j, k, v0));
    }
    if (!cov.good) {
        out.refused = true;
        out.notes.push_back("cover is not good; class extraction refused");
    }
    return out;
}

// ---- gerbe sections ----

Form grad_gerbe_section(const Deligne2& c, const GerbeSection& b, double tol)
{
    const auto& cov = *c.cov;
    const auto& t = cov.base;
    std::vector<Form> Gl(cov.n_charts());
    for (int l = 0; l < cov.n_charts(); ++l) {
        Gl[l] = dec::d1(t, b.b01[l]);
        for (size_t f = 0; f < Gl[l].size(); ++f) Gl[l][f] -= c.c02[l][f];
    }
    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() != 2) continue;
        for (int f : sub.faces)
            if (std::abs(Gl[tup[0]][f] - Gl[tup[1]][f]) > tol)
                throw config_error("grad_gerbe_section: chart mismatch on face " +
                                   std::to_string(f));
    }
    Form out(t.faces.size(), 0.0);
    for (size_t f = 0; f < t.faces.size(); ++f)
        for (int l = 0; l < cov.n_charts(); ++l)
            if (cov.face_in[l][f]) {
                out[f] = Gl[l][f];
                break;
            }
    return out;
}

Deligne1 section_difference(const Deligne2& c, const GerbeSection& b0,
                            const GerbeSection& b1)
{
    Deligne1 d;
    d.cov = c.cov;
    d.c01.resize(b0.b01.size());
    for (size_t l = 0; l < b0.b01.size(); ++l) {
        d.c01[l].resize(b0.b01[l].size());
        for (size_t e = 0; e < b0.b01[l].size(); ++e)
            d.c01[l][e] = b1.b01[l][e] - b0.b01[l][e];
    }
    for (const auto& [key, p1] : b1.b10)
        d.c10[key] = phase_combine(c.cov->base, {{&p1, 1}, {&b0.b10.at(key), -1}});
    return d;
}

PairingData pairing(const Deligne2& c, const GerbeSection& b0, const GerbeSection& b1,
                    double tol)
{
    const Deligne1 d = section_difference(c, b0, b1);
    PairingData out;
    out.cls = curvature_and_class(d, tol).cls;
    for (const auto& cyc : c.cov->base.generator_cycles)
        out.holonomies.push_back(holonomy(d, cyc));
    return out;
}

Deligne2 apply_isomorphism(const Deligne2& c0, const GerbeSection& b)
{
    const auto& t = c0.cov->base;
    Deligne2 c1;
    c1.cov = c0.cov;

    c1.c02.resize(c0.c02.size());
    for (size_t l = 0; l < c0.c02.size(); ++l) {
        c1.c02[l] = dec::d1(t, b.b01[l]);
        for (size_t f = 0; f < c1.c02[l].size(); ++f) c1.c02[l][f] += c0.c02[l][f];
    }
    for (const auto& [key, f0] : c0.c11) {
        const auto [l, k] = key;
        Form f = f0;
        const auto& ph = b.b10.at(key);
        for (size_t e = 0; e < f.size(); ++e)
            f[e] += -lift_increment(t, ph, (int)e) - (b.b01[k][e] - b.b01[l][e]);
        c1.c11[key] = std::move(f);
    }
    for (const auto& [key, p0] : c0.c20) {
        const auto [i, j, k] = key;
        // delta b10 on the triple, then divide
        const Phase* pjk = &b.b10.at({j, k});
        const Phase* pik = &b.b10.at({i, k});
        const Phase* pij = &b.b10.at({i, j});
        const Phase db = phase_combine(t, {{pjk, 1}, {pik, -1}, {pij, 1}});
        c1.c20[key] = phase_combine(t, {{&p0, 1}, {&db, -1}});
    }
    return c1;
}

// ---- holonomy, refinement, line sections ----

cplx holonomy(const Deligne1& c, const std::vector<int>& loop,
              const std::vector<int>& chart)
{
    const auto& cov = *c.cov;
    const auto& t = cov.base;
    const size_t m = loop.size();
    if (chart.size() != m) throw config_error("holonomy: chart list size mismatch");

    double total = 0.0; // accumulated angle in turns
    for (size_t i = 0; i < m; ++i) {
        const int u = loop[i], v = loop[(i + 1) % m];
        const int l = chart[i];
        const int e = t.edge_id(u, v);
        if (!cov.edge_in[l][e])
            throw config_error("holonomy: edge not contained in assigned chart");
        total += (u < v) ? c.c01[l][e] : -c.c01[l][e];

        const int lnext = chart[(i + 1) % m];
        if (lnext != l) {
            if (!cov.vert_in[l][v] || !cov.vert_in[lnext][v])
                throw config_error("holonomy: broken chart chain at vertex " +
                                   std::to_string(v));
            total += c.pair_angle(lnext, l, v);
        }
    }
    return std::exp(cplx(0.0, two_pi * total));
}

cplx holonomy(const Deligne1& c, const std::vector<int>& loop)
{
    const auto& cov = *c.cov;
    std::vector<int> chart(loop.size(), -1);
    for (size_t i = 0; i < loop.size(); ++i) {
        const int e = cov.base.edge_id(loop[i], loop[(i + 1) % loop.size()]);
        for (int l = 0; l < cov.n_charts(); ++l)
            if (cov.edge_in[l][e]) {
                chart[i] = l;
                break;
            }
        if (chart[i] < 0) throw config_error("holonomy: edge not covered");
    }
    return holonomy(c, loop, chart);
}

Deligne1 refine(const Deligne1& c, std::shared_ptr<const Cover> fine,
                const std::vector<int>& r)
{
    const auto& coarse = *c.cov;
    if ((int)r.size() != fine->n_charts())
        throw config_error("refine: map size mismatch");
    for (int j = 0; j < fine->n_charts(); ++j) {
        if (r[j] < 0 || r[j] >= coarse.n_charts())
            throw config_error("refine: map target out of range");
        for (int v : fine->charts[j])
            if (!coarse.vert_in[r[j]][v])
                throw config_error("refine: containment violated for chart " +
                                   std::to_string(j));
    }

    const auto& t = fine->base;
    Deligne1 out;
    out.cov = fine;
    out.c01.resize(fine->n_charts());
    for (int j = 0; j < fine->n_charts(); ++j) out.c01[j] = c.c01[r[j]];

    Phase trivial;
    trivial.angle.assign(t.n_vertices, 0.0);
    trivial.wind.assign(t.edges.size(), 0);
    for (const auto& [tup, sub] : fine->overlaps) {
        if (tup.size() != 2) continue;
        const int a = r[tup[0]], b = r[tup[1]];
        if (a == b)
            out.c10[{tup[0], tup[1]}] = trivial;
        else if (a < b)
            out.c10[{tup[0], tup[1]}] = c.c10.at({a, b});
        else
            out.c10[{tup[0], tup[1]}] = phase_combine(t, {{&c.c10.at({b, a}), -1}});
    }
    return out;
}

LineSectionResult line_section_ops(const Deligne1& c, const LineSection& phi, double tol)
{
    const auto& cov = *c.cov;
    const auto& t = cov.base;
    LineSectionResult out;

    for (const auto& [tup, sub] : cov.overlaps) {
        if (tup.size() != 2) continue;
        const int l = tup[0], k = tup[1];
        for (int v : sub.verts) {
            const cplx trans =
                std::exp(cplx(0.0, two_pi * c.pair_angle(l, k, v)));
            const double r = std::abs(phi.phi[k][v] - trans * phi.phi[l][v]);
            out.gluing.note("gluing", r, tol,
                            tuple_tag(tup) + " vertex " + std::to_string(v));
        }
    }

    out.omega_re.assign(t.edges.size(), 0.0);
    out.omega_im.assign(t.edges.size(), 0.0);
    out.defined.assign(t.edges.size(), 0);
    constexpr double zero_cut = 1e-12;
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const int u = t.edges[e][0], v = t.edges[e][1];
        for (int l = 0; l < cov.n_charts(); ++l) {
            if (!cov.edge_in[l][e]) continue;
            const cplx pu = phi.phi[l][u], pv = phi.phi[l][v];
            if (std::abs(pu) < zero_cut || std::abs(pv) < zero_cut) continue;
            const double dre =
                wrap_pm((std::arg(pv) - std::arg(pu)) / two_pi) + c.c01[l][e];
            const double dim = -(std::log(std::abs(pv)) - std::log(std::abs(pu))) / two_pi;
            if (!out.defined[e]) {
                out.omega_re[e] = dre;
                out.omega_im[e] = dim;
                out.defined[e] = 1;
            } else {
                out.gluing.note("grad_consistency",
                                std::hypot(dre - out.omega_re[e], dim - out.omega_im[e]),
                                tol, cell_edge(t, (int)e));
            }
        }
    }
    return out;
}

} // namespace cdel::deligne
