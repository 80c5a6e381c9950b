#include "cdel/cover.hpp"
#include "cdel/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cdel::deligne {

namespace {

// row rank by integer elimination; incidence-type matrices always offer a
// +-1 pivot, which keeps every entry in {0, +-1}
int int_rank(std::vector<std::vector<int>> m)
{
    const int rows = (int)m.size();
    if (rows == 0) return 0;
    const int cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] == 1 || m[i][c] == -1) {
                piv = i;
                break;
            }
        if (piv < 0) {
            for (int i = r; i < rows; ++i)
                if (m[i][c] != 0)
                    throw std::logic_error("int_rank: no unit pivot in incidence matrix");
            continue;
        }
        std::swap(m[r], m[piv]);
        if (m[r][c] == -1)
            for (auto& x : m[r]) x = -x;
        for (int i = r + 1; i < rows; ++i)
            if (m[i][c] != 0) {
                const int f = m[i][c];
                for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            }
        ++r;
    }
    return r;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x)
    {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

} // namespace

const Subcomplex& Cover::overlap(const std::vector<int>& key) const
{
    auto it = overlaps.find(key);
    if (it == overlaps.end())
        throw config_error("cover: requested overlap is empty or not stored");
    return it->second;
}

std::map<int, int> components(const dec::Triangulation& base, const Subcomplex& s)
{
    std::map<int, int> local;
    for (int v : s.verts) local[v] = (int)local.size();
    UnionFind uf((int)local.size());
    for (int e : s.edges) uf.unite(local[base.edges[e][0]], local[base.edges[e][1]]);
    std::map<int, int> comp;
    std::map<int, int> seen;
    for (int v : s.verts) {
        const int root = uf.find(local[v]);
        auto it = seen.find(root);
        if (it == seen.end()) it = seen.insert({root, (int)seen.size()}).first;
        comp[v] = it->second;
    }
    return comp;
}

int betti1(const dec::Triangulation& base, const Subcomplex& s)
{
    std::map<int, int> vcol, ecol;
    for (int v : s.verts) vcol[v] = (int)vcol.size();
    for (int e : s.edges) ecol[e] = (int)ecol.size();

    std::vector<std::vector<int>> d1(s.edges.size(), std::vector<int>(s.verts.size(), 0));
    for (size_t i = 0; i < s.edges.size(); ++i) {
        d1[i][vcol[base.edges[s.edges[i]][0]]] = -1;
        d1[i][vcol[base.edges[s.edges[i]][1]]] = 1;
    }
    std::vector<std::vector<int>> d2(s.faces.size(), std::vector<int>(s.edges.size(), 0));
    for (size_t i = 0; i < s.faces.size(); ++i)
        for (const auto& [e, sgn] : base.face_edges(s.faces[i])) d2[i][ecol[e]] = sgn;

    return (int)s.edges.size() - int_rank(std::move(d1)) - int_rank(std::move(d2));
}

std::shared_ptr<const Cover> build_cover(dec::Triangulation base,
                                         std::vector<std::vector<int>> chart_verts)
{
    auto cov = std::make_shared<Cover>();
    cov->base = std::move(base);
    const auto& t = cov->base;
    const int n = (int)chart_verts.size();
    if (n == 0) throw config_error("build_cover: no charts");

    for (auto& ch : chart_verts) {
        std::sort(ch.begin(), ch.end());
        ch.erase(std::unique(ch.begin(), ch.end()), ch.end());
        if (ch.empty()) throw config_error("build_cover: empty chart");
        if (ch.front() < 0 || ch.back() >= t.n_vertices)
            throw config_error("build_cover: chart vertex out of range");
    }
    cov->charts = std::move(chart_verts);

    cov->vert_in.assign(n, std::vector<char>(t.n_vertices, 0));
    cov->edge_in.assign(n, std::vector<char>(t.edges.size(), 0));
    cov->face_in.assign(n, std::vector<char>(t.faces.size(), 0));
    for (int l = 0; l < n; ++l) {
        for (int v : cov->charts[l]) cov->vert_in[l][v] = 1;
        for (size_t e = 0; e < t.edges.size(); ++e)
            cov->edge_in[l][e] =
                cov->vert_in[l][t.edges[e][0]] && cov->vert_in[l][t.edges[e][1]];
        for (size_t f = 0; f < t.faces.size(); ++f)
            cov->face_in[l][f] = cov->vert_in[l][t.faces[f][0]] &&
                                 cov->vert_in[l][t.faces[f][1]] &&
                                 cov->vert_in[l][t.faces[f][2]];
    }

    // union must cover every cell
    auto covered = [&](const auto& masks, size_t cell) {
        for (int l = 0; l < n; ++l)
            if (masks[l][cell]) return true;
        return false;
    };
    for (int v = 0; v < t.n_vertices; ++v)
        if (!covered(cov->vert_in, v)) throw config_error("build_cover: uncovered vertex");
    for (size_t e = 0; e < t.edges.size(); ++e)
        if (!covered(cov->edge_in, e)) throw config_error("build_cover: uncovered edge");
    for (size_t f = 0; f < t.faces.size(); ++f)
        if (!covered(cov->face_in, f)) throw config_error("build_cover: uncovered face");

    // nonempty overlaps, tuple sizes 1..4
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (!cur.empty()) tuples.push_back(cur);
        if ((int)cur.size() == 4) return;
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);

    for (const auto& tup : tuples) {
        Subcomplex s;
        for (int v = 0; v < t.n_vertices; ++v) {
            bool all = true;
            for (int l : tup) all = all && cov->vert_in[l][v];
            if (all) s.verts.push_back(v);
        }
        if (s.verts.empty()) continue;
        for (size_t e = 0; e < t.edges.size(); ++e) {
            bool all = true;
            for (int l : tup) all = all && cov->edge_in[l][e];
            if (all) s.edges.push_back((int)e);
        }
        for (size_t f = 0; f < t.faces.size(); ++f) {
            bool all = true;
            for (int l : tup) all = all && cov->face_in[l][f];
            if (all) s.faces.push_back((int)f);
        }
        cov->overlaps.emplace(tup, std::move(s));
    }

    // charts themselves must be connected
    for (int l = 0; l < n; ++l) {
        const auto& s = cov->overlaps.at({l});
        std::map<int, int> comp = components(t, s);
        int ncomp = 0;
        for (const auto& [v, c] : comp) ncomp = std::max(ncomp, c + 1);
        if (ncomp != 1) throw config_error("build_cover: disconnected chart");
    }

    // good-cover flag: every overlap connected with betti1 = 0
    cov->good = true;
    for (const auto& [tup, s] : cov->overlaps) {
        std::map<int, int> comp = components(t, s);
        int ncomp = 0;
        for (const auto& [v, c] : comp) ncomp = std::max(ncomp, c + 1);
        std::string tag;
        for (int l : tup) tag += (tag.empty() ? "" : ",") + std::to_string(l);
        if (ncomp != 1) {
            cov->good = false;
            cov->warnings.push_back("overlap {" + tag + "} has " + std::to_string(ncomp) +
                                    " components");
            continue;
        }
        if (betti1(t, s) != 0) {
            cov->good = false;
            cov->warnings.push_back("overlap {" + tag + "} has nontrivial first cohomology");
        }
    }
    return cov;
}

} // namespace cdel::deligne
