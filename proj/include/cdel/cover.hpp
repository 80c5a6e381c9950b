#pragma once

#include "cdel/dec.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

// Indexed covers of a triangulated base by full subcomplexes, with all
// nonempty overlap subcomplexes up to 4-fold precomputed.

namespace cdel::deligne {

struct Subcomplex {
    std::vector<int> verts, edges, faces; // ascending cell ids
};

struct Cover {
    dec::Triangulation base;
    std::vector<std::vector<int>> charts; // vertex ids per chart, ascending

    // key: ascending chart-index tuple of size 1..4; only nonempty overlaps
    std::map<std::vector<int>, Subcomplex> overlaps;

    bool good = false; // every overlap connected with trivial first cohomology
    std::vector<std::string> warnings;

    // optional clutching data: a cycle inside U_l n U_k oriented as the
    // boundary of the l-side region, enabling exact class extraction on
    // two-chart covers whose overlap is an annulus
    struct ClutchCycle {
        int l = 0, k = 0;
        std::vector<int> path; // closed vertex cycle
    };
    std::vector<ClutchCycle> clutch_cycles;

    // membership masks, indexed [chart][cell id]
    std::vector<std::vector<char>> vert_in, edge_in, face_in;

    int n_charts() const { return (int)charts.size(); }
    bool has_overlap(const std::vector<int>& key) const
    {
        return overlaps.count(key) != 0;
    }
    const Subcomplex& overlap(const std::vector<int>& key) const;
};

std::shared_ptr<const Cover> build_cover(dec::Triangulation base,
                                         std::vector<std::vector<int>> chart_verts);

// first simplicial Betti number of a subcomplex: E - rank d1 - rank d2,
// exact integer elimination
int betti1(const dec::Triangulation& base, const Subcomplex& s);
// connected components of a subcomplex (vertex -> component id, compacted)
std::map<int, int> components(const dec::Triangulation& base, const Subcomplex& s);

} // namespace cdel::deligne
