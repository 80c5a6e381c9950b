#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

// Simplicial base complexes and the discrete exterior calculus on them.
// Cochains are plain vectors indexed by the stored cell order; a 1-cochain
// value on edge {i, j} (stored with i < j) is the integral along i -> j.

namespace cdel::dec {

struct Triangulation {
    std::string kind;  // "circle", "torus", "sphere"
    int resolution = 0;
    int dimension = 0; // 1 or 2
    int n_vertices = 0;
    std::vector<std::array<int, 2>> edges; // sorted pairs, lexicographic order
    std::vector<std::array<int, 3>> faces; // oriented vertex triples
    std::map<std::pair<int, int>, int> edge_index;

    // metadata, not serialized: embedding positions and generator loops
    std::vector<std::array<double, 3>> positions;
    std::vector<std::vector<int>> generator_cycles; // closed vertex paths

    int edge_id(int u, int v) const; // throws if {u,v} is not an edge
    // boundary of face f as (edge id, sign) triples following its orientation
    std::array<std::pair<int, int>, 3> face_edges(int f) const;
};

// kind in {"circle", "torus", "sphere"}, resolution >= 3 (circle: vertex
// count; torus: grid size; sphere: geodesic frequency).
Triangulation build_triangulation(const std::string& kind, int resolution);

// exterior derivative, vertex functions to edge cochains
std::vector<double> d0(const Triangulation& t, const std::vector<double>& f);
std::vector<long long> d0(const Triangulation& t, const std::vector<long long>& f);
// exterior derivative, edge cochains to face cochains
std::vector<double> d1(const Triangulation& t, const std::vector<double>& a);
std::vector<long long> d1(const Triangulation& t, const std::vector<long long>& a);

// signed value of a 1-cochain along the directed edge u -> v
double eval_dir(const Triangulation& t, const std::vector<double>& a, int u, int v);

// integral of a 1-cochain along a closed vertex path (consecutive entries and
// the wrap-around pair must be edges)
double integrate_cycle(const Triangulation& t, const std::vector<double>& a,
                       const std::vector<int>& path);
long long integrate_cycle(const Triangulation& t, const std::vector<long long>& a,
                          const std::vector<int>& path);

// signed sum of a 2-cochain over all stored faces
double integrate_all_faces(const Triangulation& t, const std::vector<double>& w);

// every edge shared by exactly two faces with opposite induced orientations
bool is_closed_oriented_surface(const Triangulation& t);

} // namespace cdel::dec
