#pragma once

#include "cdel/cover.hpp"

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

// Cech cochain algebra on a covered base: degree-1 and degree-2 cocycles
// (line bundles and gerbes with connective data), sections, curvature,
// classes, holonomy, refinement.
//
// Conventions, fixed once and used everywhere:
//   (delta w)_{lk} = w_k - w_l for forms, (delta u)_{lk} = u_k / u_l for
//   phases, extended by alternating signs in higher Cech degree.  Phases are
//   stored as angles in turns (mod 1) plus an integer winding per edge; the
//   lifted log increment along a stored edge u < v is
//   wrap(angle_v - angle_u) + winding, in turns, with wrap to [-1/2, 1/2).
//   Degree-1 closedness: (c01_k - c01_l)(e) + lift(c10_lk, e) = 0.

namespace cdel::deligne {

using cplx = std::complex<double>;
using Form = std::vector<double>; // full-base-length cell values

struct Phase {
    std::vector<double> angle;   // per vertex, turns in [0, 1)
    std::vector<long long> wind; // per edge
};

// angles only, no winding record (sections of line bundles)
using VertexPhase = std::vector<double>;

double wrap_pm(double x);                       // x - round(x)
double lift_increment(const dec::Triangulation& t, const Phase& p, int edge);
// sum_i coeff_i * phase_i with windings combined so lifted increments add
Phase phase_combine(const dec::Triangulation& t,
                    const std::vector<std::pair<const Phase*, int>>& terms);

struct Deligne1 {
    std::shared_ptr<const Cover> cov;
    std::vector<Form> c01;                   // per chart, edge forms
    std::map<std::pair<int, int>, Phase> c10; // sorted pairs l < k

    // access with antisymmetry applied: angle of c10_{lk} at v, lifted
    // increment of c10_{lk} along edge e
    double pair_angle(int l, int k, int v) const;
    double pair_lift(int l, int k, int e) const;
    long long pair_wind(int l, int k, int e) const;
};

struct Deligne2 {
    std::shared_ptr<const Cover> cov;
    std::vector<Form> c02;                        // per chart, face forms
    std::map<std::pair<int, int>, Form> c11;      // sorted pairs, edge forms
    std::map<std::tuple<int, int, int>, Phase> c20; // sorted triples

    double pair_form(int l, int k, int e) const; // c11 with antisymmetry
    double triple_angle(int i, int j, int k, int v) const;
    double triple_lift(int i, int j, int k, int e) const;
};

struct Section1 {
    std::vector<VertexPhase> u; // per chart, vertex angles
};

struct GerbeSection {
    std::vector<Form> b01;                    // per chart, edge forms
    std::map<std::pair<int, int>, Phase> b10; // sorted pairs

    double pair_angle(int l, int k, int v) const;
};

struct LineSection {
    std::vector<std::vector<cplx>> phi; // per chart, vertex values
};

struct Report {
    bool pass = true;
    std::map<std::string, double> residuals; // condition -> max residual
    std::vector<std::string> failures;       // failing cells, first few

    void note(const std::string& cond, double r, double tol, const std::string& cell);
};

// ---- Cech differential (public building block) ----
// keys are ascending chart tuples of size p+1; result on size p+2 tuples
std::map<std::vector<int>, Form>
cech_delta_forms(const Cover& cov, const std::map<std::vector<int>, Form>& cochain,
                 int cell_dim);
std::map<std::vector<int>, std::vector<double>>
cech_delta_angles(const Cover& cov,
                  const std::map<std::vector<int>, std::vector<double>>& cochain);

// ---- validation ----
Report validate_cocycle(const Deligne1& c, double tol);
Report validate_cocycle(const Deligne2& c, double tol);
Report validate_section(const Deligne1& c, const Section1& u, double tol);
Report validate_section(const Deligne2& c, const GerbeSection& b, double tol);

// ---- algebra ----
Deligne1 tensor(const Deligne1& a, const Deligne1& b);
Deligne1 inverse(const Deligne1& a);
Deligne2 tensor(const Deligne2& a, const Deligne2& b);

// ---- curvature and class ----
struct ClassData {
    double curvature_integral = 0.0; // over all faces
    long long chern = 0;             // rounded integral
    double chern_residual = 0.0;
    bool refused = false; // non-good cover without clutching data
    std::map<std::vector<int>, long long> triple_integers;
    std::vector<long long> clutch_windings; // per stored clutch cycle
    std::vector<std::string> notes;
};
struct Curvature1 {
    Form R; // per face (empty on 1D bases)
    ClassData cls;
};
Curvature1 curvature_and_class(const Deligne1& c, double tol);

struct Class2Data {
    bool refused = false;
    std::map<std::vector<int>, long long> quad_integers;
    std::vector<std::string> notes;
};
Class2Data curvature_and_class(const Deligne2& c, double tol);

// ---- gerbe sections ----
Form grad_gerbe_section(const Deligne2& c, const GerbeSection& b, double tol);
Deligne1 section_difference(const Deligne2& c, const GerbeSection& b0,
                            const GerbeSection& b1);
struct PairingData {
    std::vector<cplx> holonomies; // over base generator cycles
    ClassData cls;
};
PairingData pairing(const Deligne2& c, const GerbeSection& b0, const GerbeSection& b1,
                    double tol);
Deligne2 apply_isomorphism(const Deligne2& c0, const GerbeSection& b);

// ---- holonomy, refinement, line sections ----
// loop: vertex cycle; chart[i] hosts edge (loop[i], loop[i+1])
cplx holonomy(const Deligne1& c, const std::vector<int>& loop,
              const std::vector<int>& chart);
// automatic chart assignment (lowest index hosting each edge)
cplx holonomy(const Deligne1& c, const std::vector<int>& loop);

Deligne1 refine(const Deligne1& c, std::shared_ptr<const Cover> fine,
                const std::vector<int>& r);

struct LineSectionResult {
    Report gluing;
    Form omega_re, omega_im;    // (1/2pi i) grad log phi, edge form
    std::vector<char> defined;  // per edge, false near zeros of phi
};
LineSectionResult line_section_ops(const Deligne1& c, const LineSection& phi, double tol);

} // namespace cdel::deligne
