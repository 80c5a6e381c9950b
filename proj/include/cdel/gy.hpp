#pragma once

#include <functional>

// Initial-value determinants for -y'' + q(x) y on an interval.  The boundary
// problem's determinant equals twice the right boundary functional applied to
// the solution launched with the left boundary data; propagation is carried in
// log scale so exponentially growing solutions stay representable.
namespace cdel::gy {

struct BC {
    enum class Type { dirichlet, neumann, robin };
    Type type = Type::dirichlet;
    double beta = 0.0; // robin: y'(0) = beta y(0) on the left, y'(L) + beta y(L) = 0 on the right

    static BC dirichlet() { return {Type::dirichlet, 0.0}; }
    static BC neumann() { return {Type::neumann, 0.0}; }
    static BC robin(double beta) { return {Type::robin, beta}; }
};

// (y, y') scaled by exp(logscale)
struct State {
    double y = 0.0;
    double dy = 0.0;
    double logscale = 0.0;
};

// left boundary data the determinant solution is launched with
State launch(BC left);

// right boundary functional applied to a state; exp(logscale) is not folded in
double boundary_functional(const State& s, BC right);

// advance y'' = q(x) y across [a, b] with adaptive step-doubled RK4
void propagate(State& s, const std::function<double(double)>& q, double a, double b);

// exact step across a stretch where q is constant
void propagate_const(State& s, double q, double len);

struct LogDet {
    double log_abs;
    int sign;
    double value() const;
};

// determinant of -y'' + q on [0, L] with separated boundary conditions
LogDet log_det(const std::function<double(double)>& q, double L, BC left, BC right);
double det(const std::function<double(double)>& q, double L, BC left, BC right);

// determinant of -y'' + q on a circle of length L: tr M(L) - 2
double circle_det(const std::function<double(double)>& q, double L);

} // namespace cdel::gy
