#include "cdel/gy.hpp"
#include "cdel/errors.hpp"

#include <cmath>
#include <limits>

namespace cdel::gy {

namespace {

// one RK4 step for u = (y, y'), u' = (y', q y)
void rk4_step(double& y, double& dy, const std::function<double(double)>& q, double x,
              double h)
{
    auto f = [&](double xx, double yy, double dd, double& ky, double& kd) {
        ky = dd;
        kd = q(xx) * yy;
    };
    double k1y, k1d, k2y, k2d, k3y, k3d, k4y, k4d;
    f(x, y, dy, k1y, k1d);
    f(x + h / 2, y + h / 2 * k1y, dy + h / 2 * k1d, k2y, k2d);
    f(x + h / 2, y + h / 2 * k2y, dy + h / 2 * k2d, k3y, k3d);
    f(x + h, y + h * k3y, dy + h * k3d, k4y, k4d);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    dy += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
}

void renormalize(State& s)
{
    const double m = std::max(std::abs(s.y), std::abs(s.dy));
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
        s.y /= m;
        s.dy /= m;
        s.logscale += std::log(m);
    }
}

} // namespace

void propagate(State& s, const std::function<double(double)>& q, double a, double b)
{
    if (b <= a) return;
    double x = a;
    double h = (b - a) / 64.0;
    const double tol = 1e-12;
    int guard = 0;
    while (x < b) {
        if (++guard > 2000000) throw config_error("propagate: step count exploded");
        if (x + h > b) h = b - x;
        double y1 = s.y, d1 = s.dy;
        rk4_step(y1, d1, q, x, h);
        double y2 = s.y, d2 = s.dy;
        rk4_step(y2, d2, q, x, h / 2);
        rk4_step(y2, d2, q, x + h / 2, h / 2);
        const double scale = std::abs(y2) + std::abs(d2) + 1e-30;
        const double err = (std::abs(y1 - y2) + std::abs(d1 - d2)) / scale;
        if (err < tol || h < 1e-12 * (b - a)) {
            s.y = y2 + (y2 - y1) / 15.0;
            s.dy = d2 + (d2 - d1) / 15.0;
            x += h;
            renormalize(s);
            if (err < tol / 32.0) h *= 2.0;
        } else {
            h /= 2.0;
        }
    }
}

void propagate_const(State& s, double q, double len)
{
    if (len <= 0.0) return;
    double c, sl; // cosh(k len), sinh(k len)/k with k^2 = q
    double kq = 0.0;
    if (q > 0.0) {
        const double k = std::sqrt(q);
        const double kl = k * len;
        // pull the growing exponential into the log scale
        if (kl > 30.0) {
            const double em = std::exp(-2.0 * kl);
            s.logscale += kl - std::log(2.0);
            c = 1.0 + em;
            sl = (1.0 - em) / k;
            kq = q;
            const double ny = c * s.y + sl * s.dy;
            const double nd = kq * sl * s.y + c * s.dy;
            s.y = ny;
            s.dy = nd;
            renormalize(s);
            return;
        }
        c = std::cosh(kl);
        sl = std::sinh(kl) / k;
        kq = q;
    } else if (q < 0.0) {
        const double k = std::sqrt(-q);
        c = std::cos(k * len);
        sl = std::sin(k * len) / k;
        kq = q;
    } else {
        c = 1.0;
        sl = len;
        kq = 0.0;
    }
    const double ny = c * s.y + sl * s.dy;
    const double nd = kq * sl * s.y + c * s.dy;
    s.y = ny;
    s.dy = nd;
    renormalize(s);
}

double LogDet::value() const { return sign * std::exp(log_abs); }

State launch(BC left)
{
    switch (left.type) {
    case BC::Type::dirichlet: return {0.0, 1.0, 0.0};
    case BC::Type::neumann: return {1.0, 0.0, 0.0};
    default: return {1.0, left.beta, 0.0};
    }
}

double boundary_functional(const State& s, BC right)
{
    switch (right.type) {
    case BC::Type::dirichlet: return s.y;
    case BC::Type::neumann: return s.dy;
    default: return s.dy + right.beta * s.y;
    }
}

LogDet log_det(const std::function<double(double)>& q, double L, BC left, BC right)
{
    State s = launch(left);
    propagate(s, q, 0.0, L);
    const double b = boundary_functional(s, right);
    LogDet out{};
    if (b == 0.0) {
        out.log_abs = -std::numeric_limits<double>::infinity();
        out.sign = 0;
        return out;
    }
    out.log_abs = std::log(2.0) + std::log(std::abs(b)) + s.logscale;
    out.sign = b > 0.0 ? 1 : -1;
    return out;
}

double det(const std::function<double(double)>& q, double L, BC left, BC right)
{
    const LogDet d = log_det(q, L, left, right);
    return d.value();
}

double circle_det(const std::function<double(double)>& q, double L)
{
    State a{1.0, 0.0, 0.0}, b{0.0, 1.0, 0.0};
    propagate(a, q, 0.0, L);
    propagate(b, q, 0.0, L);
    return a.y * std::exp(a.logscale) + b.dy * std::exp(b.logscale) - 2.0;
}

} // namespace cdel::gy
