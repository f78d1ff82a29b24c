#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "maya/young.hpp"

namespace maya::shape {

// ---------------------------------------------------------------------------
// VKLS closed forms

inline double omega(double x) {
    double s2 = std::numbers::sqrt2;
    if (std::abs(x) >= s2) return std::abs(x);
    double pi = std::numbers::pi;
    return (2.0 / pi) * (std::sqrt(2.0 - x * x) + x * std::asin(x / s2));
}

inline double omega_tx(double t, double x) {
    if (t < 0) throw std::domain_error("omega_tx: need t >= 0");
    if (t == 0) return std::abs(x);
    double s = std::sqrt(t);
    return s * omega(x / s);
}

inline double A0(double xi) {
    if (std::abs(xi) >= 1) throw std::domain_error("A0: need |xi| < 1");
    return std::log(std::cos(std::numbers::pi * xi / 2));
}

inline double A0_prime(double xi) {
    double pi = std::numbers::pi;
    return -(pi / 2) * std::tan(pi * xi / 2);
}

inline double A0_second(double xi) {
    double pi = std::numbers::pi;
    double c = std::cos(pi * xi / 2);
    return -(pi * pi / 4) / (c * c);
}

inline double constant_C() { return -std::log(std::numbers::pi / std::numbers::sqrt2); }

// ---------------------------------------------------------------------------
// Discrete shape surfaces g(t, x)

enum class AreaTag { area1, area2, unrescaled };

struct ShapeFunction {
    std::vector<double> t_grid, x_grid;
    std::vector<std::vector<double>> values;  // [it][ix]
    AreaTag tag = AreaTag::area1;
    double cells = 1.0;  // n for the unrescaled normalization

    size_t nt() const { return t_grid.size(); }
    size_t nx() const { return x_grid.size(); }
    double at(size_t it, size_t ix) const { return values[it][ix]; }
};

inline ShapeFunction sample_shape(const std::function<double(double, double)>& f,
                                  std::vector<double> t_grid, std::vector<double> x_grid,
                                  AreaTag tag = AreaTag::area1, double cells = 1.0) {
    ShapeFunction g;
    g.t_grid = std::move(t_grid);
    g.x_grid = std::move(x_grid);
    g.tag = tag;
    g.cells = cells;
    g.values.resize(g.nt(), std::vector<double>(g.nx()));
    for (size_t it = 0; it < g.nt(); ++it)
        for (size_t ix = 0; ix < g.nx(); ++ix)
            g.values[it][ix] = f(g.t_grid[it], g.x_grid[ix]);
    return g;
}

inline std::vector<double> uniform_grid(double a, double b, size_t n) {
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

// quadratically graded in t (absorbs the log singularity of the VKLS
// integrand at t = 0)
inline ShapeFunction vkls_shape(size_t nt, size_t nx, double t_max = 1.0, double x_max = 1.45) {
    std::vector<double> tg(nt);
    for (size_t i = 0; i < nt; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(nt - 1);
        tg[i] = t_max * u * u;
    }
    return sample_shape([](double t, double x) { return omega_tx(t, x); }, std::move(tg),
                        uniform_grid(-x_max, x_max, nx));
}

inline void validate_shape(const ShapeFunction& g, double tol = 1e-6) {
    if (g.nt() < 2 || g.nx() < 2) throw std::invalid_argument("ShapeFunction: grid too small");
    for (size_t it = 0; it < g.nt(); ++it)
        for (size_t ix = 0; ix + 1 < g.nx(); ++ix) {
            double dx = g.x_grid[ix + 1] - g.x_grid[ix];
            if (std::abs(g.values[it][ix + 1] - g.values[it][ix]) > dx + tol)
                throw std::invalid_argument("ShapeFunction: not 1-Lipschitz in x at t=" +
                                            std::to_string(g.t_grid[it]) +
                                            ", x=" + std::to_string(g.x_grid[ix]));
        }
    for (size_t it = 0; it + 1 < g.nt(); ++it)
        for (size_t ix = 0; ix < g.nx(); ++ix)
            if (g.values[it + 1][ix] < g.values[it][ix] - tol)
                throw std::invalid_argument("ShapeFunction: decreasing in t at t=" +
                                            std::to_string(g.t_grid[it]) +
                                            ", x=" + std::to_string(g.x_grid[ix]));
}

struct FunctionalValue {
    double value = 0;       // the common area-1 normalization L[g]
    double native = 0;      // the tag's own functional value
    double swept_area = 0;  // integral of g'_t over the grid
};

// Cell-midpoint quadrature of the shape functional. The frozen-boundary
// integrand g'_t log cos(pi g'_x / 2) tends to 0, so cells with g'_t below
// threshold are skipped and |g'_x| is clamped just inside 1.
template <class AFunc>
FunctionalValue functional_with(const ShapeFunction& g, AFunc&& A, double lipschitz_tol = 1e-6) {
    validate_shape(g, lipschitz_tol);
    double pi = std::numbers::pi;
    const double gt_floor = 1e-12, gx_clamp = 1.0 - 1e-9;
    double integral_area1 = 0, integral_scaled = 0, swept = 0;
    for (size_t it = 0; it + 1 < g.nt(); ++it) {
        double dt = g.t_grid[it + 1] - g.t_grid[it];
        for (size_t ix = 0; ix + 1 < g.nx(); ++ix) {
            double dx = g.x_grid[ix + 1] - g.x_grid[ix];
            double gt = (g.values[it + 1][ix] + g.values[it + 1][ix + 1] - g.values[it][ix] -
                         g.values[it][ix + 1]) /
                        (2 * dt);
            double gx = (g.values[it][ix + 1] + g.values[it + 1][ix + 1] - g.values[it][ix] -
                         g.values[it + 1][ix]) /
                        (2 * dx);
            if (gt <= gt_floor) continue;
            gx = std::max(-gx_clamp, std::min(gx_clamp, gx));
            double w = dt * dx;
            swept += gt * w;
            integral_area1 += gt * (-std::log(gt) + A(gx)) * w;
            integral_scaled += gt * (-std::log(pi * gt / 2) + A(gx)) * w;
        }
    }
    FunctionalValue out;
    out.swept_area = swept;
    switch (g.tag) {
        case AreaTag::area1:
            out.native = integral_area1 + constant_C();
            out.value = out.native;
            break;
        case AreaTag::area2:
            out.native = 0.5 * integral_scaled;
            out.value = out.native;
            break;
        case AreaTag::unrescaled: {
            double n = g.cells;
            out.native = 0.5 * integral_scaled;
            out.value = (out.native - 0.5 * n * std::log(n)) / n;
            break;
        }
    }
    return out;
}

inline FunctionalValue functional_L(const ShapeFunction& g, double lipschitz_tol = 1e-6) {
    return functional_with(g, [](double xi) { return A0(xi); }, lipschitz_tol);
}

// ---------------------------------------------------------------------------
// Euler-Lagrange residual A''(g_x) g_xx g_t^2 + 2 A'(g_x) g_xt g_t - g_tt
// via second-order central differences on a 3x3 patch.

inline double el_residual_patch(const double v[3][3], double ht, double hx) {
    double gt = (v[2][1] - v[0][1]) / (2 * ht);
    double gx = (v[1][2] - v[1][0]) / (2 * hx);
    double gtt = (v[2][1] - 2 * v[1][1] + v[0][1]) / (ht * ht);
    double gxx = (v[1][2] - 2 * v[1][1] + v[1][0]) / (hx * hx);
    double gxt = (v[2][2] - v[2][0] - v[0][2] + v[0][0]) / (4 * ht * hx);
    return A0_second(gx) * gxx * gt * gt + 2 * A0_prime(gx) * gxt * gt - gtt;
}

inline double el_residual(const ShapeFunction& g, size_t it, size_t ix) {
    if (it == 0 || ix == 0 || it + 1 >= g.nt() || ix + 1 >= g.nx())
        throw std::out_of_range("el_residual: stencil out of bounds");
    double ht0 = g.t_grid[it] - g.t_grid[it - 1];
    double ht1 = g.t_grid[it + 1] - g.t_grid[it];
    double hx0 = g.x_grid[ix] - g.x_grid[ix - 1];
    double hx1 = g.x_grid[ix + 1] - g.x_grid[ix];
    if (std::abs(ht0 - ht1) > 1e-12 * (ht0 + ht1) || std::abs(hx0 - hx1) > 1e-12 * (hx0 + hx1))
        throw std::invalid_argument("el_residual: stencil needs locally uniform spacing");
    double v[3][3];
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            v[a + 1][b + 1] = g.values[static_cast<size_t>(static_cast<long long>(it) + a)]
                                      [static_cast<size_t>(static_cast<long long>(ix) + b)];
    return el_residual_patch(v, ht1, hx1);
}

inline double el_residual_vkls(double t, double x, double h) {
    double v[3][3];
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) v[a + 1][b + 1] = omega_tx(t + a * h, x + b * h);
    return el_residual_patch(v, h, h);
}

// ---------------------------------------------------------------------------
// Tableau paths to shape surfaces

// Rotated boundary profile of a partition with unit-area cells: slope -1 over
// a stone, +1 over a hole, |x| far away. Maya coordinates carry cells of area
// 2, hence the sqrt2 rescale.
inline double profile(const young::Partition& p, double x) {
    double u = x * std::numbers::sqrt2;  // area-2 coordinate
    long long lo = -static_cast<long long>(p.rows());
    long long hi = p.empty() ? 0 : p.parts[0];
    if (u <= lo || u >= hi) return std::abs(x);
    young::MayaWord w = young::maya_encode(p, lo, hi);
    // f2 at the left window edge equals |lo|; integrate slopes rightward
    double f2 = std::abs(static_cast<double>(lo));
    double pos = static_cast<double>(lo);
    for (size_t i = 0; i < w.stones.size(); ++i) {
        double slope = w.stones[i] ? -1.0 : 1.0;
        double next = pos + 1.0;
        if (u <= next) {
            f2 += slope * (u - pos);
            return f2 / std::numbers::sqrt2;
        }
        f2 += slope;
        pos = next;
    }
    return std::abs(x);
}

inline ShapeFunction path_to_shape(const young::PathTableau& tab, size_t nx = 601,
                                   double x_max = 1.6) {
    size_t n = tab.order.size();
    if (n == 0) throw std::invalid_argument("path_to_shape: empty tableau");
    if (!tab.shape.inner.empty())
        throw std::invalid_argument("path_to_shape: straight shapes only (inner must be empty)");
    double scale = std::sqrt(static_cast<double>(n));
    ShapeFunction g;
    g.tag = AreaTag::area1;
    g.cells = static_cast<double>(n);
    g.t_grid = uniform_grid(0.0, 1.0, n + 1);
    g.x_grid = uniform_grid(-x_max, x_max, nx);
    g.values.resize(n + 1, std::vector<double>(nx));
    young::Partition cur;
    for (size_t j = 0; j <= n; ++j) {
        if (j > 0) cur = young::add_cell(cur, static_cast<size_t>(tab.order[j - 1].row));
        for (size_t ix = 0; ix < nx; ++ix)
            g.values[j][ix] = profile(cur, g.x_grid[ix] * scale) / scale;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Serialization

inline void shape_to_csv(const ShapeFunction& g, std::ostream& os) {
    os << "t,x,g\n";
    for (size_t it = 0; it < g.nt(); ++it)
        for (size_t ix = 0; ix < g.nx(); ++ix)
            os << g.t_grid[it] << ',' << g.x_grid[ix] << ',' << g.values[it][ix] << '\n';
}

}  // namespace maya::shape
