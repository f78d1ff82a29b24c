#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace maya::num {

// Adaptive Gauss-Kronrod 15(7) quadrature for complex-valued integrands on a
// real interval.
namespace detail {

inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GKResult {
    std::complex<double> value;
    double error;
};

template <class F>
GKResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> kron = 0.0, gauss = 0.0;
    std::complex<double> fc = f(c);
    kron += gk_weights[7] * fc;
    gauss += g7_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        std::complex<double> f1 = f(c - h * gk_nodes[i]);
        std::complex<double> f2 = f(c + h * gk_nodes[i]);
        kron += gk_weights[i] * (f1 + f2);
        if (i % 2 == 1) gauss += g7_weights[i / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

template <class F>
std::complex<double> gk_adaptive(const F& f, double a, double b, double abs_tol,
                                 double rel_tol, int depth) {
    GKResult r = gk15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(r.value));
    if (r.error <= tol) return r.value;
    if (depth <= 0)
        throw std::runtime_error("quadrature: no convergence, estimate " +
                                 std::to_string(r.value.real()) + "+" +
                                 std::to_string(r.value.imag()) + "i, error " +
                                 std::to_string(r.error));
    double c = 0.5 * (a + b);
    return gk_adaptive(f, a, c, 0.5 * abs_tol, rel_tol, depth - 1) +
           gk_adaptive(f, c, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

}  // namespace detail

template <class F>
std::complex<double> integrate(const F& f, double a, double b,
                               double rel_tol = 1e-9, double abs_tol = 1e-13) {
    if (a == b) return 0.0;
    return detail::gk_adaptive(f, a, b, abs_tol, rel_tol, 48);
}

}  // namespace maya::num
