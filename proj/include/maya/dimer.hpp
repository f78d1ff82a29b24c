#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maya/bigint.hpp"
#include "maya/matrix.hpp"
#include "maya/mtasep.hpp"
#include "maya/quadrature.hpp"
#include "maya/young.hpp"

namespace maya::dimer {

using mtasep::CircleState;
using num::BigInt;
using num::Matrix;
using num::Rational;
using std::complex;

enum class EdgeType { no_stone, stone_stays, jump };

// Hexagonal cylinder graph encoding maya evolution over M time steps.
// White (k,j) sits in the square {k,k+1} x {j,j+1} and connects to black
// (k,j), (k,j+1), (k+1,j+1); jump edges carry weight epsilon.
//
// Whites: levels 0..M-1 full circles, level M hanging at the empty holes of
// boundary_out. Blacks: levels 1..M full circles, level 0 pendant at the
// empty holes of boundary_in.
struct CylinderGraph {
    int L = 0, N = 0, M = 0;
    int M_minus = 0, M_plus = 0;
    CircleState boundary_in, boundary_out;

    struct Edge {
        int white, black;
        EdgeType type;
    };
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> white_kj, black_kj;     // id -> (k, level)
    std::vector<std::vector<int>> white_id_, black_id_;      // [level][k] -> id or -1

    int whites() const { return static_cast<int>(white_kj.size()); }
    int blacks() const { return static_cast<int>(black_kj.size()); }
    int white_id(int k, int j) const { return white_id_[static_cast<size_t>(j)][static_cast<size_t>(k)]; }
    int black_id(int k, int j) const { return black_id_[static_cast<size_t>(j)][static_cast<size_t>(k)]; }
};

inline CylinderGraph build_cylinder(int L, int N, int M_minus, int M_plus,
                                    const CircleState& in, const CircleState& out) {
    if (N <= 0 || N >= L) throw std::domain_error("build_cylinder: need 0 < N < L");
    if (M_plus <= M_minus) throw std::invalid_argument("build_cylinder: need M_plus > M_minus");
    if (in.L != L || out.L != L ||
        static_cast<int>(in.occupied.size()) != N || static_cast<int>(out.occupied.size()) != N)
        throw std::invalid_argument("build_cylinder: boundary states must have N stones in L holes");
    CylinderGraph g;
    g.L = L;
    g.N = N;
    g.M_minus = M_minus;
    g.M_plus = M_plus;
    g.M = M_plus - M_minus;
    g.boundary_in = in;
    g.boundary_out = out;
    std::vector<bool> in_filled(static_cast<size_t>(L), false), out_filled(in_filled);
    for (int k : in.occupied) in_filled[static_cast<size_t>(k)] = true;
    for (int k : out.occupied) out_filled[static_cast<size_t>(k)] = true;

    g.white_id_.assign(static_cast<size_t>(g.M) + 1, std::vector<int>(static_cast<size_t>(L), -1));
    g.black_id_.assign(static_cast<size_t>(g.M) + 1, std::vector<int>(static_cast<size_t>(L), -1));
    // display order: levels descending, positions ascending; this makes the
    // Kasteleyn matrix literally block bidiagonal [-U1 B; ... -E B; -U2^T]
    for (int j = g.M; j >= 0; --j)
        for (int k = 0; k < L; ++k) {
            if (j == g.M && out_filled[static_cast<size_t>(k)]) continue;
            g.white_id_[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                static_cast<int>(g.white_kj.size());
            g.white_kj.emplace_back(k, j);
        }
    for (int j = g.M; j >= 0; --j)
        for (int k = 0; k < L; ++k) {
            if (j == 0 && in_filled[static_cast<size_t>(k)]) continue;
            g.black_id_[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                static_cast<int>(g.black_kj.size());
            g.black_kj.emplace_back(k, j);
        }

    for (int j = 0; j <= g.M; ++j)
        for (int k = 0; k < L; ++k) {
            int w = g.white_id(k, j);
            if (w < 0) continue;
            int b_same = g.black_id(k, j);
            if (b_same >= 0) g.edges.push_back({w, b_same, EdgeType::no_stone});
            if (j < g.M) {
                g.edges.push_back({w, g.black_id(k, j + 1), EdgeType::stone_stays});
                g.edges.push_back({w, g.black_id((k + 1) % L, j + 1), EdgeType::jump});
            }
        }
    return g;
}

// ---------------------------------------------------------------------------
// Gauge factors

struct GaugeAssignment {
    std::string name;
    std::vector<complex<double>> alpha;       // per edge
    std::vector<std::optional<Rational>> alpha_exact;  // set when the gauge is rational
    bool is_rational = true;
};

enum class GaugeKind {
    uniform,  // per edge type: no_stone -1, stays +1, jump +1 (odd N) or omega = exp(i pi / L) (even N)
    seam,   // even N, rational: jump -1 on the seam L-1 -> 0, +1 elsewhere
};

inline GaugeAssignment make_gauge(const CylinderGraph& g, GaugeKind kind) {
    GaugeAssignment a;
    double pi = std::numbers::pi;
    complex<double> omega = std::exp(complex<double>(0, pi / g.L));
    bool even = g.N % 2 == 0;
    if (kind == GaugeKind::seam && !even)
        throw std::invalid_argument("make_gauge: seam gauge applies to even N only");
    a.name = kind == GaugeKind::uniform ? "uniform" : "seam";
    a.alpha.reserve(g.edges.size());
    a.alpha_exact.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        complex<double> v;
        std::optional<Rational> q;
        switch (e.type) {
            case EdgeType::no_stone: v = -1; q = Rational(-1); break;
            case EdgeType::stone_stays: v = 1; q = Rational(1); break;
            case EdgeType::jump:
                if (kind == GaugeKind::uniform) {
                    if (even) { v = omega; q.reset(); }
                    else { v = 1; q = Rational(1); }
                } else {
                    bool seam_edge = g.black_kj[static_cast<size_t>(e.black)].first == 0;
                    v = seam_edge ? -1 : 1;
                    q = Rational(seam_edge ? -1 : 1);
                }
                break;
        }
        a.alpha.push_back(v);
        a.alpha_exact.push_back(q);
        if (!q) a.is_rational = false;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Faces of the annulus embedding, for the Kasteleyn condition eq-style
// alternating product = (-1)^(k-1) on every 2k-gon (spur traversals included
// in the face length).

struct FaceReport {
    int half_length = 0;              // k in "2k-gon", spur doubles counted
    complex<double> ratio;
    bool ok = false;
    int witness_black = -1;           // a black vertex on the face
};

inline std::vector<FaceReport> trace_faces(const CylinderGraph& g,
                                           const GaugeAssignment& gauge) {
    int nw = g.whites(), nb = g.blacks();
    int nv = nw + nb;  // vertex ids: whites, then blacks shifted by nw
    struct Inc { int edge; double angle; };
    std::vector<std::vector<Inc>> inc(static_cast<size_t>(nv));
    auto angle_of = [&](bool from_white, const CylinderGraph::Edge& e) {
        auto [kw, jw] = g.white_kj[static_cast<size_t>(e.white)];
        auto [kb, jb] = g.black_kj[static_cast<size_t>(e.black)];
        // white center sits at (kw + 0.5, jw + 0.5) in (angle, radius) steps
        double dk = kb - (kw + 0.5);
        if (dk > g.L / 2.0) dk -= g.L;
        if (dk < -g.L / 2.0) dk += g.L;
        double dj = jb - (jw + 0.5);
        if (!from_white) { dk = -dk; dj = -dj; }
        return std::atan2(dj, dk);
    };
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& e = g.edges[ei];
        inc[static_cast<size_t>(e.white)].push_back({static_cast<int>(ei), angle_of(true, e)});
        inc[static_cast<size_t>(nw + e.black)].push_back({static_cast<int>(ei), angle_of(false, e)});
    }
    for (auto& v : inc)
        std::sort(v.begin(), v.end(), [](const Inc& a, const Inc& b) { return a.angle < b.angle; });

    auto other_end = [&](int edge, int v) {
        const auto& e = g.edges[static_cast<size_t>(edge)];
        return v == e.white ? nw + e.black : e.white;
    };
    // directed edge (v, edge index into inc[v]); face kept on the left by
    // turning clockwise at each arrival
    std::vector<std::vector<bool>> used(static_cast<size_t>(nv));
    for (int v = 0; v < nv; ++v) used[static_cast<size_t>(v)].assign(inc[static_cast<size_t>(v)].size(), false);

    std::vector<FaceReport> faces;
    for (int v0 = 0; v0 < nv; ++v0)
        for (size_t s0 = 0; s0 < inc[static_cast<size_t>(v0)].size(); ++s0) {
            if (used[static_cast<size_t>(v0)][s0]) continue;
            FaceReport f;
            f.ratio = 1;
            complex<double> num = 1, den = 1;
            int v = v0;
            size_t s = s0;
            int steps = 0;
            do {
                used[static_cast<size_t>(v)][s] = true;
                int eid = inc[static_cast<size_t>(v)][s].edge;
                bool black_to_white = v >= nw;
                if (black_to_white) num *= gauge.alpha[static_cast<size_t>(eid)];
                else den *= gauge.alpha[static_cast<size_t>(eid)];
                if (v >= nw && f.witness_black < 0) f.witness_black = v - nw;
                int u = other_end(eid, v);
                // find the reverse slot at u, then turn clockwise
                const auto& iu = inc[static_cast<size_t>(u)];
                size_t ru = 0;
                for (; ru < iu.size(); ++ru)
                    if (iu[ru].edge == eid) break;
                s = (ru + iu.size() - 1) % iu.size();
                v = u;
                ++steps;
                if (steps > 4 * static_cast<int>(g.edges.size()))
                    throw std::logic_error("trace_faces: runaway walk");
            } while (!(v == v0 && s == s0));
            f.half_length = steps / 2;
            f.ratio = num / den;
            double target = (f.half_length - 1) % 2 == 0 ? 1.0 : -1.0;
            f.ok = std::abs(f.ratio - target) < 1e-9;
            faces.push_back(f);
        }
    return faces;
}

inline void validate_gauge(const CylinderGraph& g, const GaugeAssignment& gauge) {
    auto faces = trace_faces(g, gauge);
    for (size_t i = 0; i < faces.size(); ++i)
        if (!faces[i].ok) {
            auto [k, j] = g.black_kj[static_cast<size_t>(faces[i].witness_black)];
            throw std::invalid_argument(
                "gauge '" + gauge.name + "' violates the face condition on the " +
                std::to_string(2 * faces[i].half_length) + "-gon at black (" +
                std::to_string(k) + "," + std::to_string(j) + ")");
        }
}

// ---------------------------------------------------------------------------
// Kasteleyn matrix: rows are blacks, columns whites, entry alpha * weight.

inline Matrix<complex<double>> build_kasteleyn_W(const CylinderGraph& g, double eps,
                                                 const GaugeAssignment& gauge) {
    if (eps <= 0) throw std::domain_error("build_kasteleyn_W: need eps > 0");
    validate_gauge(g, gauge);
    Matrix<complex<double>> W(static_cast<size_t>(g.blacks()), static_cast<size_t>(g.whites()));
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& e = g.edges[ei];
        double w = e.type == EdgeType::jump ? eps : 1.0;
        W(static_cast<size_t>(e.black), static_cast<size_t>(e.white)) =
            gauge.alpha[ei] * w;
    }
    return W;
}

inline Matrix<Rational> build_kasteleyn_W_exact(const CylinderGraph& g, const Rational& eps,
                                                const GaugeAssignment& gauge) {
    if (!gauge.is_rational)
        throw std::invalid_argument("build_kasteleyn_W_exact: gauge is not rational");
    validate_gauge(g, gauge);
    Matrix<Rational> W(static_cast<size_t>(g.blacks()), static_cast<size_t>(g.whites()));
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& e = g.edges[ei];
        Rational w = e.type == EdgeType::jump ? eps : Rational(1);
        W(static_cast<size_t>(e.black), static_cast<size_t>(e.white)) = *gauge.alpha_exact[ei] * w;
    }
    return W;
}

// ---------------------------------------------------------------------------
// Brute-force perfect matching enumeration with maya-evolution decoding.

struct Matching {
    std::vector<int> edge_of_white;  // edge id matched at each white
    int jumps = 0;
};

struct MatchingList {
    std::vector<Matching> matchings;
    std::vector<long long> count_by_jumps;  // Z = sum_n count[n] eps^n

    Rational partition_sum(const Rational& eps) const {
        Rational z(0);
        Rational p(1);
        for (size_t n = 0; n < count_by_jumps.size(); ++n) {
            z += Rational(BigInt(count_by_jumps[n])) * p;
            p *= eps;
        }
        return z;
    }
    double partition_sum(double eps) const {
        double z = 0, p = 1;
        for (long long c : count_by_jumps) {
            z += static_cast<double>(c) * p;
            p *= eps;
        }
        return z;
    }
};

inline MatchingList enumerate_matchings(const CylinderGraph& g, int vertex_cap = 40) {
    if (g.whites() + g.blacks() > vertex_cap)
        throw std::length_error("enumerate_matchings: vertex count exceeds cap");
    std::vector<std::vector<int>> white_edges(static_cast<size_t>(g.whites()));
    for (size_t ei = 0; ei < g.edges.size(); ++ei)
        white_edges[static_cast<size_t>(g.edges[ei].white)].push_back(static_cast<int>(ei));
    MatchingList out;
    std::vector<bool> black_used(static_cast<size_t>(g.blacks()), false);
    std::vector<int> choice(static_cast<size_t>(g.whites()), -1);
    auto rec = [&](auto&& self, int w, int jumps) -> void {
        if (w == g.whites()) {
            out.matchings.push_back({choice, jumps});
            if (static_cast<size_t>(jumps) >= out.count_by_jumps.size())
                out.count_by_jumps.resize(static_cast<size_t>(jumps) + 1, 0);
            out.count_by_jumps[static_cast<size_t>(jumps)]++;
            return;
        }
        for (int ei : white_edges[static_cast<size_t>(w)]) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            if (black_used[static_cast<size_t>(e.black)]) continue;
            black_used[static_cast<size_t>(e.black)] = true;
            choice[static_cast<size_t>(w)] = ei;
            self(self, w + 1, jumps + (e.type == EdgeType::jump ? 1 : 0));
            black_used[static_cast<size_t>(e.black)] = false;
        }
    };
    rec(rec, 0, 0);
    return out;
}

// occupancy rows o_0..o_M; o_0 = boundary_in, o_M = boundary_out
inline std::vector<std::vector<bool>> decode_matching(const CylinderGraph& g, const Matching& m) {
    std::vector<std::vector<bool>> occ(static_cast<size_t>(g.M) + 1,
                                       std::vector<bool>(static_cast<size_t>(g.L), false));
    for (int k : g.boundary_in.occupied) occ[0][static_cast<size_t>(k)] = true;
    for (int j = 0; j < g.M; ++j) {
        for (int k = 0; k < g.L; ++k) {
            int w = g.white_id(k, j);
            const auto& e = g.edges[static_cast<size_t>(m.edge_of_white[static_cast<size_t>(w)])];
            bool stone = occ[static_cast<size_t>(j)][static_cast<size_t>(k)];
            switch (e.type) {
                case EdgeType::no_stone:
                    if (stone) throw std::logic_error("decode_matching: no-stone edge at a stone");
                    break;
                case EdgeType::stone_stays:
                    if (!stone) throw std::logic_error("decode_matching: stays edge at a hole");
                    occ[static_cast<size_t>(j) + 1][static_cast<size_t>(k)] = true;
                    break;
                case EdgeType::jump: {
                    if (!stone) throw std::logic_error("decode_matching: jump edge at a hole");
                    int k2 = (k + 1) % g.L;
                    if (occ[static_cast<size_t>(j) + 1][static_cast<size_t>(k2)])
                        throw std::logic_error("decode_matching: jump lands on a stone");
                    occ[static_cast<size_t>(j) + 1][static_cast<size_t>(k2)] = true;
                    break;
                }
            }
        }
    }
    for (int k = 0; k < g.L; ++k) {
        bool want = std::find(g.boundary_out.occupied.begin(), g.boundary_out.occupied.end(), k) !=
                    g.boundary_out.occupied.end();
        if (occ[static_cast<size_t>(g.M)][static_cast<size_t>(k)] != want)
            throw std::logic_error("decode_matching: final row mismatches boundary_out");
    }
    return occ;
}

// ---------------------------------------------------------------------------
// Correlations from the inverse matrix (eq. kasteleyn1)

// P(edges e_1..e_r chosen) = prod alpha_i w_i * det( Winv_{w_j, b_i} )
inline double edge_correlation(const CylinderGraph& g, const GaugeAssignment& gauge, double eps,
                               const Matrix<complex<double>>& Winv, const std::vector<int>& edge_ids) {
    size_t r = edge_ids.size();
    complex<double> pref = 1;
    Matrix<complex<double>> minor(r, r);
    for (size_t i = 0; i < r; ++i) {
        const auto& ei = g.edges[static_cast<size_t>(edge_ids[i])];
        pref *= gauge.alpha[static_cast<size_t>(edge_ids[i])] *
                (ei.type == EdgeType::jump ? eps : 1.0);
        for (size_t j = 0; j < r; ++j) {
            const auto& ej = g.edges[static_cast<size_t>(edge_ids[j])];
            minor(j, i) = Winv(static_cast<size_t>(ej.white), static_cast<size_t>(ei.black));
        }
    }
    complex<double> v = pref * num::LU<complex<double>>(minor).det();
    if (std::abs(v.imag()) > 1e-9)
        throw std::runtime_error("edge_correlation: non-real probability");
    return v.real();
}

inline Rational edge_probability_exact(const CylinderGraph& g, const GaugeAssignment& gauge,
                                       const Rational& eps, const Matrix<Rational>& Winv,
                                       int edge_id) {
    const auto& e = g.edges[static_cast<size_t>(edge_id)];
    Rational w = e.type == EdgeType::jump ? eps : Rational(1);
    return *gauge.alpha_exact[static_cast<size_t>(edge_id)] * w *
           Winv(static_cast<size_t>(e.white), static_cast<size_t>(e.black));
}

// Tabulated translation-invariant kernel from the dense inverse:
// K(delta, d) = Winv(white(k0+d, j0-delta... ), black(k0, j0)) with
// delta = black level - white level and d = white pos - black pos.
struct FiniteKernel {
    int L = 0, N = 0;
    double eps = 0;
    int max_shift = 0;
    std::vector<std::vector<complex<double>>> values;  // [delta + max_shift][d mod L]

    const complex<double>& value(int delta, int d) const {
        int dd = ((d % L) + L) % L;
        return values[static_cast<size_t>(delta + max_shift)][static_cast<size_t>(dd)];
    }
};

inline FiniteKernel finite_kernel_exact(const CylinderGraph& g, double eps,
                                        const GaugeAssignment& gauge, int max_shift) {
    Matrix<complex<double>> W = build_kasteleyn_W(g, eps, gauge);
    num::LU<complex<double>> lu(W, 1e-300);
    if (lu.singular)
        throw std::runtime_error("finite_kernel_exact: W is singular (infeasible boundaries)");
    Matrix<complex<double>> Winv = lu.inverse();
    FiniteKernel K;
    K.L = g.L;
    K.N = g.N;
    K.eps = eps;
    K.max_shift = max_shift;
    int j0 = g.M / 2;
    int k0 = 0;
    if (j0 - max_shift < 1 || j0 + max_shift > g.M - 1)
        throw std::invalid_argument("finite_kernel_exact: max_shift too deep for this graph");
    K.values.assign(2 * static_cast<size_t>(max_shift) + 1,
                    std::vector<complex<double>>(static_cast<size_t>(g.L)));
    for (int delta = -max_shift; delta <= max_shift; ++delta)
        for (int d = 0; d < g.L; ++d) {
            int w = g.white_id((k0 + d) % g.L, j0 - delta);
            int b = g.black_id(k0, j0);
            K.values[static_cast<size_t>(delta + max_shift)][static_cast<size_t>(d)] =
                Winv(static_cast<size_t>(w), static_cast<size_t>(b));
        }
    return K;
}

// ---------------------------------------------------------------------------
// Closed-form kernels

enum class Branch { automatic, upper, lower };

namespace detail {

struct Window {
    std::vector<complex<double>> zeta;  // eigenvalues of the rotation factor
    std::vector<int> plus, minus;       // window slot indices
    std::vector<int> r_of;              // slot -> Fourier index r
};

inline Window fourier_window(int L, int N) {
    Window w;
    double pi = std::numbers::pi;
    int m = N / 2;
    bool odd = N % 2 == 1;
    int r_lo = -m;
    int r_hi = odd ? m : m - 1;
    for (int r = r_lo; r < r_lo + L; ++r) {
        double arg = odd ? 2.0 * pi * r / L : 2.0 * pi * (r + 0.5) / L;
        w.zeta.push_back(std::exp(complex<double>(0, arg)));
        w.r_of.push_back(r);
        if (r <= r_hi) w.plus.push_back(static_cast<int>(w.zeta.size()) - 1);
        else w.minus.push_back(static_cast<int>(w.zeta.size()) - 1);
    }
    return w;
}

}  // namespace detail

// eq: two-branch Fourier sum with lambda'_r = 1 + eps zeta_r; the j <= 0
// branch is the literal closed form (matching interior W^{-1} entries).
// An optional gauge c' with |lambda'_{m+1}| < c' < |lambda'_m| divides the
// eigenvalues, making the kernel decay in both time directions.
inline complex<double> finite_kernel_closed(int L, int N, double eps, int j, int d,
                                            Branch branch = Branch::automatic,
                                            std::optional<double> c_prime = std::nullopt) {
    if (N <= 0 || N >= L) throw std::domain_error("finite_kernel_closed: need 0 < N < L");
    detail::Window win = detail::fourier_window(L, N);
    double mod_plus = 1e300, mod_minus = 0;
    for (int i : win.plus)
        mod_plus = std::min(mod_plus, std::abs(1.0 + eps * win.zeta[static_cast<size_t>(i)]));
    for (int i : win.minus)
        mod_minus = std::max(mod_minus, std::abs(1.0 + eps * win.zeta[static_cast<size_t>(i)]));
    if (mod_plus - mod_minus < 1e-12)
        throw std::domain_error("finite_kernel_closed: window eigenvalues not separated");
    double cp = 1.0;
    if (c_prime) {
        if (!(*c_prime > mod_minus && *c_prime < mod_plus))
            throw std::domain_error("finite_kernel_closed: c' outside (" +
                                    std::to_string(mod_minus) + ", " +
                                    std::to_string(mod_plus) + ")");
        cp = *c_prime;
    }
    bool upper = branch == Branch::automatic ? j > 0 : branch == Branch::upper;
    double pi = std::numbers::pi;
    complex<double> sum = 0;
    const auto& idx = upper ? win.plus : win.minus;
    for (int i : idx) {
        complex<double> lam = (1.0 + eps * win.zeta[static_cast<size_t>(i)]) / cp;
        complex<double> phase =
            std::exp(complex<double>(0, -2.0 * pi * win.r_of[static_cast<size_t>(i)] * d / L));
        sum += std::pow(lam, static_cast<double>(-j)) * phase;
    }
    sum /= static_cast<double>(L);
    return upper ? sum : -sum;
}

// eq: exponential sums with optional gauge constant c,
// Re zeta_{minus} < c < Re zeta_{plus}; t = 0 defaults to the upper branch
// (the equal-time convention of the correlation determinants).
inline complex<double> limit_kernel(int L, int N, double t, int d,
                                    std::optional<double> c = std::nullopt,
                                    Branch branch = Branch::automatic) {
    if (N <= 0 || N >= L) throw std::domain_error("limit_kernel: need 0 < N < L");
    detail::Window win = detail::fourier_window(L, N);
    double cc = 0.0;
    if (c) {
        double hi = 1e300, lo = -1e300;
        for (int i : win.plus) hi = std::min(hi, win.zeta[static_cast<size_t>(i)].real());
        for (int i : win.minus) lo = std::max(lo, win.zeta[static_cast<size_t>(i)].real());
        if (!(*c > lo && *c < hi))
            throw std::domain_error("limit_kernel: gauge c outside (" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + ")");
        cc = *c;
    }
    bool upper = branch == Branch::automatic ? t >= 0 : branch == Branch::upper;
    double pi = std::numbers::pi;
    complex<double> sum = 0;
    const auto& idx = upper ? win.plus : win.minus;
    for (int i : idx) {
        complex<double> zr = win.zeta[static_cast<size_t>(i)];
        complex<double> phase =
            std::exp(complex<double>(0, -2.0 * pi * win.r_of[static_cast<size_t>(i)] * d / L));
        sum += std::exp(-t * (zr - cc)) * phase;
    }
    sum /= static_cast<double>(L);
    return upper ? sum : -sum;
}

struct SpaceTimePoint {
    double t;
    int k;
};

// Stone correlations: probability that stones sit at the given space-time points.
// Equal times (including the diagonal) use the upper branch.
inline double stone_correlation(const std::vector<SpaceTimePoint>& points, int L, int N) {
    size_t n = points.size();
    Matrix<complex<double>> m(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            double dt = points[a].t - points[b].t;
            m(a, b) = limit_kernel(L, N, dt, points[a].k - points[b].k);
        }
    complex<double> det = num::LU<complex<double>>(m).det();
    if (std::abs(det.imag()) > 1e-9)
        throw std::runtime_error("stone_correlation: non-real determinant");
    return det.real();
}

// Bead (jump) density: kernel argument shifted by -1 in position,
// with an omega prefactor per point for even N.
inline double jump_density(const std::vector<SpaceTimePoint>& points, int L, int N) {
    size_t n = points.size();
    double pi = std::numbers::pi;
    complex<double> pref =
        N % 2 == 0 ? std::pow(std::exp(complex<double>(0, pi / L)), static_cast<double>(n))
                   : complex<double>(1, 0);
    Matrix<complex<double>> m(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            double dt = points[a].t - points[b].t;
            m(a, b) = limit_kernel(L, N, dt, points[a].k - points[b].k - 1);
        }
    complex<double> det = pref * num::LU<complex<double>>(m).det();
    if (std::abs(det.imag()) > 1e-8)
        throw std::runtime_error("jump_density: non-real determinant");
    return det.real();
}

// ---------------------------------------------------------------------------
// Infinite-circle beads kernel (contour integrals over the unit circle arcs)

inline double beads_gauge_constant(double rho) {
    if (rho <= 0 || rho >= 1) throw std::domain_error("beads kernel: need 0 < rho < 1");
    return std::cos(std::numbers::pi * rho);
}

// Arc representation: I1 = exp(i[-pi rho, pi rho]) for t > 0, the
// complementary arc for t <= 0.
inline complex<double> beads_kernel_arc(double rho, double t, long long k,
                                        double rel_tol = 1e-9) {
    double pi = std::numbers::pi;
    double c = beads_gauge_constant(rho);
    auto f = [&](double phi) {
        complex<double> zeta = std::exp(complex<double>(0, phi));
        return std::exp(-t * (zeta - c)) *
               std::exp(complex<double>(0, -phi * static_cast<double>(k - 1)));
    };
    if (t > 0) return num::integrate(f, -pi * rho, pi * rho, rel_tol) / (2 * pi);
    return -num::integrate(f, pi * rho, 2 * pi - pi * rho, rel_tol) / (2 * pi);
}

// Real-line representation for rho < 1/2: straight segment through
// gamma = c_infinity for t > 0; for t < 0 the complementary contour, tilted
// into the left half-plane so the integrand decays for every k.
inline complex<double> beads_kernel_segment(double rho, double t, long long k,
                                            double rel_tol = 1e-9) {
    if (rho >= 0.5)
        throw std::domain_error("beads_kernel_segment: representation requires rho < 1/2");
    double pi = std::numbers::pi;
    double c = beads_gauge_constant(rho);
    double s = std::sqrt(1.0 - c * c);
    auto zk = [&](complex<double> zeta) { return std::pow(zeta, -static_cast<double>(k)); };
    if (t > 0) {
        auto f = [&](double phi) {
            complex<double> zeta(c, phi * s);
            return std::exp(-t * (zeta - c)) * zk(zeta);
        };
        return s * num::integrate(f, -1.0, 1.0, rel_tol) / (2 * pi);
    }
    if (t == 0)
        throw std::domain_error("beads_kernel_segment: t = 0 lower branch not representable");
    // rays from g_infinity and conj(g_infinity), direction pi/2 + beta off the
    // real axis; decay rate |t| sin(beta) per unit length
    double beta = 0.6;
    complex<double> g_inf = std::exp(complex<double>(0, pi * rho));
    complex<double> dir_up = std::exp(complex<double>(0, pi / 2 + beta));
    complex<double> dir_dn = std::conj(dir_up);
    double r_max = (50.0 + 10.0 * std::abs(static_cast<double>(k))) / (std::abs(t) * std::sin(beta));
    auto f_up = [&](double r) {
        complex<double> zeta = g_inf + r * dir_up;
        return std::exp(-t * (zeta - c)) * zk(zeta) * dir_up;
    };
    auto f_dn = [&](double r) {
        complex<double> zeta = std::conj(g_inf) + r * dir_dn;
        return std::exp(-t * (zeta - c)) * zk(zeta) * dir_dn;
    };
    complex<double> integral = num::integrate(f_up, 0.0, r_max, rel_tol) -
                               num::integrate(f_dn, 0.0, r_max, rel_tol);
    return -integral / complex<double>(0, 2 * pi);
}

inline complex<double> beads_kernel_infinite(double rho, double t, long long k,
                                             bool cross_check = false) {
    complex<double> arc = beads_kernel_arc(rho, t, k);
    if (cross_check && rho < 0.5 && t != 0) {
        complex<double> seg = beads_kernel_segment(rho, t, k);
        if (std::abs(arc - seg) > 1e-8)
            throw std::runtime_error("beads_kernel_infinite: representations disagree by " +
                                     std::to_string(std::abs(arc - seg)));
    }
    return arc;
}

// ---------------------------------------------------------------------------
// Mirrored strip graph: poissonization of the Plancherel measure (desk-scale
// enumeration check). Copy A runs upward to the mirror row, copy B is the
// color-swapped reflection; vertical mirror edges sit at every position.

struct MirrorGraph {
    int width = 0;     // holes in the window
    int stones = 0;    // stones of the empty-diagram word, ceil(width/2)
    int M = 0;         // steps per copy

    struct Edge {
        int white, black;
        EdgeType type;
        bool mirror = false;
    };
    std::vector<Edge> edges;
    int n_whites = 0, n_blacks = 0;

    // ids, copy A: whites wA(k,j)=j*width+k (j=0..M-1); blacks: level 0
    // pendants then full levels 1..M (the mirror row is level M)
    std::vector<std::vector<int>> wA, bA, wB, bB;
};

inline std::vector<bool> empty_diagram_word(int width) {
    int stones = (width + 1) / 2;
    std::vector<bool> w(static_cast<size_t>(width), false);
    for (int k = 0; k < stones; ++k) w[static_cast<size_t>(k)] = true;
    return w;
}

inline MirrorGraph build_mirror_graph(int width, int M) {
    if (width < 2 || M < 1) throw std::invalid_argument("build_mirror_graph: width>=2, M>=1");
    MirrorGraph g;
    g.width = width;
    g.stones = (width + 1) / 2;
    g.M = M;
    std::vector<bool> init = empty_diagram_word(width);

    auto fresh = [&](std::vector<std::vector<int>>& table, int levels, bool is_white) {
        table.assign(static_cast<size_t>(levels), std::vector<int>(static_cast<size_t>(width), -1));
        (void)is_white;
    };
    fresh(g.wA, M, true);
    fresh(g.bA, M + 1, false);
    fresh(g.wB, M + 1, true);
    fresh(g.bB, M, false);

    auto new_white = [&]() { return g.n_whites++; };
    auto new_black = [&]() { return g.n_blacks++; };
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < width; ++k) g.wA[static_cast<size_t>(j)][static_cast<size_t>(k)] = new_white();
    for (int k = 0; k < width; ++k)
        if (!init[static_cast<size_t>(k)]) g.bA[0][static_cast<size_t>(k)] = new_black();
    for (int j = 1; j <= M; ++j)
        for (int k = 0; k < width; ++k) g.bA[static_cast<size_t>(j)][static_cast<size_t>(k)] = new_black();
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < width; ++k) g.bB[static_cast<size_t>(j)][static_cast<size_t>(k)] = new_black();
    for (int k = 0; k < width; ++k)
        if (!init[static_cast<size_t>(k)]) g.wB[0][static_cast<size_t>(k)] = new_white();
    for (int j = 1; j <= M; ++j)
        for (int k = 0; k < width; ++k) g.wB[static_cast<size_t>(j)][static_cast<size_t>(k)] = new_white();

    auto add = [&](int w, int b, EdgeType t, bool mirror = false) {
        if (w < 0 || b < 0) return;
        g.edges.push_back({w, b, t, mirror});
    };
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < width; ++k) {
            int w = g.wA[static_cast<size_t>(j)][static_cast<size_t>(k)];
            add(w, g.bA[static_cast<size_t>(j)][static_cast<size_t>(k)], EdgeType::no_stone);
            add(w, g.bA[static_cast<size_t>(j) + 1][static_cast<size_t>(k)], EdgeType::stone_stays);
            if (k + 1 < width)
                add(w, g.bA[static_cast<size_t>(j) + 1][static_cast<size_t>(k) + 1], EdgeType::jump);
        }
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < width; ++k) {
            int b = g.bB[static_cast<size_t>(j)][static_cast<size_t>(k)];
            add(g.wB[static_cast<size_t>(j)][static_cast<size_t>(k)], b, EdgeType::no_stone);
            add(g.wB[static_cast<size_t>(j) + 1][static_cast<size_t>(k)], b, EdgeType::stone_stays);
            if (k + 1 < width)
                add(g.wB[static_cast<size_t>(j) + 1][static_cast<size_t>(k) + 1], b, EdgeType::jump);
        }
    for (int k = 0; k < width; ++k)
        add(g.wB[static_cast<size_t>(M)][static_cast<size_t>(k)],
            g.bA[static_cast<size_t>(M)][static_cast<size_t>(k)], EdgeType::no_stone, true);
    return g;
}

struct MirrorEnumeration {
    // exact total matching weight per decoded target partition
    std::map<std::vector<long long>, Rational> weight_by_partition;
    Rational total;
};

// DFS route, for small M; validates the transfer-matrix route.
inline MirrorEnumeration enumerate_mirror_matchings(const MirrorGraph& g, const Rational& eps,
                                                    int vertex_cap = 64) {
    if (g.n_whites + g.n_blacks > vertex_cap)
        throw std::length_error("enumerate_mirror_matchings: vertex count exceeds cap");
    std::vector<std::vector<int>> white_edges(static_cast<size_t>(g.n_whites));
    for (size_t ei = 0; ei < g.edges.size(); ++ei)
        white_edges[static_cast<size_t>(g.edges[ei].white)].push_back(static_cast<int>(ei));
    MirrorEnumeration out;
    out.total = Rational(0);
    std::vector<bool> black_used(static_cast<size_t>(g.n_blacks), false);
    std::vector<int> choice(static_cast<size_t>(g.n_whites), -1);
    auto rec = [&](auto&& self, int w, int jumps) -> void {
        if (w == g.n_whites) {
            // mirror word: stone at k iff the mirror edge at k is unused
            std::vector<bool> word(static_cast<size_t>(g.width), true);
            for (int k = 0; k < g.width; ++k) {
                int wm = g.wB[static_cast<size_t>(g.M)][static_cast<size_t>(k)];
                const auto& e = g.edges[static_cast<size_t>(choice[static_cast<size_t>(wm)])];
                if (e.mirror) word[static_cast<size_t>(k)] = false;
            }
            young::MayaWord mw{-(static_cast<long long>((g.width + 1) / 2)),
                               g.width - static_cast<long long>((g.width + 1) / 2),
                               word};
            young::Partition lambda = young::maya_decode(mw);
            Rational weight(1);
            Rational e = eps;
            for (int i = 0; i < jumps; ++i) weight *= e;
            out.weight_by_partition[lambda.parts] += weight;
            out.total += weight;
            return;
        }
        for (int ei : white_edges[static_cast<size_t>(w)]) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            if (black_used[static_cast<size_t>(e.black)]) continue;
            black_used[static_cast<size_t>(e.black)] = true;
            choice[static_cast<size_t>(w)] = ei;
            self(self, w + 1, jumps + (e.type == EdgeType::jump ? 1 : 0));
            black_used[static_cast<size_t>(e.black)] = false;
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Exact level-transfer route: total weight factorizes over levels; matchings
// of each copy are parallel-jump evolutions, and the two copies meet at a
// common mirror word. Handles the depths the epsilon sweep needs.
inline MirrorEnumeration transfer_mirror_weights(int width, int M, const Rational& eps) {
    int stones = (width + 1) / 2;
    // states = stone subsets encoded as sorted vectors
    std::vector<std::vector<int>> states;
    std::vector<int> cur;
    auto gen = [&](auto&& self, int pos, int left) -> void {
        if (left == 0) {
            states.push_back(cur);
            return;
        }
        if (pos >= width) return;
        cur.push_back(pos);
        self(self, pos + 1, left - 1);
        cur.pop_back();
        self(self, pos + 1, left);
    };
    gen(gen, 0, stones);
    std::map<std::vector<int>, size_t> index;
    for (size_t i = 0; i < states.size(); ++i) index[states[i]] = i;

    size_t n = states.size();
    Matrix<Rational> S(n, n, Rational(0));
    for (size_t si = 0; si < n; ++si) {
        const auto& occ = states[si];
        std::vector<bool> filled(static_cast<size_t>(width), false);
        for (int k : occ) filled[static_cast<size_t>(k)] = true;
        // choose jump subsets, scanning stones right to left so a stone may
        // jump onto a hole or onto a right neighbor that itself jumps
        std::vector<int> jumping;
        auto choose = [&](auto&& self, int idx) -> void {
            if (idx < 0) {
                std::vector<int> next;
                std::vector<bool> jumps(static_cast<size_t>(width), false);
                for (int k : jumping) jumps[static_cast<size_t>(k)] = true;
                for (int k : occ)
                    next.push_back(jumps[static_cast<size_t>(k)] ? k + 1 : k);
                std::sort(next.begin(), next.end());
                Rational w(1);
                for (size_t q = 0; q < jumping.size(); ++q) w *= eps;
                S(si, index.at(next)) += w;
                return;
            }
            int k = occ[static_cast<size_t>(idx)];
            self(self, idx - 1);  // stay
            bool can_jump = k + 1 < width &&
                            (!filled[static_cast<size_t>(k) + 1] ||
                             (!jumping.empty() && jumping.back() == k + 1));
            if (can_jump) {
                jumping.push_back(k);
                self(self, idx - 1);
                jumping.pop_back();
            }
        };
        choose(choose, static_cast<int>(occ.size()) - 1);
    }

    // weights of M-step evolutions from the initial word
    std::vector<int> init;
    for (int k = 0; k < stones; ++k) init.push_back(k);
    std::vector<Rational> row(n, Rational(0));
    row[index.at(init)] = Rational(1);
    for (int step = 0; step < M; ++step) {
        std::vector<Rational> nxt(n, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            if (row[i].is_zero()) continue;
            for (size_t j = 0; j < n; ++j)
                if (!S(i, j).is_zero()) nxt[j] += row[i] * S(i, j);
        }
        row = std::move(nxt);
    }

    MirrorEnumeration out;
    out.total = Rational(0);
    for (size_t i = 0; i < n; ++i) {
        if (row[i].is_zero()) continue;
        std::vector<bool> word(static_cast<size_t>(width), false);
        for (int k : states[i]) word[static_cast<size_t>(k)] = true;
        young::MayaWord mw{-static_cast<long long>(stones),
                           width - static_cast<long long>(stones), word};
        young::Partition lambda = young::maya_decode(mw);
        Rational w2 = row[i] * row[i];
        out.weight_by_partition[lambda.parts] += w2;
        out.total += w2;
    }
    return out;
}

// Width-restricted poissonized Plancherel target, normalized over the
// partitions the window can represent.
inline std::map<std::vector<long long>, double> poissonized_target(int width, double theta) {
    int stones = (width + 1) / 2;
    int box_rows = stones, box_cols = width - stones;
    std::map<std::vector<long long>, double> t;
    double total = 0;
    for (long long n = 0; n <= static_cast<long long>(box_rows) * box_cols; ++n) {
        for (const young::Partition& p : young::partitions_of(n)) {
            if (static_cast<int>(p.rows()) > box_rows || p.part(0) > box_cols) continue;
            double d = young::dimension(p).to_double();
            double nf = BigInt::factorial(static_cast<unsigned>(n)).to_double();
            double w = std::pow(theta * theta, static_cast<double>(n)) / nf * (d * d / nf);
            t[p.parts] = w;
            total += w;
        }
    }
    for (auto& [k, v] : t) v /= total;
    return t;
}

struct PoissonizationResult {
    std::map<std::vector<long long>, double> enumerated;  // normalized weights
    std::map<std::vector<long long>, double> target;
    double max_error = 0;
};

inline PoissonizationResult poissonization_check(int width, int M, const Rational& eps,
                                                 double theta) {
    MirrorEnumeration e = transfer_mirror_weights(width, M, eps);
    PoissonizationResult r;
    r.target = poissonized_target(width, theta);
    for (const auto& [parts, w] : e.weight_by_partition)
        r.enumerated[parts] = (w / e.total).to_double();
    for (const auto& [parts, tv] : r.target) {
        double ev = r.enumerated.count(parts) ? r.enumerated.at(parts) : 0.0;
        r.max_error = std::max(r.max_error, std::abs(ev - tv));
    }
    return r;
}

}  // namespace maya::dimer
