// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here, not tunable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "maya/dimer.hpp"
#include "maya/mtasep.hpp"
#include "maya/shape.hpp"
#include "maya/young.hpp"

using namespace maya;
using num::BigInt;
using num::Rational;

namespace {

struct Criterion {
    int id;
    std::string summary;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<Criterion> results;

template <class F>
void run(int id, const std::string& summary, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        detail = body(pass);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back({id, summary, pass, detail, secs});
    std::printf("[%2d] %s  %s (%s; %.1fs)\n", id, pass ? "PASS" : "FAIL", summary.c_str(),
                detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

int main() {
    // 1. entropy closed form vs spectral oracle
    run(1, "entropy: closed form vs power-iteration oracle, 2<=L<=12", [](bool& pass) {
        double worst = 0;
        for (int L = 2; L <= 12; ++L)
            for (int N = 1; N < L; ++N) {
                auto sp = mtasep::spectral_radius_numeric(mtasep::TransitionMatrix(L, N));
                worst = std::max(worst, std::abs(sp.entropy - mtasep::entropy_closed(L, N)));
            }
        pass = worst <= 1e-10;
        return "max |h_closed - log rho| = " + fmt(worst) + " <= 1e-10";
    });

    // 2. determinantal Parry law
    run(2, "Parry measure equals projection-kernel minors, L<=10, both parities",
        [](bool& pass) {
            double worst = 0;
            for (int L = 2; L <= 10; ++L)
                for (int N = 1; N < L; ++N) {
                    mtasep::TransitionMatrix T(L, N);
                    auto parry = mtasep::parry_measure(T);
                    auto K = mtasep::projection_kernel(L, N);
                    for (long long s = 0; s < T.states(); ++s)
                        worst = std::max(
                            worst,
                            std::abs(mtasep::determinantal_state_probability(K, T.state(s).occupied) -
                                     parry[static_cast<size_t>(s)]));
                }
            pass = worst <= 1e-10;
            return "max state diff = " + fmt(worst) + " <= 1e-10";
        });

    // 3. Kasteleyn exactness
    run(3, "Kasteleyn: |det W| = matching sum and edge probabilities, exact", [](bool& pass) {
        Rational eps(BigInt(1), BigInt(20));
        struct Inst { int L, N, M; };
        std::vector<Inst> insts = {{3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {3, 2, 1}, {3, 2, 2},
                                   {3, 2, 3}, {4, 1, 2}, {4, 2, 2}, {4, 3, 2}, {4, 3, 3},
                                   {5, 2, 2}, {5, 4, 2}};
        int instances = 0, zero_dets = 0;
        bool ok = true;
        for (const auto& inst : insts) {
            std::vector<int> occ;
            for (int i = 0; i < inst.N; ++i) occ.push_back(i);
            mtasep::CircleState in{inst.L, occ};
            mtasep::TransitionMatrix T(inst.L, inst.N);
            for (long long s = 0; s < T.states(); ++s) {
                dimer::CylinderGraph g =
                    dimer::build_cylinder(inst.L, inst.N, 0, inst.M, in, T.state(s));
                if (g.whites() + g.blacks() > 40) continue;
                ++instances;
                auto kind = inst.N % 2 == 1 ? dimer::GaugeKind::uniform : dimer::GaugeKind::seam;
                auto gauge = dimer::make_gauge(g, kind);
                auto ml = dimer::enumerate_matchings(g);
                Rational Z = ml.partition_sum(eps);
                Rational det = num::exact_det(dimer::build_kasteleyn_W_exact(g, eps, gauge));
                ok = ok && (det == Z || det == -Z);
                if (ml.matchings.empty()) {
                    ++zero_dets;
                    ok = ok && det == Rational(0);
                }
            }
        }
        // exact edge probabilities from the inverse, three instances
        for (const auto& inst : std::vector<Inst>{{3, 1, 2}, {4, 2, 2}, {4, 3, 2}}) {
            std::vector<int> occ;
            for (int i = 0; i < inst.N; ++i) occ.push_back(i);
            mtasep::CircleState in{inst.L, occ};
            dimer::CylinderGraph g = dimer::build_cylinder(inst.L, inst.N, 0, inst.M, in, in);
            auto kind = inst.N % 2 == 1 ? dimer::GaugeKind::uniform : dimer::GaugeKind::seam;
            auto gauge = dimer::make_gauge(g, kind);
            auto ml = dimer::enumerate_matchings(g);
            Rational Z = ml.partition_sum(eps);
            auto Winv = num::exact_inverse(dimer::build_kasteleyn_W_exact(g, eps, gauge));
            for (size_t ei = 0; ei < g.edges.size(); ++ei) {
                Rational from_enum(0);
                for (const auto& m : ml.matchings) {
                    bool uses = false;
                    for (int ce : m.edge_of_white)
                        if (ce == static_cast<int>(ei)) uses = true;
                    if (!uses) continue;
                    Rational w(1);
                    for (int q = 0; q < m.jumps; ++q) w *= eps;
                    from_enum += w;
                }
                ok = ok && dimer::edge_probability_exact(g, gauge, eps, Winv,
                                                         static_cast<int>(ei)) == from_enum / Z;
            }
        }
        pass = ok && instances > 0 && zero_dets > 0;
        return std::to_string(instances) + " boundary pairs, " + std::to_string(zero_dets) +
               " infeasible (det 0), all exact";
    });

    // 4. kernel convergence at the stated depth
    run(4, "closed kernel vs interior W^-1, depth 25, eps=0.05, L=4, N in {1,2,3}",
        [](bool& pass) {
            // discrepancy of one interior inverse column against the closed
            // form; a single solve keeps large depths affordable
            auto kernel_err = [](int N, int depth) {
                std::vector<int> occ;
                for (int i = 0; i < N; ++i) occ.push_back(i);
                mtasep::CircleState s{4, occ};
                dimer::CylinderGraph g = dimer::build_cylinder(4, N, -depth, depth, s, s);
                auto gauge = dimer::make_gauge(g, dimer::GaugeKind::uniform);
                auto W = dimer::build_kasteleyn_W(g, 0.05, gauge);
                num::LU<std::complex<double>> lu(W, 1e-300);
                int j0 = g.M / 2;
                std::vector<std::complex<double>> e(W.rows(), 0.0);
                e[static_cast<size_t>(g.black_id(0, j0))] = 1.0;
                auto col = lu.solve(e);
                double err = 0;
                for (int dl = -3; dl <= 3; ++dl)
                    for (int d = 0; d < 4; ++d)
                        err = std::max(err,
                                       std::abs(col[static_cast<size_t>(g.white_id(d, j0 - dl))] -
                                                dimer::finite_kernel_closed(4, N, 0.05, dl, d)));
                return err;
            };
            double worst25 = 0, worst280 = 0;
            std::string sweep;
            for (int N = 1; N <= 3; ++N) {
                worst25 = std::max(worst25, kernel_err(N, 25));
                worst280 = std::max(worst280, kernel_err(N, 280));
                if (N == 2)
                    for (int depth : {50, 100})
                        sweep += " depth" + std::to_string(depth) + ":" + fmt(kernel_err(N, depth));
            }
            pass = worst25 <= 1e-6;
            return "max diff at depth 25 = " + fmt(worst25) +
                   " (tol 1e-6); boundary effect decays as exp(-eps*gap*depth): N=2 sweep" +
                   sweep + "; tolerance holds by depth 280 (max diff " + fmt(worst280) + ")";
        });

    // 5. frozen-limit laws
    run(5, "frozen limit: O(eps) kernel convergence and Poisson jump rate", [](bool& pass) {
        bool ok = true;
        std::string detail;
        for (int N : {1, 2, 3}) {
            std::vector<double> errs;
            for (double eps : {0.1, 0.01, 0.001}) {
                int j = static_cast<int>(std::lround(1.0 / eps));
                double err = 0;
                for (int d = 0; d < 4; ++d)
                    err = std::max(err, std::abs(dimer::finite_kernel_closed(4, N, eps, j, d) -
                                                 dimer::limit_kernel(4, N, 1.0, d)));
                errs.push_back(err);
            }
            ok = ok && errs[1] <= 0.25 * errs[0] && errs[2] <= 0.25 * errs[1];
            if (N == 2)
                detail += "kernel errs " + fmt(errs[0]) + "/" + fmt(errs[1]) + "/" + fmt(errs[2]);
        }
        double tau = 10000;
        for (auto [L, N, seed] : std::vector<std::tuple<int, int, uint64_t>>{{4, 2, 12},
                                                                             {6, 3, 13}}) {
            mtasep::ParryChain chain(L, N);
            auto events = mtasep::sample_frozen_process(chain, tau, seed);
            double rate = static_cast<double>(events.size()) / tau;
            double expect = std::exp(mtasep::entropy_closed(L, N));
            double sigma = std::sqrt(expect * tau) / tau;
            ok = ok && std::abs(rate - expect) <= 3 * sigma;
            detail += "; rate(" + std::to_string(L) + "," + std::to_string(N) + ")=" + fmt(rate) +
                      " vs " + fmt(expect);
        }
        pass = ok;
        return detail;
    });

    // 6. exact combinatorics
    run(6, "sum dim^2 = n! (n<=12) and DP = determinant skew counts (|lambda|<=20)",
        [](bool& pass) {
            bool ok = true;
            for (long long n = 0; n <= 12; ++n) ok = ok && young::plancherel_identity_check(n);
            long long straight = 0, skew = 0;
            for (long long n = 0; n <= 20; ++n)
                for (const young::Partition& p : young::partitions_of(n)) {
                    young::SkewShape s(p, young::Partition());
                    ok = ok && young::count_skew_dp(s) == young::count_skew_det(s);
                    ++straight;
                }
            // proper skew shapes: every removable-corner inner of |lambda| = 12
            for (const young::Partition& p : young::partitions_of(12)) {
                for (const young::Cell& c : young::removable_cells(p)) {
                    young::SkewShape s(p, young::remove_cell(p, static_cast<size_t>(c.row)));
                    ok = ok && young::count_skew_dp(s) == young::count_skew_det(s);
                    ++skew;
                }
            }
            pass = ok;
            return std::to_string(straight) + " straight + " + std::to_string(skew) +
                   " skew shapes, all exact";
        });

    // 7. variational anchors
    run(7, "L[Omega] = -1/2, EL residual <= 1e-3, constant C consistent", [](bool& pass) {
        shape::FunctionalValue v = shape::functional_L(shape::vkls_shape(900, 1200));
        double func_err = std::abs(v.value + 0.5);
        double resid = 0;
        for (double t : {0.5, 0.6, 0.7, 0.85, 1.0})
            for (double frac : {-0.8, -0.5, -0.2, 0.0, 0.2, 0.5, 0.8})
                resid = std::max(resid,
                                 std::abs(shape::el_residual_vkls(t, frac * std::sqrt(t), 1e-3)));
        double c_val = shape::constant_C();
        double c_closed = -std::log(std::numbers::pi / std::numbers::sqrt2);
        double constant_free = v.value - c_val;
        double c_cross = std::abs(constant_free + c_val + 0.5);
        bool ok = func_err <= 2e-3 && resid <= 1e-3 && std::abs(c_val - c_closed) < 1e-15 &&
                  c_cross <= 2e-3;
        pass = ok;
        return "|L+1/2| = " + fmt(func_err) + ", max residual = " + fmt(resid) +
               ", C cross-check = " + fmt(c_cross);
    });

    // 8. sine-kernel limit
    run(8, "projection kernel -> sine kernel, |diff| <= 5/L", [](bool& pass) {
        bool ok = true;
        double worst_scaled = 0;
        for (int L : {50, 500, 2000}) {
            int N = static_cast<int>(0.3 * L);
            auto K = mtasep::projection_kernel(L, N);
            for (long long k = 1; k <= 5; ++k) {
                double diff = std::abs(K.value(k) - mtasep::sine_kernel(k, 0.3));
                ok = ok && diff <= 5.0 / L;
                worst_scaled = std::max(worst_scaled, diff * L);
            }
        }
        pass = ok;
        return "max L*|diff| = " + fmt(worst_scaled) + " <= 5";
    });

    // 9. beads kernel internal consistency
    run(9, "beads kernel: dual representations and cylinder limit O(1/L)", [](bool& pass) {
        double dual = 0;
        for (double t : {0.7, 1.3, -0.7, -1.3})
            for (long long k = -2; k <= 2; ++k)
                dual = std::max(dual, std::abs(dimer::beads_kernel_arc(0.3, t, k) -
                                               dimer::beads_kernel_segment(0.3, t, k)));
        std::vector<int> Ls = {21, 41, 81, 161, 321};
        std::vector<double> errs;
        for (int L : Ls) {
            int N = static_cast<int>(std::lround(0.3 * L));
            if (N % 2 == 0) ++N;
            double rho = static_cast<double>(N) / L;
            double c = std::cos(std::numbers::pi * rho);
            double err = 0;
            for (double t : {0.5, -0.5})
                for (long long k = 0; k <= 2; ++k)
                    err = std::max(err,
                                   std::abs(dimer::limit_kernel(L, N, t, static_cast<int>(k) - 1, c) -
                                            dimer::beads_kernel_arc(rho, t, k)));
            errs.push_back(err);
        }
        bool monotone = true;
        for (size_t i = 1; i < errs.size(); ++i) monotone = monotone && errs[i] < errs[i - 1];
        double fitted_c = errs.front() * Ls.front();
        bool fits = errs.back() * Ls.back() <= 3.0 * fitted_c;
        pass = dual <= 1e-8 && monotone && fits;
        return "dual reps diff = " + fmt(dual) + "; cylinder err*L: " + fmt(errs.front() * Ls.front()) +
               " -> " + fmt(errs.back() * Ls.back());
    });

    // 10. poissonization on the mirrored graph
    run(10, "poissonization: width 3, theta = 0.5, error decreasing along eps sweep",
        [](bool& pass) {
            std::vector<double> errs;
            for (int M : {5, 10, 20}) {
                Rational eps(BigInt(1), BigInt(2 * M));
                auto r = dimer::poissonization_check(3, M, eps, 0.5);
                errs.push_back(r.max_error);
            }
            pass = errs[1] < errs[0] && errs[2] < errs[1];
            return "max errors " + fmt(errs[0]) + " > " + fmt(errs[1]) + " > " + fmt(errs[2]);
        });

    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    std::printf("ACCEPTANCE: %d/%zu criteria passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
