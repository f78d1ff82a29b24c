#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "maya/dimer.hpp"
#include "maya/mtasep.hpp"
#include "maya/shape.hpp"
#include "maya/young.hpp"

namespace maya::verify {

struct Check {
    std::string name;
    bool pass = false;
    double value = 0;      // measured discrepancy or indicator
    double tolerance = 0;  // 0 for exact checks
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline void add(Report& r, const std::string& name, double value, double tol) {
    r.checks.push_back({name, value <= tol, value, tol});
}
inline void add_exact(Report& r, const std::string& name, bool ok) {
    r.checks.push_back({name, ok, ok ? 0.0 : 1.0, 0.0});
}

inline Report verify_young() {
    using namespace maya::young;
    Report r{"young", {}};

    bool roundtrip = true, jump_rule = true;
    for (long long n = 0; n <= 6 && roundtrip; ++n)
        for (const Partition& p : partitions_of(n)) {
            MayaWord w = maya_encode(p, -8, 8);
            roundtrip = roundtrip && (maya_decode(w) == p);
            for (const Cell& c : addable_cells(p)) {
                MayaWord wq = maya_encode(add_cell(p, static_cast<size_t>(c.row)), -8, 8);
                int moved = 0;
                for (size_t i = 0; i + 1 < w.stones.size(); ++i)
                    if (w.stones[i] && !wq.stones[i] && !w.stones[i + 1] && wq.stones[i + 1])
                        ++moved;
                jump_rule = jump_rule && moved == 1;
            }
        }
    add_exact(r, "maya round-trip, |p| <= 6", roundtrip);
    add_exact(r, "one-cell addition moves one stone one hole right", jump_rule);

    bool counts_agree = true;
    for (long long n = 0; n <= 8; ++n)
        for (const Partition& p : partitions_of(n)) {
            SkewShape s(p, Partition());
            counts_agree = counts_agree && count_skew_dp(s) == count_skew_det(s) &&
                           count_skew_dp(s) == dimension(p);
        }
    counts_agree = counts_agree &&
                   count_skew_dp(SkewShape(Partition{4, 3, 1}, Partition{2, 1})) ==
                       count_skew_det(SkewShape(Partition{4, 3, 1}, Partition{2, 1}));
    add_exact(r, "skew counts: DP equals determinant formula", counts_agree);

    bool forward_identity = true, backward_sums = true;
    for (long long n = 0; n <= 10; ++n)
        for (const Partition& p : partitions_of(n)) {
            num::BigInt lhs(0);
            for (const Cell& c : addable_cells(p))
                lhs += dimension(add_cell(p, static_cast<size_t>(c.row)));
            forward_identity =
                forward_identity && lhs == num::BigInt(p.size() + 1) * dimension(p);
            if (n >= 1) {
                num::Rational sum(0);
                for (auto& [q, pr] : backward_step_distribution(p)) sum += pr;
                backward_sums = backward_sums && sum == num::Rational(1);
            }
        }
    add_exact(r, "forward identity sum dim = (n+1) dim", forward_identity);
    add_exact(r, "backward distribution sums to 1 exactly", backward_sums);

    bool plancherel = true;
    for (long long n : {0, 4, 8, 10}) plancherel = plancherel && plancherel_identity_check(n);
    add_exact(r, "sum dim^2 = n!", plancherel);
    return r;
}

inline Report verify_mtasep() {
    using namespace maya::mtasep;
    Report r{"mtasep", {}};

    double worst_entropy = 0;
    for (int L = 2; L <= 9; ++L)
        for (int N = 1; N < L; ++N) {
            ChainSpectrum sp = spectral_radius_numeric(TransitionMatrix(L, N));
            worst_entropy = std::max(worst_entropy,
                                     std::abs(sp.entropy - entropy_closed(L, N)));
        }
    add(r, "entropy: closed form vs power iteration, L <= 9", worst_entropy, 1e-10);

    double sym = 0;
    for (int L = 2; L <= 12; ++L)
        for (int N = 1; N < L; ++N)
            sym = std::max(sym, std::abs(entropy_closed(L, N) - entropy_closed(L, L - N)));
    add(r, "particle-hole symmetry of the entropy", sym, 1e-12);

    double parry_diff = 0, mass = 0;
    for (int L = 2; L <= 7; ++L)
        for (int N = 1; N < L; ++N) {
            TransitionMatrix T(L, N);
            auto parry = parry_measure(T);
            ProjectionKernel K = projection_kernel(L, N);
            double total = 0;
            for (long long s = 0; s < T.states(); ++s) {
                double det = determinantal_state_probability(K, T.state(s).occupied);
                parry_diff = std::max(parry_diff,
                                      std::abs(det - parry[static_cast<size_t>(s)]));
                total += det;
            }
            mass = std::max(mass, std::abs(total - 1.0));
        }
    add(r, "Parry measure vs determinantal law, L <= 7", parry_diff, 1e-10);
    add(r, "determinantal mass over all states = 1", mass, 1e-10);

    double proj = 0;
    for (int L : {6, 7, 8})
        for (int N = 1; N < L; ++N) {
            ProjectionKernel K = projection_kernel(L, N);
            num::Matrix<std::complex<double>> P(static_cast<size_t>(L), static_cast<size_t>(L));
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b) P(static_cast<size_t>(a), static_cast<size_t>(b)) = K.value(a - b);
            auto P2 = P * P;
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b) {
                    proj = std::max(proj, std::abs(P2(static_cast<size_t>(a), static_cast<size_t>(b)) -
                                                   P(static_cast<size_t>(a), static_cast<size_t>(b))));
                    proj = std::max(proj, std::abs(P(static_cast<size_t>(a), static_cast<size_t>(b)) -
                                                   std::conj(P(static_cast<size_t>(b), static_cast<size_t>(a)))));
                }
        }
    add(r, "projection kernel: P^2 = P and P* = P", proj, 1e-12);

    double window = 0;
    {
        TransitionMatrix T(6, 3);
        ProjectionKernel K0 = projection_kernel(6, 3, 0);
        for (int off : {1, 3}) {
            ProjectionKernel K1 = projection_kernel(6, 3, off);
            for (long long s = 0; s < T.states(); ++s) {
                auto st = T.state(s);
                window = std::max(window,
                                  std::abs(determinantal_state_probability(K0, st.occupied) -
                                           determinantal_state_probability(K1, st.occupied)));
            }
        }
    }
    add(r, "window shift leaves minors unchanged", window, 1e-10);

    double rows = 0, stat = 0;
    for (int L : {5, 6, 7}) {
        int N = L / 2;
        ParryChain chain(L, N);
        const auto& T = chain.transition();
        const auto& sp = chain.spectrum();
        for (long long s = 0; s < T.states(); ++s) {
            double sum = 0;
            for (long long t : T.successors(s))
                sum += sp.right_vec[static_cast<size_t>(t)] /
                       (sp.rho * sp.right_vec[static_cast<size_t>(s)]);
            rows = std::max(rows, std::abs(sum - 1.0));
        }
        const auto& pi = chain.stationary();
        std::vector<double> next(pi.size(), 0.0);
        for (long long s = 0; s < T.states(); ++s) {
            auto probs = chain.row_probabilities(s);
            const auto& succ = T.successors(s);
            for (size_t i = 0; i < succ.size(); ++i)
                next[static_cast<size_t>(succ[i])] += pi[static_cast<size_t>(s)] * probs[i];
        }
        for (size_t i = 0; i < pi.size(); ++i) stat = std::max(stat, std::abs(next[i] - pi[i]));
    }
    add(r, "Parry kernel rows sum to 1", rows, 1e-10);
    add(r, "Parry measure is stationary", stat, 1e-10);

    double sine = 0;
    for (int L : {200, 1000}) {
        int N = static_cast<int>(0.3 * L);
        ProjectionKernel K = projection_kernel(L, N);
        for (long long k = 1; k <= 5; ++k)
            sine = std::max(sine, std::abs(K.value(k) - sine_kernel(k, 0.3)) * L / 5.0);
    }
    add(r, "sine-kernel limit, scaled error L/5 * |K - sine|", sine, 1.0);
    return r;
}

inline Report verify_dimer() {
    using namespace maya::dimer;
    Report r{"dimer", {}};
    num::Rational eps(num::BigInt(1), num::BigInt(20));

    bool faces_ok = true, kasteleyn = true, decode_ok = true;
    int unreachable = 0;
    struct Inst { int L, N, M; };
    for (Inst inst : {Inst{3, 1, 1}, Inst{3, 1, 2}, Inst{3, 2, 2}, Inst{4, 2, 2}, Inst{4, 3, 2}}) {
        std::vector<int> occ;
        for (int i = 0; i < inst.N; ++i) occ.push_back(i);
        CircleState in{inst.L, occ};
        mtasep::TransitionMatrix T(inst.L, inst.N);
        for (long long s = 0; s < T.states(); ++s) {
            CircleState out = T.state(s);
            CylinderGraph g = build_cylinder(inst.L, inst.N, 0, inst.M, in, out);
            GaugeKind kind = inst.N % 2 == 1 ? GaugeKind::uniform : GaugeKind::seam;
            GaugeAssignment gauge = make_gauge(g, kind);
            for (const auto& f : trace_faces(g, gauge)) faces_ok = faces_ok && f.ok;
            for (const auto& f : trace_faces(g, make_gauge(g, GaugeKind::uniform)))
                faces_ok = faces_ok && f.ok;
            MatchingList ml = enumerate_matchings(g);
            num::Rational Z = ml.partition_sum(eps);
            num::Rational det = num::exact_det(build_kasteleyn_W_exact(g, eps, gauge));
            kasteleyn = kasteleyn && (det == Z || det == -Z);
            if (ml.matchings.empty()) ++unreachable;
            for (const Matching& m : ml.matchings) {
                try {
                    decode_matching(g, m);
                } catch (const std::logic_error&) {
                    decode_ok = false;
                }
            }
        }
    }
    add_exact(r, "gauge face conditions (uniform and seam)", faces_ok);
    add_exact(r, "kasteleyn identity |det W| = Z, exact", kasteleyn);
    add_exact(r, "matchings decode to legal evolutions", decode_ok);
    add_exact(r, "infeasible boundaries give det W = 0", unreachable > 0);

    double branch = 0;
    for (int L : {4, 5, 6})
        for (int N = 1; N < L; ++N)
            for (int d = 0; d < L; ++d) {
                double delta = d == 0 ? 1.0 : 0.0;
                branch = std::max(branch,
                                  std::abs(finite_kernel_closed(L, N, 0.3, 0, d, Branch::upper) -
                                           finite_kernel_closed(L, N, 0.3, 0, d, Branch::lower) -
                                           delta));
                branch = std::max(branch,
                                  std::abs(limit_kernel(L, N, 0, d, std::nullopt, Branch::upper) -
                                           limit_kernel(L, N, 0, d, std::nullopt, Branch::lower) -
                                           delta));
            }
    add(r, "branch difference K(0+) - K(0-) = delta_0", branch, 1e-12);

    double equal_time = 0;
    for (int L : {4, 5})
        for (int N = 1; N < L; ++N) {
            mtasep::TransitionMatrix T(L, N);
            mtasep::ProjectionKernel K = mtasep::projection_kernel(L, N);
            for (long long s = 0; s < T.states(); ++s) {
                auto st = T.state(s);
                std::vector<SpaceTimePoint> pts;
                for (int k : st.occupied) pts.push_back({0.0, k});
                equal_time = std::max(equal_time,
                                      std::abs(stone_correlation(pts, L, N) -
                                               mtasep::determinantal_state_probability(K, st.occupied)));
            }
        }
    add(r, "equal-time stone correlations reduce to projection minors", equal_time, 1e-10);

    double jump_rate = 0;
    for (auto [L, N] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {5, 2}})
        jump_rate = std::max(jump_rate,
                             std::abs(jump_density({{0.0, 1}}, L, N) -
                                      std::exp(mtasep::entropy_closed(L, N)) / L));
    add(r, "single-point jump density = e^h / L", jump_rate, 1e-12);

    double beads = 0;
    for (double t : {0.7, -0.7})
        for (long long k : {0LL, 1LL, 2LL})
            beads = std::max(beads, std::abs(beads_kernel_arc(0.3, t, k) -
                                             beads_kernel_segment(0.3, t, k)));
    add(r, "beads kernel: arc vs segment representations", beads, 1e-8);

    bool mirror = true;
    for (int width : {3, 4}) {
        MirrorGraph g = build_mirror_graph(width, 2);
        MirrorEnumeration dfs = enumerate_mirror_matchings(g, eps);
        MirrorEnumeration dp = transfer_mirror_weights(width, 2, eps);
        mirror = mirror && dfs.total == dp.total;
        for (const auto& [parts, w] : dfs.weight_by_partition)
            mirror = mirror && dp.weight_by_partition.count(parts) &&
                     dp.weight_by_partition.at(parts) == w;
    }
    add_exact(r, "mirror graph: DFS enumeration equals transfer route", mirror);

    // sampler vs kernel: empirical two-point stone law at unequal times
    {
        int L = 4, N = 2;
        mtasep::ParryChain chain(L, N);
        double tau = 50000;
        std::mt19937_64 rng(777);
        std::poisson_distribution<long long> pois(chain.spectrum().rho * tau);
        long long n = pois(rng);
        std::uniform_real_distribution<double> unif(0.0, tau);
        std::vector<double> times(static_cast<size_t>(n));
        for (auto& t : times) t = unif(rng);
        std::sort(times.begin(), times.end());
        long long s = chain.sample_stationary_state(rng);
        std::vector<long long> state_after(static_cast<size_t>(n));
        for (long long i = 0; i < n; ++i) s = state_after[static_cast<size_t>(i)] = chain.step(s, rng).first;
        double worst = 0;
        for (int dk : {0, 1}) {
            double dt = 0.5, du = 0.25;
            long long hits = 0, total = 0;
            size_t p1 = 0, p2 = 0;
            for (double u = times.empty() ? tau : times[0] + 1e-9; u + dt < tau; u += du) {
                while (p1 < static_cast<size_t>(n) && times[p1] <= u) ++p1;
                while (p2 < static_cast<size_t>(n) && times[p2] <= u + dt) ++p2;
                auto occ1 = chain.transition().state(state_after[p1 - 1]).occupied;
                auto occ2 = chain.transition().state(state_after[p2 - 1]).occupied;
                bool o1 = std::find(occ1.begin(), occ1.end(), 0) != occ1.end();
                bool o2 = std::find(occ2.begin(), occ2.end(), dk) != occ2.end();
                hits += (o1 && o2) ? 1 : 0;
                ++total;
            }
            double empirical = static_cast<double>(hits) / static_cast<double>(total);
            worst = std::max(worst,
                             std::abs(empirical - stone_correlation({{0.0, 0}, {0.5, dk}}, L, N)));
        }
        add(r, "frozen sampler matches two-point stone determinants", worst, 1e-2);
    }
    return r;
}

inline Report verify_shape() {
    using namespace maya::shape;
    Report r{"shape", {}};

    double even = 0;
    for (double xi = 0.05; xi < 1.0; xi += 0.05)
        even = std::max(even, std::abs(A0(xi) - A0(-xi)));
    for (double x = 0.1; x < 1.6; x += 0.1)
        even = std::max(even, std::abs(omega(x) - omega(-x)));
    add(r, "evenness of A0 and Omega", even, 1e-13);

    FunctionalValue v = functional_L(vkls_shape(700, 900));
    add(r, "L[Omega(t,x)] = -1/2", std::abs(v.value + 0.5), 2e-3);
    add(r, "swept area of Omega = 1", std::abs(v.swept_area - 1.0), 2e-3);

    double resid = 0;
    for (double t : {0.5, 0.75, 1.0})
        for (double frac : {-0.8, -0.3, 0.3, 0.8})
            resid = std::max(resid, std::abs(el_residual_vkls(t, frac * std::sqrt(t), 1e-3)));
    add(r, "Euler-Lagrange residual of Omega", resid, 1e-3);

    double c_cross = std::abs((v.value - constant_C()) + constant_C() - (-0.5));
    add(r, "constant C cross-check", c_cross, 2e-3);

    FunctionalValue v2 = functional_L(vkls_shape(350, 450));
    add(r, "Richardson consistency of the quadrature", std::abs(v.value - v2.value), 8e-3);
    return r;
}

inline std::vector<Report> verify_suite(const std::string& name) {
    if (name == "young") return {verify_young()};
    if (name == "mtasep") return {verify_mtasep()};
    if (name == "dimer") return {verify_dimer()};
    if (name == "shape") return {verify_shape()};
    if (name == "all") return {verify_young(), verify_mtasep(), verify_dimer(), verify_shape()};
    throw std::invalid_argument("verify: unknown suite '" + name +
                                "' (young|mtasep|dimer|shape|all)");
}

}  // namespace maya::verify
