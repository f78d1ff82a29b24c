#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "maya/mtasep.hpp"

using namespace maya::mtasep;
using maya::num::Matrix;
using std::complex;

namespace {

// rotate a state by one hole
std::vector<int> rotated(const std::vector<int>& occ, int L) {
    std::vector<int> r;
    for (int k : occ) r.push_back((k + 1) % L);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

TEST_CASE("transition structure for small circles") {
    TransitionMatrix t41(4, 1);
    CHECK(t41.states() == 4);
    for (long long s = 0; s < 4; ++s) CHECK(t41.successors(s).size() == 1);

    TransitionMatrix t42(4, 2);
    CHECK(t42.states() == 6);
    int deg2 = 0, deg1 = 0;
    for (long long s = 0; s < 6; ++s) {
        size_t d = t42.successors(s).size();
        if (d == 2) ++deg2;
        if (d == 1) ++deg1;
        // successors move exactly one stone one hole forward
        CircleState from = t42.state(s);
        for (long long u : t42.successors(s)) {
            CircleState to = t42.state(u);
            std::vector<int> gone, arrived;
            std::set<int> a(from.occupied.begin(), from.occupied.end());
            std::set<int> b(to.occupied.begin(), to.occupied.end());
            for (int k : a)
                if (!b.count(k)) gone.push_back(k);
            for (int k : b)
                if (!a.count(k)) arrived.push_back(k);
            REQUIRE(gone.size() == 1);
            REQUIRE(arrived.size() == 1);
            CHECK(arrived[0] == (gone[0] + 1) % 4);
        }
    }
    CHECK(deg2 == 2);  // the spread states {0,2} and {1,3}
    CHECK(deg1 == 4);

    TransitionMatrix t52(5, 2);
    CHECK(t52.states() == 10);
    CHECK(t52.total_edges() == 15);

    CHECK_THROWS_AS(TransitionMatrix(4, 0), std::domain_error);
    CHECK_THROWS_AS(TransitionMatrix(4, 4), std::domain_error);
    CHECK_THROWS_AS(TransitionMatrix(40, 20, 1000), std::length_error);

    CHECK(t42.period() == 4);
    CHECK(TransitionMatrix(5, 2).period() == 5);
    CHECK(TransitionMatrix(6, 3).period() == 6);
}

TEST_CASE("bitstring round trip") {
    CircleState s{4, {0, 2}};
    CHECK(s.to_bitstring() == "1010");
    CircleState t = CircleState::from_bitstring("1010");
    CHECK(t.L == 4);
    CHECK(t.occupied == std::vector<int>{0, 2});
}

TEST_CASE("closed-form entropy") {
    for (int L = 2; L <= 9; ++L) CHECK(entropy_closed(L, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(entropy_closed(4, 2) == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-14));
    for (int L = 3; L <= 9; ++L)
        CHECK(std::abs(entropy_closed(L, L - 1)) < 1e-13);
    // particle-hole symmetry
    for (int L = 2; L <= 12; ++L)
        for (int N = 1; N < L; ++N)
            CHECK(entropy_closed(L, N) == doctest::Approx(entropy_closed(L, L - N)).epsilon(1e-13));
    CHECK_THROWS_AS(entropy_closed(4, 0), std::domain_error);
    CHECK_THROWS_AS(entropy_closed(4, 4), std::domain_error);
}

TEST_CASE("power iteration recovers the Perron root") {
    ChainSpectrum s42 = spectral_radius_numeric(TransitionMatrix(4, 2));
    CHECK(std::abs(s42.rho - std::sqrt(2.0)) < 1e-10);
    ChainSpectrum s63 = spectral_radius_numeric(TransitionMatrix(6, 3));
    CHECK(std::abs(s63.rho - 2.0) < 1e-10);
    ChainSpectrum s51 = spectral_radius_numeric(TransitionMatrix(5, 1));
    CHECK(std::abs(s51.rho - 1.0) < 1e-12);
    CHECK(s42.period == 4);

    for (int L = 2; L <= 9; ++L)
        for (int N = 1; N < L; ++N) {
            ChainSpectrum sp = spectral_radius_numeric(TransitionMatrix(L, N));
            CHECK(std::abs(sp.entropy - entropy_closed(L, N)) < 1e-10);
            for (double x : sp.left_vec) CHECK(x > 0);
            for (double x : sp.right_vec) CHECK(x > 0);
        }
}

TEST_CASE("parry measure on small circles") {
    TransitionMatrix t51(5, 1);
    auto p51 = parry_measure(t51);
    for (double x : p51) CHECK(x == doctest::Approx(0.2).epsilon(1e-12));

    TransitionMatrix t42(4, 2);
    auto p42 = parry_measure(t42);
    for (long long s = 0; s < t42.states(); ++s) {
        CircleState st = t42.state(s);
        bool spread = (st.occupied[1] - st.occupied[0]) == 2;
        CHECK(p42[static_cast<size_t>(s)] ==
              doctest::Approx(spread ? 0.25 : 0.125).epsilon(1e-10));
    }

    // rotation invariance on (5,2)
    TransitionMatrix t52(5, 2);
    auto p52 = parry_measure(t52);
    for (long long s = 0; s < t52.states(); ++s) {
        CircleState st = t52.state(s);
        long long r = t52.rank(rotated(st.occupied, 5));
        CHECK(p52[static_cast<size_t>(s)] ==
              doctest::Approx(p52[static_cast<size_t>(r)]).epsilon(1e-9));
    }
}

TEST_CASE("projection kernel is a Hermitian projector, both parities") {
    for (int L : {5, 6, 7, 8}) {
        for (int N = 1; N < L; ++N) {
            ProjectionKernel K = projection_kernel(L, N);
            CHECK(std::abs(K.value(0).real() - static_cast<double>(N) / L) < 1e-13);
            CHECK(std::abs(K.value(0).imag()) < 1e-13);
            Matrix<complex<double>> P(L, L);
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b) P(a, b) = K.value(a - b);
            // Hermitian
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b)
                    CHECK(std::abs(P(a, b) - std::conj(P(b, a))) < 1e-12);
            // idempotent
            Matrix<complex<double>> P2 = P * P;
            double err = 0;
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b) err = std::max(err, std::abs(P2(a, b) - P(a, b)));
            CHECK(err < 1e-12);
            // trace = N
            complex<double> tr = 0;
            for (int a = 0; a < L; ++a) tr += P(a, a);
            CHECK(std::abs(tr - static_cast<double>(N)) < 1e-11);
        }
    }
}

TEST_CASE("window shift leaves principal minors unchanged") {
    for (int L : {5, 6}) {
        for (int N = 1; N < L; ++N) {
            TransitionMatrix T(L, N);
            ProjectionKernel K0 = projection_kernel(L, N, 0);
            for (int off : {1, 2, 5}) {
                ProjectionKernel K1 = projection_kernel(L, N, off);
                for (long long s = 0; s < T.states(); ++s) {
                    CircleState st = T.state(s);
                    double a = determinantal_state_probability(K0, st.occupied);
                    double b = determinantal_state_probability(K1, st.occupied);
                    CHECK(std::abs(a - b) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("determinantal law equals the Parry measure") {
    CircleState s13 = CircleState::from_bitstring("0101");
    CircleState s12 = CircleState::from_bitstring("0110");
    ProjectionKernel K42 = projection_kernel(4, 2);
    CHECK(determinantal_state_probability(K42, s13.occupied) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(determinantal_state_probability(K42, s12.occupied) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_THROWS_AS(determinantal_state_probability(K42, {1}), std::invalid_argument);

    for (int L = 2; L <= 8; ++L) {
        for (int N = 1; N < L; ++N) {
            TransitionMatrix T(L, N);
            auto parry = parry_measure(T);
            ProjectionKernel K = projection_kernel(L, N);
            double total = 0, max_diff = 0;
            for (long long s = 0; s < T.states(); ++s) {
                double det = determinantal_state_probability(K, T.state(s).occupied);
                total += det;
                max_diff = std::max(max_diff, std::abs(det - parry[static_cast<size_t>(s)]));
            }
            CHECK(max_diff < 1e-10);
            CHECK(std::abs(total - 1.0) < 1e-10);  // mass adds up over all N-point sets
        }
    }
}

TEST_CASE("sine kernel and the large-L limit") {
    CHECK(sine_kernel(0, 0.3) == doctest::Approx(0.3));
    for (long long k : {2, 4, 6}) CHECK(std::abs(sine_kernel(k, 0.5)) < 1e-15);
    CHECK_THROWS_AS(sine_kernel(1, 0.0), std::domain_error);

    for (int L : {50, 500, 2000}) {
        int N = static_cast<int>(0.3 * L);
        ProjectionKernel K = projection_kernel(L, N);
        for (long long k = 1; k <= 5; ++k) {
            double target = sine_kernel(k, 0.3);
            CHECK(std::abs(K.value(k) - target) <= 5.0 / L);
        }
    }
    // rate O(1/L) for fixed k: errors shrink by ~10x per decade
    double e10 = std::abs(projection_kernel(11, 3).value(1) - sine_kernel(1, 3.0 / 11));
    double e1000 = std::abs(projection_kernel(1001, 273).value(1) - sine_kernel(1, 273.0 / 1001));
    CHECK(e1000 < e10);
}

TEST_CASE("parry chain stochasticity and stationarity") {
    for (int L = 3; L <= 8; ++L) {
        for (int N : {1, L / 2, L - 1}) {
            if (N <= 0 || N >= L) continue;
            ParryChain chain(L, N);
            const auto& sp = chain.spectrum();
            const auto& T = chain.transition();
            // rows of the Parry kernel sum to 1 (u-eigenrelation)
            for (long long s = 0; s < T.states(); ++s) {
                double sum = 0;
                for (long long t : T.successors(s))
                    sum += sp.right_vec[static_cast<size_t>(t)] /
                           (sp.rho * sp.right_vec[static_cast<size_t>(s)]);
                CHECK(std::abs(sum - 1.0) < 1e-10);
            }
            // stationary vector is the Parry measure
            const auto& pi = chain.stationary();
            std::vector<double> next(pi.size(), 0.0);
            for (long long s = 0; s < T.states(); ++s) {
                auto probs = chain.row_probabilities(s);
                const auto& succ = T.successors(s);
                for (size_t i = 0; i < succ.size(); ++i)
                    next[static_cast<size_t>(succ[i])] += pi[static_cast<size_t>(s)] * probs[i];
            }
            for (size_t i = 0; i < pi.size(); ++i) CHECK(std::abs(next[i] - pi[i]) < 1e-10);
        }
    }
}

TEST_CASE("trajectory sampler: deterministic rotation and empirical law") {
    ParryChain rot(6, 1);
    auto traj = simulate_chain(rot, 12, 99);
    for (size_t i = 1; i < traj.size(); ++i) {
        CircleState prev = rot.transition().state(traj[i - 1]);
        CircleState cur = rot.transition().state(traj[i]);
        CHECK(cur.occupied[0] == (prev.occupied[0] + 1) % 6);
    }

    ParryChain chain(4, 2);
    const long long steps = 1000000;
    auto t = simulate_chain(chain, steps, 2024);
    std::vector<long long> counts(6, 0);
    for (long long s : t) counts[static_cast<size_t>(s)]++;
    for (long long s = 0; s < 6; ++s) {
        CircleState st = chain.transition().state(s);
        bool spread = (st.occupied[1] - st.occupied[0]) == 2;
        double expect = spread ? 0.25 : 0.125;
        double got = static_cast<double>(counts[static_cast<size_t>(s)]) / (steps + 1);
        double sigma = std::sqrt(expect * (1 - expect) / steps);
        CHECK(std::abs(got - expect) <= 3 * sigma);
    }
}

TEST_CASE("frozen process: Poisson rate e^h") {
    double tau = 10000;
    ParryChain c61(6, 1);
    auto ev1 = sample_frozen_process(c61, tau, 11);
    double rate1 = ev1.size() / tau;
    CHECK(std::abs(rate1 - 1.0) <= 3 * std::sqrt(1.0 * tau) / tau);

    ParryChain c42(4, 2);
    auto ev2 = sample_frozen_process(c42, tau, 12);
    double r2 = std::sqrt(2.0);
    CHECK(std::abs(ev2.size() / tau - r2) <= 3 * std::sqrt(r2 * tau) / tau);

    ParryChain c63(6, 3);
    auto ev3 = sample_frozen_process(c63, tau, 13);
    CHECK(std::abs(ev3.size() / tau - 2.0) <= 3 * std::sqrt(2.0 * tau) / tau);

    // events are time-sorted with positions on the circle
    for (size_t i = 1; i < ev3.size(); ++i) CHECK(ev3[i].time >= ev3[i - 1].time);
    for (const auto& e : ev3) {
        CHECK(e.position >= 0);
        CHECK(e.position < 6);
    }
    CHECK_THROWS_AS(sample_frozen_process(c63, -1.0, 5), std::domain_error);
}
