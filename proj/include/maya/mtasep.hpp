#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "maya/matrix.hpp"

namespace maya::mtasep {

using std::complex;

// N stones in L holes on the discrete circle; occupied is sorted.
struct CircleState {
    int L = 0;
    std::vector<int> occupied;

    std::string to_bitstring() const {
        std::string s(static_cast<size_t>(L), '0');
        for (int k : occupied) s[static_cast<size_t>(k)] = '1';
        return s;
    }
    static CircleState from_bitstring(const std::string& s) {
        CircleState st;
        st.L = static_cast<int>(s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') st.occupied.push_back(static_cast<int>(i));
            else if (s[i] != '0') throw std::invalid_argument("CircleState: bad bitstring");
        }
        return st;
    }
};

namespace detail {

inline std::vector<std::vector<unsigned long long>> binomial_table(int n) {
    std::vector<std::vector<unsigned long long>> c(n + 1, std::vector<unsigned long long>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return c;
}

}  // namespace detail

// Sparse 0/1 transition structure of the chain: one stone moves k -> k+1 mod L
// into an empty hole. States are occupancy sets in colex order.
class TransitionMatrix {
public:
    TransitionMatrix(int L, int N, long long state_cap = 1000000) : L_(L), N_(N) {
        if (N <= 0 || N >= L) throw std::domain_error("TransitionMatrix: need 0 < N < L");
        binom_ = detail::binomial_table(L + 1);
        unsigned long long count = binom_[L][N];
        if (count > static_cast<unsigned long long>(state_cap))
            throw std::length_error("TransitionMatrix: C(L,N) exceeds state cap");
        size_ = static_cast<long long>(count);
        succ_.resize(static_cast<size_t>(size_));
        moved_.resize(static_cast<size_t>(size_));
        std::vector<int> occ(static_cast<size_t>(N));
        for (long long s = 0; s < size_; ++s) {
            unrank(s, occ);
            std::vector<bool> filled(static_cast<size_t>(L), false);
            for (int k : occ) filled[static_cast<size_t>(k)] = true;
            for (int k : occ) {
                int next = (k + 1) % L;
                if (filled[static_cast<size_t>(next)]) continue;
                std::vector<int> occ2 = occ;
                for (int& x : occ2)
                    if (x == k) x = next;
                std::sort(occ2.begin(), occ2.end());
                succ_[static_cast<size_t>(s)].push_back(rank(occ2));
                moved_[static_cast<size_t>(s)].push_back(k);
            }
        }
    }

    int L() const { return L_; }
    int N() const { return N_; }
    long long states() const { return size_; }
    const std::vector<long long>& successors(long long s) const {
        return succ_[static_cast<size_t>(s)];
    }
    // hole the stone departed from, aligned with successors()
    const std::vector<int>& moved_stones(long long s) const {
        return moved_[static_cast<size_t>(s)];
    }

    long long rank(const std::vector<int>& occ) const {
        unsigned long long r = 0;
        for (size_t i = 0; i < occ.size(); ++i) r += binom_[occ[i]][i + 1];
        return static_cast<long long>(r);
    }
    void unrank(long long s, std::vector<int>& occ) const {
        unsigned long long r = static_cast<unsigned long long>(s);
        for (int i = N_; i >= 1; --i) {
            int c = i - 1;
            while (c + 1 < L_ && binom_[c + 1][i] <= r) ++c;
            occ[static_cast<size_t>(i - 1)] = c;
            r -= binom_[c][i];
        }
    }
    CircleState state(long long s) const {
        std::vector<int> occ(static_cast<size_t>(N_));
        unrank(s, occ);
        return CircleState{L_, occ};
    }

    long long total_edges() const {
        long long e = 0;
        for (const auto& v : succ_) e += static_cast<long long>(v.size());
        return e;
    }

    // gcd of cycle lengths; the chain is transitive, so BFS labels suffice
    int period() const {
        std::vector<long long> depth(static_cast<size_t>(size_), -1);
        std::vector<long long> queue{0};
        depth[0] = 0;
        long long g = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            long long s = queue[qi];
            for (long long t : succ_[static_cast<size_t>(s)]) {
                if (depth[static_cast<size_t>(t)] < 0) {
                    depth[static_cast<size_t>(t)] = depth[static_cast<size_t>(s)] + 1;
                    queue.push_back(t);
                } else {
                    g = std::gcd(g, depth[static_cast<size_t>(s)] + 1 - depth[static_cast<size_t>(t)]);
                }
            }
        }
        return static_cast<int>(std::abs(g));
    }

private:
    int L_, N_;
    long long size_ = 0;
    std::vector<std::vector<unsigned long long>> binom_;
    std::vector<std::vector<long long>> succ_;
    std::vector<std::vector<int>> moved_;
};

inline double entropy_closed(int L, int N) {
    if (N <= 0 || N >= L) throw std::domain_error("entropy_closed: need 0 < N < L");
    double pi = std::numbers::pi;
    return std::log(std::sin(pi * N / L) / std::sin(pi / L));
}

struct ChainSpectrum {
    int L = 0, N = 0;
    double rho = 0;
    double entropy = 0;
    std::vector<double> left_vec, right_vec;  // normalized to sum 1
    int period = 0;
    long long iterations = 0;
    double residual = 0;
};

// Perron data by power iteration on T + I; the identity shift breaks the
// rotational period-L symmetry of the spectrum.
inline ChainSpectrum spectral_radius_numeric(const TransitionMatrix& T, double tol = 1e-13,
                                             long long iter_cap = 1000000) {
    long long n = T.states();
    std::vector<double> v(static_cast<size_t>(n), 1.0 / static_cast<double>(n));
    std::vector<double> w(static_cast<size_t>(n));
    // apply_right: w = (T+I)vec, converging to the right eigenvector;
    // otherwise w = vec^T (T+I), converging to the left one.
    auto iterate = [&](bool apply_right, std::vector<double>& vec, double& lambda,
                       long long& iters, double& res) {
        for (iters = 1; iters <= iter_cap; ++iters) {
            std::fill(w.begin(), w.end(), 0.0);
            for (long long s = 0; s < n; ++s) {
                double vs = vec[static_cast<size_t>(s)];
                w[static_cast<size_t>(s)] += vs;
                for (long long t : T.successors(s)) {
                    if (apply_right) w[static_cast<size_t>(s)] += vec[static_cast<size_t>(t)];
                    else w[static_cast<size_t>(t)] += vs;
                }
            }
            double sw = std::accumulate(w.begin(), w.end(), 0.0);
            double sv = std::accumulate(vec.begin(), vec.end(), 0.0);
            lambda = sw / sv;
            res = 0;
            for (long long s = 0; s < n; ++s)
                res = std::max(res, std::abs(w[static_cast<size_t>(s)] -
                                             lambda * vec[static_cast<size_t>(s)]));
            for (long long s = 0; s < n; ++s) vec[static_cast<size_t>(s)] = w[static_cast<size_t>(s)] / sw;
            if (res <= tol * lambda) return;
        }
        throw std::runtime_error("spectral_radius_numeric: no convergence, residual " +
                                 std::to_string(res));
    };

    ChainSpectrum sp;
    sp.L = T.L();
    sp.N = T.N();
    double lambda_r = 0, lambda_l = 0, res_r = 0, res_l = 0;
    long long it_r = 0, it_l = 0;
    // right vector: (T+I) u = (1+rho) u
    iterate(true, v, lambda_r, it_r, res_r);
    sp.right_vec = v;
    std::vector<double> lv(static_cast<size_t>(n), 1.0 / static_cast<double>(n));
    std::swap(v, lv);
    iterate(false, v, lambda_l, it_l, res_l);
    sp.left_vec = v;
    sp.rho = 0.5 * (lambda_r + lambda_l) - 1.0;
    sp.entropy = std::log(sp.rho);
    sp.period = T.period();
    sp.iterations = it_r + it_l;
    sp.residual = std::max(res_r, res_l);
    double sl = std::accumulate(sp.left_vec.begin(), sp.left_vec.end(), 0.0);
    double sr = std::accumulate(sp.right_vec.begin(), sp.right_vec.end(), 0.0);
    for (auto& x : sp.left_vec) x /= sl;
    for (auto& x : sp.right_vec) x /= sr;
    return sp;
}

// Maximal-entropy state probabilities: proportional to left_s * right_s.
inline std::vector<double> parry_measure(const TransitionMatrix& T) {
    ChainSpectrum sp = spectral_radius_numeric(T);
    std::vector<double> p(sp.left_vec.size());
    double total = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        p[i] = sp.left_vec[i] * sp.right_vec[i];
        total += p[i];
    }
    for (auto& x : p) x /= total;
    return p;
}

// Projection onto N consecutive Fourier harmonics: r in [-m, m] for N = 2m+1,
// r in [-m, m-1] for N = 2m. value(d) = (1/L) sum_r exp(-2 pi i r d / L).
struct ProjectionKernel {
    int L = 0, N = 0;
    int offset = 0;  // window shift, for gauge-invariance checks
    std::vector<complex<double>> values;

    const complex<double>& value(long long d) const {
        long long m = ((d % L) + L) % L;
        return values[static_cast<size_t>(m)];
    }
};

inline ProjectionKernel projection_kernel(int L, int N, int offset = 0) {
    if (N <= 0 || N >= L) throw std::domain_error("projection_kernel: need 0 < N < L");
    ProjectionKernel K;
    K.L = L;
    K.N = N;
    K.offset = offset;
    K.values.resize(static_cast<size_t>(L));
    int m = N / 2;
    int r_lo = -m + offset;
    int r_hi = (N % 2 == 1 ? m : m - 1) + offset;
    double pi = std::numbers::pi;
    for (int d = 0; d < L; ++d) {
        complex<double> sum = 0;
        for (int r = r_lo; r <= r_hi; ++r)
            sum += std::exp(complex<double>(0, -2.0 * pi * r * d / L));
        K.values[static_cast<size_t>(d)] = sum / static_cast<double>(L);
    }
    return K;
}

// det of the principal minor at the occupied positions; the projection law
// puts mass only on N-point sets.
inline double determinantal_state_probability(const ProjectionKernel& K,
                                              const std::vector<int>& occupied) {
    if (static_cast<int>(occupied.size()) != K.N)
        throw std::invalid_argument("determinantal_state_probability: need exactly N positions");
    size_t n = occupied.size();
    num::Matrix<complex<double>> m(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) m(a, b) = K.value(occupied[a] - occupied[b]);
    complex<double> det = num::LU<complex<double>>(m).det();
    if (std::abs(det.imag()) > 1e-9)
        throw std::runtime_error("determinantal_state_probability: non-real determinant");
    return det.real();
}

inline double sine_kernel(long long k, double a) {
    if (a <= 0 || a >= 1) throw std::domain_error("sine_kernel: need 0 < a < 1");
    if (k == 0) return a;
    double pi = std::numbers::pi;
    return std::sin(pi * a * static_cast<double>(k)) / (pi * static_cast<double>(k));
}

// Parry transition kernel p(s -> s') = T_{ss'} u_{s'} / (rho u_s), rows
// renormalized to absorb eigenvector residual.
class ParryChain {
public:
    ParryChain(int L, int N, long long state_cap = 1000000)
        : T_(L, N, state_cap), sp_(spectral_radius_numeric(T_)) {
        stationary_ = parry_measure_from(sp_);
    }

    const TransitionMatrix& transition() const { return T_; }
    const ChainSpectrum& spectrum() const { return sp_; }
    const std::vector<double>& stationary() const { return stationary_; }

    std::vector<double> row_probabilities(long long s) const {
        const auto& succ = T_.successors(s);
        std::vector<double> p(succ.size());
        double total = 0;
        for (size_t i = 0; i < succ.size(); ++i) {
            p[i] = sp_.right_vec[static_cast<size_t>(succ[i])];
            total += p[i];
        }
        for (auto& x : p) x /= total;
        return p;
    }

    long long sample_stationary_state(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double u = unif(rng);
        for (size_t i = 0; i < stationary_.size(); ++i) {
            u -= stationary_[i];
            if (u <= 0) return static_cast<long long>(i);
        }
        return static_cast<long long>(stationary_.size()) - 1;
    }

    // one step; returns (next state, departed hole)
    std::pair<long long, int> step(long long s, std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const auto& succ = T_.successors(s);
        std::vector<double> p = row_probabilities(s);
        double u = unif(rng);
        size_t pick = p.size() - 1;
        for (size_t i = 0; i < p.size(); ++i) {
            u -= p[i];
            if (u <= 0) { pick = i; break; }
        }
        return {succ[pick], T_.moved_stones(s)[pick]};
    }

private:
    TransitionMatrix T_;
    ChainSpectrum sp_;
    std::vector<double> stationary_;

    static std::vector<double> parry_measure_from(const ChainSpectrum& sp) {
        std::vector<double> p(sp.left_vec.size());
        double total = 0;
        for (size_t i = 0; i < p.size(); ++i) {
            p[i] = sp.left_vec[i] * sp.right_vec[i];
            total += p[i];
        }
        for (auto& x : p) x /= total;
        return p;
    }
};

inline std::vector<long long> simulate_chain(const ParryChain& chain, long long steps,
                                             uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<long long> traj;
    traj.reserve(static_cast<size_t>(steps) + 1);
    long long s = chain.sample_stationary_state(rng);
    traj.push_back(s);
    for (long long i = 0; i < steps; ++i) {
        s = chain.step(s, rng).first;
        traj.push_back(s);
    }
    return traj;
}

struct JumpEvent {
    double time;
    int position;  // hole the stone departed from
};

// Frozen-jump limit: Poisson(e^h * horizon) many events, jump order from the
// stationary Parry chain, times sorted uniforms on [0, horizon].
inline std::vector<JumpEvent> sample_frozen_process(const ParryChain& chain, double horizon,
                                                    uint64_t seed) {
    if (horizon <= 0) throw std::domain_error("sample_frozen_process: horizon must be positive");
    std::mt19937_64 rng(seed);
    double rate = chain.spectrum().rho;
    std::poisson_distribution<long long> pois(rate * horizon);
    long long n = pois(rng);
    std::uniform_real_distribution<double> unif(0.0, horizon);
    std::vector<double> times(static_cast<size_t>(n));
    for (auto& t : times) t = unif(rng);
    std::sort(times.begin(), times.end());
    std::vector<JumpEvent> events;
    events.reserve(static_cast<size_t>(n));
    long long s = chain.sample_stationary_state(rng);
    for (long long i = 0; i < n; ++i) {
        auto [next, from] = chain.step(s, rng);
        events.push_back({times[static_cast<size_t>(i)], from});
        s = next;
    }
    return events;
}

}  // namespace maya::mtasep
