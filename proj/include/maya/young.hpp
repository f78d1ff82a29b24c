#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maya/bigint.hpp"
#include "maya/matrix.hpp"

namespace maya::young {

using num::BigInt;
using num::Rational;

// Weakly decreasing positive parts; the empty partition is valid.
struct Partition {
    std::vector<long long> parts;

    Partition() = default;
    explicit Partition(std::vector<long long> p) : parts(std::move(p)) {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
            if (i + 1 < parts.size() && parts[i] < parts[i + 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }
    Partition(std::initializer_list<long long> p) : Partition(std::vector<long long>(p)) {}

    long long size() const {
        long long n = 0;
        for (long long p : parts) n += p;
        return n;
    }
    size_t rows() const { return parts.size(); }
    long long part(size_t i) const { return i < parts.size() ? parts[i] : 0; }
    bool empty() const { return parts.empty(); }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }

    // "3,2,1"; the empty partition serializes as "-".
    std::string to_string() const {
        if (parts.empty()) return "-";
        std::string s;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts[i]);
        }
        return s;
    }
    static Partition parse(const std::string& s) {
        if (s == "-" || s.empty()) return Partition();
        std::vector<long long> p;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw std::invalid_argument("Partition: bad serialization");
            p.push_back(std::stoll(tok));
        }
        return Partition(p);
    }
};

inline bool contains(const Partition& outer, const Partition& inner) {
    for (size_t i = 0; i < inner.rows(); ++i)
        if (inner.parts[i] > outer.part(i)) return false;
    return true;
}

struct SkewShape {
    Partition outer, inner;
    SkewShape(Partition out, Partition in) : outer(std::move(out)), inner(std::move(in)) {
        if (!contains(outer, inner))
            throw std::invalid_argument("SkewShape: inner " + inner.to_string() +
                                        " not contained in outer " + outer.to_string());
    }
    long long cells() const { return outer.size() - inner.size(); }
};

struct Cell {
    long long row, col;  // 0-based
    friend bool operator==(const Cell& a, const Cell& b) { return a.row == b.row && a.col == b.col; }
};

// Path in the Young graph recorded as the addition order of its cells.
struct PathTableau {
    SkewShape shape;
    std::vector<Cell> order;
};

inline Partition conjugate(const Partition& p) {
    if (p.empty()) return Partition();
    std::vector<long long> c(static_cast<size_t>(p.parts[0]), 0);
    for (long long part : p.parts)
        for (long long j = 0; j < part; ++j) ++c[static_cast<size_t>(j)];
    return Partition(c);
}

inline std::vector<Cell> addable_cells(const Partition& p) {
    std::vector<Cell> cells;
    for (size_t r = 0; r <= p.rows(); ++r) {
        if (r == 0 || p.part(r - 1) > p.part(r))
            cells.push_back({static_cast<long long>(r), p.part(r)});
    }
    return cells;
}

inline std::vector<Cell> removable_cells(const Partition& p) {
    std::vector<Cell> cells;
    for (size_t r = 0; r < p.rows(); ++r) {
        if (r + 1 == p.rows() || p.parts[r] > p.parts[r + 1])
            cells.push_back({static_cast<long long>(r), p.parts[r] - 1});
    }
    return cells;
}

inline Partition add_cell(const Partition& p, size_t row) {
    std::vector<long long> q = p.parts;
    if (row == q.size()) q.push_back(1);
    else q[row] += 1;
    return Partition(q);
}

inline Partition remove_cell(const Partition& p, size_t row) {
    std::vector<long long> q = p.parts;
    q[row] -= 1;
    return Partition(q);
}

inline long long hook_length(const Partition& p, const Partition& conj, long long r, long long c) {
    return (p.parts[static_cast<size_t>(r)] - c) + (conj.parts[static_cast<size_t>(c)] - r) - 1;
}

// dim lambda = n! / prod hooks; equals the number of Young-graph paths from
// the empty diagram.
inline BigInt dimension(const Partition& p) {
    long long n = p.size();
    if (n == 0) return BigInt(1);
    Partition conj = conjugate(p);
    BigInt hooks(1);
    for (size_t r = 0; r < p.rows(); ++r)
        for (long long c = 0; c < p.parts[r]; ++c)
            hooks *= BigInt(hook_length(p, conj, static_cast<long long>(r), c));
    return BigInt::factorial(static_cast<unsigned>(n)) / hooks;
}

inline std::vector<Partition> partitions_of(long long n) {
    std::vector<Partition> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, long long rem, long long maxpart) -> void {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (long long k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rem - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);
    return out;
}

// ---------------------------------------------------------------------------
// Maya words

// Occupancy over the window of half-integer positions lo+1/2, ..., hi-1/2.
// Left of the window everything is a stone, right of it everything is a hole.
struct MayaWord {
    long long lo, hi;
    std::vector<bool> stones;

    long long width() const { return hi - lo; }
    double position(size_t i) const { return lo + static_cast<double>(i) + 0.5; }
};

// Reading the Russian-notation boundary left to right, a down-edge is a stone
// and an up-edge a hole; stone positions are lambda_i - i + 1/2.
inline MayaWord maya_encode(const Partition& p, long long lo, long long hi) {
    long long nrows = static_cast<long long>(p.rows());
    long long top = p.empty() ? 0 : p.parts[0];
    if (lo > -nrows || hi < top)
        throw std::invalid_argument("maya_encode: window [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "] too narrow; need at least [" +
                                    std::to_string(-nrows) + "," + std::to_string(top) + "]");
    MayaWord w{lo, hi, std::vector<bool>(static_cast<size_t>(hi - lo), false)};
    // positions are encoded via 2*pos to stay integral: slot i holds 2*(lo+i)+1
    std::vector<long long> stone2;  // doubled stone positions within window
    for (long long i = 1; i <= nrows; ++i) stone2.push_back(2 * (p.parts[i - 1] - i) + 1);
    for (long long i = nrows + 1;; ++i) {
        long long s2 = 2 * (-i) + 1;
        if (s2 < 2 * lo + 1) break;
        stone2.push_back(s2);
    }
    for (long long s2 : stone2) {
        if (s2 < 2 * lo + 1 || s2 > 2 * hi - 1) continue;
        w.stones[static_cast<size_t>((s2 - (2 * lo + 1)) / 2)] = true;
    }
    return w;
}

inline Partition maya_decode(const MayaWord& w) {
    // part for each stone = number of holes strictly to its left
    std::vector<long long> parts;
    long long holes_left = 0;
    std::vector<long long> holes_before(w.stones.size());
    for (size_t i = 0; i < w.stones.size(); ++i) {
        holes_before[i] = holes_left;
        if (!w.stones[i]) ++holes_left;
    }
    for (size_t i = w.stones.size(); i-- > 0;)
        if (w.stones[i] && holes_before[i] > 0) parts.push_back(holes_before[i]);
    return Partition(parts);
}

// ---------------------------------------------------------------------------
// Skew tableau counting: Young-graph DP and the factorial determinant, two
// independent routes that must agree exactly.

namespace detail {
struct SkewCounter {
    const Partition& outer;
    std::map<std::vector<long long>, BigInt> memo;

    BigInt count(const Partition& mu) {
        if (mu == outer) return BigInt(1);
        auto it = memo.find(mu.parts);
        if (it != memo.end()) return it->second;
        BigInt total(0);
        for (const Cell& c : addable_cells(mu)) {
            if (mu.part(static_cast<size_t>(c.row)) + 1 > outer.part(static_cast<size_t>(c.row)))
                continue;
            total += count(add_cell(mu, static_cast<size_t>(c.row)));
        }
        memo[mu.parts] = total;
        return total;
    }
};
}  // namespace detail

inline BigInt count_skew_dp(const SkewShape& s) {
    detail::SkewCounter counter{s.outer, {}};
    return counter.count(s.inner);
}

// F^{lambda/mu} = n! det( 1/(lambda_i - mu_j - i + j)! ), exact rationals.
inline BigInt count_skew_det(const SkewShape& s) {
    size_t l = s.outer.rows();
    long long n = s.cells();
    if (l == 0) return BigInt(1);
    num::Matrix<Rational> m(l, l);
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
            long long a = s.outer.part(i) - s.inner.part(j) - static_cast<long long>(i) +
                          static_cast<long long>(j);
            m(i, j) = a < 0 ? Rational(0)
                            : Rational(BigInt(1), BigInt::factorial(static_cast<unsigned>(a)));
        }
    Rational det = num::exact_det(m);
    Rational result = Rational(BigInt::factorial(static_cast<unsigned>(n))) * det;
    if (result.den() != BigInt(1) || result.sign() < 0)
        throw std::logic_error("count_skew_det: non-integral determinant value");
    return result.num();
}

inline BigInt count_skew(const SkewShape& s) {
    BigInt dp = count_skew_dp(s);
    BigInt det = count_skew_det(s);
    if (dp != det)
        throw std::logic_error("count_skew: DP and determinant routes disagree on " +
                               s.outer.to_string() + "/" + s.inner.to_string());
    return dp;
}

// ---------------------------------------------------------------------------
// Plancherel transition structure

// p_{lambda -> lambda'} = dim lambda' / (n dim lambda), n = |lambda| + 1.
inline std::vector<std::pair<Partition, Rational>> forward_step_distribution(const Partition& p) {
    BigInt dim_p = dimension(p);
    BigInt n(p.size() + 1);
    std::vector<std::pair<Partition, Rational>> dist;
    for (const Cell& c : addable_cells(p)) {
        Partition q = add_cell(p, static_cast<size_t>(c.row));
        dist.emplace_back(q, Rational(dimension(q), n * dim_p));
    }
    return dist;
}

inline std::vector<std::pair<Partition, Rational>> backward_step_distribution(const Partition& p) {
    if (p.empty())
        throw std::domain_error("backward_step_distribution: empty partition has no predecessor");
    BigInt dim_p = dimension(p);
    std::vector<std::pair<Partition, Rational>> dist;
    for (const Cell& c : removable_cells(p)) {
        Partition q = remove_cell(p, static_cast<size_t>(c.row));
        dist.emplace_back(q, Rational(dimension(q), dim_p));
    }
    return dist;
}

inline bool plancherel_identity_check(long long n, long long bound = 14) {
    if (n > bound) throw std::domain_error("plancherel_identity_check: n exceeds bound");
    BigInt sum(0);
    for (const Partition& p : partitions_of(n)) {
        BigInt d = dimension(p);
        sum += d * d;
    }
    return sum == BigInt::factorial(static_cast<unsigned>(n));
}

// ---------------------------------------------------------------------------
// Samplers (deterministic per seed; probabilities evaluated in doubles at
// sampling time)

// dim(lambda + cell)/((n+1) dim lambda) as a product of hook ratios h/(h+1)
// over the new cell's row prefix and column prefix.
inline double forward_step_weight(const Partition& p, const Partition& conj, const Cell& c) {
    double w = 1.0;
    for (long long j = 0; j < c.col; ++j) {
        double h = static_cast<double>(hook_length(p, conj, c.row, j));
        w *= h / (h + 1.0);
    }
    for (long long i = 0; i < c.row; ++i) {
        double h = static_cast<double>(hook_length(p, conj, i, c.col));
        w *= h / (h + 1.0);
    }
    return w;
}

inline PathTableau sample_plancherel_path(long long n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Partition cur;
    std::vector<Cell> order;
    order.reserve(static_cast<size_t>(n));
    for (long long k = 0; k < n; ++k) {
        Partition conj = conjugate(cur);
        std::vector<Cell> cells = addable_cells(cur);
        std::vector<double> w(cells.size());
        double total = 0;
        for (size_t i = 0; i < cells.size(); ++i) {
            // guard: hook_length needs the cell inside; weight uses prefixes only
            w[i] = forward_step_weight(cur, conj, cells[i]);
            total += w[i];
        }
        double u = unif(rng) * total;
        size_t pick = 0;
        for (; pick + 1 < cells.size(); ++pick) {
            u -= w[pick];
            if (u <= 0) break;
        }
        order.push_back(cells[pick]);
        cur = add_cell(cur, static_cast<size_t>(cells[pick].row));
    }
    return PathTableau{SkewShape(cur, Partition()), std::move(order)};
}

// Uniform over skew standard tableaux via count-proportional transitions
// P(add c) = F^{outer/(mu+c)} / F^{outer/mu}.
inline PathTableau sample_uniform_skew_path(const SkewShape& s, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    detail::SkewCounter counter{s.outer, {}};
    Partition cur = s.inner;
    std::vector<Cell> order;
    while (cur != s.outer) {
        std::vector<Cell> cells;
        std::vector<double> w;
        double total = 0;
        for (const Cell& c : addable_cells(cur)) {
            if (cur.part(static_cast<size_t>(c.row)) + 1 > s.outer.part(static_cast<size_t>(c.row)))
                continue;
            BigInt cnt = counter.count(add_cell(cur, static_cast<size_t>(c.row)));
            if (cnt.is_zero()) continue;
            cells.push_back(c);
            w.push_back(cnt.to_double());
            total += w.back();
        }
        double u = unif(rng) * total;
        size_t pick = 0;
        for (; pick + 1 < cells.size(); ++pick) {
            u -= w[pick];
            if (u <= 0) break;
        }
        order.push_back(cells[pick]);
        cur = add_cell(cur, static_cast<size_t>(cells[pick].row));
    }
    return PathTableau{s, std::move(order)};
}

}  // namespace maya::young
