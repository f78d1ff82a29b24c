#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "maya/young.hpp"

using namespace maya::young;
using maya::num::BigInt;
using maya::num::Rational;

namespace {

// Independent oracle: count Young-graph paths empty -> target by recursion
// over cell removals.
long long brute_path_count(const Partition& p) {
    if (p.size() == 0) return 1;
    long long total = 0;
    for (const Cell& c : removable_cells(p))
        total += brute_path_count(remove_cell(p, static_cast<size_t>(c.row)));
    return total;
}

// Independent oracle: count skew tableaux by enumerating all addition orders.
long long brute_skew_count(const Partition& outer, const Partition& inner) {
    if (inner == outer) return 1;
    long long total = 0;
    for (const Cell& c : addable_cells(inner)) {
        if (inner.part(static_cast<size_t>(c.row)) + 1 > outer.part(static_cast<size_t>(c.row)))
            continue;
        total += brute_skew_count(outer, add_cell(inner, static_cast<size_t>(c.row)));
    }
    return total;
}

std::string order_key(const PathTableau& t) {
    std::string s;
    for (const Cell& c : t.order)
        s += std::to_string(c.row) + ":" + std::to_string(c.col) + ";";
    return s;
}

// a path is a standard tableau iff every added cell extends a row whose left
// and upper neighbors are already present
bool is_valid_tableau(const PathTableau& t) {
    Partition cur = t.shape.inner;
    for (const Cell& c : t.order) {
        if (c.col != cur.part(static_cast<size_t>(c.row))) return false;
        if (c.row > 0 && cur.part(static_cast<size_t>(c.row) - 1) <= c.col) return false;
        cur = add_cell(cur, static_cast<size_t>(c.row));
    }
    return cur == t.shape.outer;
}

}  // namespace

TEST_CASE("bigint arithmetic") {
    CHECK(BigInt::factorial(20).to_string() == "2432902008176640000");
    CHECK(BigInt::factorial(25).to_string() == "15511210043330985984000000");
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("987654321098765432109");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(BigInt::gcd(BigInt::factorial(12), BigInt::factorial(10)) == BigInt::factorial(10));
    CHECK((BigInt(-7) % BigInt(3)).to_string() == "-1");
    CHECK(Rational(BigInt(6), BigInt(-8)).to_string() == "-3/4");
    Rational half(BigInt(1), BigInt(2));
    CHECK(half + half == Rational(1));
}

TEST_CASE("bigint division identities on random multi-limb operands") {
    std::mt19937_64 rng(42);
    auto random_number = [&](int digit_blocks) {
        std::string s;
        for (int d = 0; d < digit_blocks * 9; ++d) s += static_cast<char>('0' + rng() % 10);
        if (rng() & 1) s = "-" + s;
        return BigInt::from_string(s);
    };
    for (int i = 0; i < 200; ++i) {
        BigInt a = random_number(1 + static_cast<int>(rng() % 8));
        BigInt b = random_number(1 + static_cast<int>(rng() % 6));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        // |r| < |b| and r carries the dividend's sign (or is zero)
        BigInt abs_r = r.sign() < 0 ? -r : r;
        BigInt abs_b = b.sign() < 0 ? -b : b;
        CHECK(abs_r < abs_b);
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
        // string round trip
        CHECK(BigInt::from_string(a.to_string()) == a);
        // gcd divides both
        BigInt g = BigInt::gcd(a, b);
        if (!g.is_zero()) {
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
        }
    }
}

TEST_CASE("partition basics and serialization") {
    Partition p{3, 2, 1};
    CHECK(p.size() == 6);
    CHECK(p.to_string() == "3,2,1");
    CHECK(Partition::parse("3,2,1") == p);
    CHECK(Partition::parse("-") == Partition());
    CHECK(Partition().to_string() == "-");
    CHECK(conjugate(p) == Partition{3, 2, 1});
    CHECK(conjugate(Partition{4, 1}) == Partition{2, 1, 1, 1});
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(10).size() == 42);
    CHECK(partitions_of(0).size() == 1);
}

TEST_CASE("maya encoding of small diagrams") {
    MayaWord w = maya_encode(Partition(), -3, 3);
    REQUIRE(w.stones.size() == 6);
    // stones at -5/2,-3/2,-1/2; holes at 1/2,3/2,5/2
    CHECK(w.stones == std::vector<bool>{true, true, true, false, false, false});

    MayaWord w1 = maya_encode(Partition{1}, -3, 3);
    // the stone at -1/2 moved to +1/2
    CHECK(w1.stones == std::vector<bool>{true, true, false, true, false, false});

    CHECK_THROWS_AS(maya_encode(Partition{3, 1}, -1, 3), std::invalid_argument);
    CHECK_THROWS_AS(maya_encode(Partition{3, 1}, -2, 2), std::invalid_argument);
}

TEST_CASE("maya round trip and one-stone-jump property, all |p| <= 8") {
    int partitions_seen = 0;
    for (long long n = 0; n <= 8; ++n) {
        for (const Partition& p : partitions_of(n)) {
            ++partitions_seen;
            MayaWord w = maya_encode(p, -10, 10);
            CHECK(maya_decode(w) == p);
            // wider window round-trips too
            CHECK(maya_decode(maya_encode(p, -14, 12)) == p);
            // adding any cell moves exactly one stone one hole rightward
            for (const Cell& c : addable_cells(p)) {
                Partition q = add_cell(p, static_cast<size_t>(c.row));
                MayaWord wq = maya_encode(q, -10, 10);
                std::vector<size_t> gained, lost;
                for (size_t i = 0; i < w.stones.size(); ++i) {
                    if (w.stones[i] && !wq.stones[i]) lost.push_back(i);
                    if (!w.stones[i] && wq.stones[i]) gained.push_back(i);
                }
                REQUIRE(lost.size() == 1);
                REQUIRE(gained.size() == 1);
                CHECK(gained[0] == lost[0] + 1);
            }
        }
    }
    CHECK(partitions_seen == 1 + 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22);
}

TEST_CASE("dimension agrees with brute-force path count") {
    CHECK(dimension(Partition{1}) == BigInt(1));
    CHECK(dimension(Partition{2, 1}) == BigInt(2));      // brute DP gives 2
    CHECK(dimension(Partition{3, 2, 1}) == BigInt(16));  // hooks 5,3,1,3,1,1: 720/45
    for (long long n = 0; n <= 8; ++n)
        for (const Partition& p : partitions_of(n))
            CHECK(dimension(p) == BigInt(brute_path_count(p)));
}

TEST_CASE("skew counts: DP vs determinant vs brute enumeration") {
    CHECK(count_skew(SkewShape(Partition{2, 2}, Partition{2, 2})) == BigInt(1));
    CHECK(count_skew(SkewShape(Partition{2, 2}, Partition{1})) == BigInt(2));
    CHECK(count_skew(SkewShape(Partition{3, 2, 1}, Partition())) == dimension(Partition{3, 2, 1}));
    CHECK(count_skew(SkewShape(Partition{3, 3}, Partition())) == BigInt(5));

    for (long long n = 0; n <= 10; ++n)
        for (const Partition& p : partitions_of(n)) {
            SkewShape s(p, Partition());
            BigInt dp = count_skew_dp(s);
            CHECK(dp == count_skew_det(s));
            CHECK(dp == dimension(p));
        }

    // proper skew shapes against direct enumeration
    std::vector<SkewShape> shapes = {
        SkewShape(Partition{4, 3, 1}, Partition{2, 1}),
        SkewShape(Partition{5, 4, 2}, Partition{3, 1}),
        SkewShape(Partition{4, 4, 3, 2}, Partition{3, 2, 1}),
        SkewShape(Partition{6, 3}, Partition{2, 2}),
    };
    for (const SkewShape& s : shapes) {
        BigInt c = count_skew(s);
        CHECK(c == BigInt(brute_skew_count(s.outer, s.inner)));
    }

    CHECK_THROWS_AS(SkewShape(Partition{2, 1}, Partition{3}), std::invalid_argument);
}

TEST_CASE("forward transition distribution") {
    auto d0 = forward_step_distribution(Partition());
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].first == Partition{1});
    CHECK(d0[0].second == Rational(1));

    auto d1 = forward_step_distribution(Partition{1});
    REQUIRE(d1.size() == 2);
    std::map<std::string, Rational> m1;
    for (auto& [p, pr] : d1) m1[p.to_string()] = pr;
    CHECK(m1["2"] == Rational(BigInt(1), BigInt(2)));
    CHECK(m1["1,1"] == Rational(BigInt(1), BigInt(2)));

    auto d2 = forward_step_distribution(Partition{2});
    std::map<std::string, Rational> m2;
    for (auto& [p, pr] : d2) m2[p.to_string()] = pr;
    CHECK(m2["3"] == Rational(BigInt(1), BigInt(3)));
    CHECK(m2["2,1"] == Rational(BigInt(2), BigInt(3)));

    // normalization: sum dim(lambda') = (n+1) dim(lambda), exactly
    for (long long n = 0; n <= 15; ++n)
        for (const Partition& p : partitions_of(n)) {
            BigInt lhs(0);
            for (const Cell& c : addable_cells(p))
                lhs += dimension(add_cell(p, static_cast<size_t>(c.row)));
            CHECK(lhs == BigInt(p.size() + 1) * dimension(p));
        }
}

TEST_CASE("backward transition distribution sums to one exactly") {
    auto d1 = backward_step_distribution(Partition{1});
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].first == Partition());
    CHECK(d1[0].second == Rational(1));

    auto d21 = backward_step_distribution(Partition{2, 1});
    std::map<std::string, Rational> m;
    for (auto& [p, pr] : d21) m[p.to_string()] = pr;
    CHECK(m["2"] == Rational(BigInt(1), BigInt(2)));
    CHECK(m["1,1"] == Rational(BigInt(1), BigInt(2)));

    auto d31 = backward_step_distribution(Partition{3, 1});
    std::map<std::string, Rational> m31;
    for (auto& [p, pr] : d31) m31[p.to_string()] = pr;
    CHECK(m31["2,1"] == Rational(BigInt(2), BigInt(3)));
    CHECK(m31["3"] == Rational(BigInt(1), BigInt(3)));

    for (long long n = 1; n <= 15; ++n)
        for (const Partition& p : partitions_of(n)) {
            Rational sum(0);
            for (auto& [q, pr] : backward_step_distribution(p)) sum += pr;
            CHECK(sum == Rational(1));
        }

    CHECK_THROWS_AS(backward_step_distribution(Partition()), std::domain_error);
}

TEST_CASE("plancherel identity sum dim^2 = n!") {
    CHECK(plancherel_identity_check(0));
    CHECK(plancherel_identity_check(4));   // 1+9+4+9+1 = 24
    CHECK(plancherel_identity_check(10));  // 42 partitions
    CHECK_THROWS_AS(plancherel_identity_check(20), std::domain_error);
}

TEST_CASE("plancherel path sampler marginals") {
    PathTableau t1 = sample_plancherel_path(1, 123);
    REQUIRE(t1.order.size() == 1);
    CHECK(t1.order[0] == Cell{0, 0});

    // n = 2: (2) and (1,1) each 1/2
    int twos = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        PathTableau t = sample_plancherel_path(2, 1000 + static_cast<uint64_t>(i));
        if (t.shape.outer == Partition{2}) ++twos;
    }
    double freq = static_cast<double>(twos) / trials;
    double sigma = std::sqrt(0.25 / trials);
    CHECK(std::abs(freq - 0.5) <= 3 * sigma);

    // n = 6 marginal law vs exact Plancherel weights dim^2/720
    std::map<std::string, int> counts;
    const int big_trials = 100000;
    for (int i = 0; i < big_trials; ++i) {
        PathTableau t = sample_plancherel_path(6, 77000 + static_cast<uint64_t>(i));
        counts[t.shape.outer.to_string()]++;
    }
    for (const Partition& p : partitions_of(6)) {
        double d = dimension(p).to_double();
        double prob = d * d / 720.0;
        double got = counts[p.to_string()] / static_cast<double>(big_trials);
        double sigma6 = std::sqrt(prob * (1 - prob) / big_trials);
        CHECK(std::abs(got - prob) <= 3 * sigma6);
    }

    // determinism per seed and tableau validity
    CHECK(order_key(sample_plancherel_path(40, 7)) == order_key(sample_plancherel_path(40, 7)));
    for (uint64_t seed = 0; seed < 50; ++seed)
        CHECK(is_valid_tableau(sample_plancherel_path(30, seed)));
}

TEST_CASE("uniform skew path sampler") {
    PathTableau empty = sample_uniform_skew_path(SkewShape(Partition{2, 1}, Partition{2, 1}), 5);
    CHECK(empty.order.empty());

    SkewShape s22(Partition{2, 2}, Partition{1});
    std::map<std::string, int> counts;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i)
        counts[order_key(sample_uniform_skew_path(s22, 400 + static_cast<uint64_t>(i)))]++;
    REQUIRE(counts.size() == 2);
    for (auto& [k, c] : counts) {
        double freq = c / static_cast<double>(trials);
        CHECK(std::abs(freq - 0.5) <= 3 * std::sqrt(0.25 / trials));
    }

    SkewShape s33(Partition{3, 3}, Partition());
    std::map<std::string, int> c33;
    for (int i = 0; i < trials; ++i)
        c33[order_key(sample_uniform_skew_path(s33, 9000 + static_cast<uint64_t>(i)))]++;
    REQUIRE(c33.size() == 5);
    for (auto& [k, c] : c33) {
        double freq = c / static_cast<double>(trials);
        double p = 0.2;
        CHECK(std::abs(freq - p) <= 3 * std::sqrt(p * (1 - p) / trials));
    }

    // sampled skew paths are standard tableaux of their shape
    SkewShape mixed(Partition{5, 3, 2}, Partition{2, 1});
    for (uint64_t seed = 0; seed < 50; ++seed)
        CHECK(is_valid_tableau(sample_uniform_skew_path(mixed, seed)));
}
