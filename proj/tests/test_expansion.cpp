#include <doctest.h>

#include <cmath>

#include "erw/expansion.hpp"
#include "erw/greens.hpp"

using namespace erw;

namespace {

// Independent brute force for the n-step law: iterate all (2d)^n step words,
// weight each step by the excited/plain kernel read off a literal site list.
SiteMap brute_force_law(int d, ExactBeta beta, int n) {
    auto steps = [&]() {
        std::vector<LatticeVector> s;
        for (int axis = 0; axis < d; ++axis)
            for (int sign : {+1, -1}) s.push_back(LatticeVector::unit(d, axis, sign));
        return s;
    }();
    Rational b = beta.rational();
    SiteMap law;
    std::vector<int> word(n, 0);
    while (true) {
        std::vector<LatticeVector> sites{LatticeVector(d)};
        Rational weight = 1;
        for (int i = 0; i < n; ++i) {
            bool fresh = true;
            for (size_t k = 0; k + 1 < sites.size(); ++k)
                if (sites[k] == sites.back()) fresh = false;
            Rational p = fresh ? (Rational(1) + b * steps[word[i]].c[0]) / (2 * d)
                               : Rational(1, 2 * d);
            weight *= p;
            sites.push_back(sites.back() + steps[word[i]]);
        }
        if (weight != 0) law[sites.back()] += weight;
        int pos = n - 1;
        while (pos >= 0 && word[pos] == 2 * d - 1) word[pos--] = 0;
        if (pos < 0) break;
        ++word[pos];
    }
    return law;
}

bool maps_equal(const SiteMap& a, const SiteMap& b) {
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if ((it == b.end() ? Rational(0) : it->second) != v) return false;
    }
    for (const auto& [k, v] : b)
        if (v != 0 && a.find(k) == a.end()) return false;
    return true;
}

SiteMap direct_pi_m(int d, ExactBeta beta, int m) {
    SiteMap sum;
    for (int N = 1; N + 1 <= m; ++N)
        for (const auto& [y, v] : enumerate_pi_direct(d, beta, N, m).sum_over_x()) sum[y] += v;
    for (auto it = sum.begin(); it != sum.end();)
        it = it->second == 0 ? sum.erase(it) : std::next(it);
    return sum;
}

}  // namespace

TEST_CASE("parse_beta accepts fractions, decimals and integers") {
    CHECK(parse_beta("1/2").rational() == Rational(1, 2));
    CHECK(parse_beta("0.25").rational() == Rational(1, 4));
    CHECK(parse_beta("1").rational() == 1);
    CHECK(parse_beta("0").rational() == 0);
    CHECK_THROWS_AS(parse_beta("3/2"), std::domain_error);
    CHECK_THROWS_AS(parse_beta("-1"), std::domain_error);
    CHECK_THROWS_AS(parse_beta("x"), std::domain_error);
}

TEST_CASE("two-point table: deterministic walk at d = 1, beta = 1") {
    auto table = enumerate_two_point(1, ExactBeta{1, 1}, 3);
    CHECK(table.table[3].size() == 1);
    CHECK(table.table[3].at(LatticeVector{3}) == 1);
}

TEST_CASE("two-point table matches brute force and has unit mass") {
    for (auto [d, beta] : std::vector<std::pair<int, ExactBeta>>{
             {2, ExactBeta{0, 1}}, {2, ExactBeta{1, 2}}, {3, ExactBeta{1, 4}}}) {
        auto table = enumerate_two_point(d, beta, 4);
        for (int n = 0; n <= 4; ++n) {
            Rational mass = 0;
            for (const auto& [x, v] : table.table[n]) mass += v;
            CHECK(mass == 1);
            CHECK(maps_equal(table.table[n], brute_force_law(d, beta, n)));
        }
    }
}

TEST_CASE("parallel and serial enumeration agree exactly") {
    auto serial = enumerate_two_point(2, ExactBeta{1, 2}, 5, false);
    auto parallel = enumerate_two_point(2, ExactBeta{1, 2}, 5, true);
    for (int n = 0; n <= 5; ++n) CHECK(serial.table[n] == parallel.table[n]);

    auto ds = enumerate_pi_direct(2, ExactBeta{1, 2}, 2, 5, false);
    auto dp = enumerate_pi_direct(2, ExactBeta{1, 2}, 2, 5, true);
    CHECK(ds.entries == dp.entries);
}

TEST_CASE("enumeration budget is enforced") {
    CHECK_THROWS_AS(enumerate_two_point(9, ExactBeta{1, 1}, 12), resource_error);
    CHECK_THROWS_AS(enumerate_pi_direct(9, ExactBeta{1, 1}, 2, 12), resource_error);
}

TEST_CASE("pi_2 vanishes identically") {
    for (int d : {1, 2, 3}) {
        auto pi = extract_pi(enumerate_two_point(d, ExactBeta{1, 2}, 4));
        for (const auto& [y, v] : pi.by_order.at(2)) CHECK(v == 0);
        CHECK(enumerate_pi_direct(d, ExactBeta{1, 2}, 1, 2).entries.empty());
    }
}

TEST_CASE("level table is zero when N + 1 > m") {
    CHECK(enumerate_pi_direct(2, ExactBeta{1, 1}, 3, 3).entries.empty());
    CHECK(enumerate_pi_direct(2, ExactBeta{1, 1}, 5, 4).entries.empty());
}

TEST_CASE("mass identity: sum over y of pi_m^(N)(x,y) is exactly zero") {
    for (int m = 3; m <= 5; ++m)
        for (int N = 1; N + 1 <= m; ++N) {
            auto level = enumerate_pi_direct(2, ExactBeta{1, 2}, N, m);
            for (const auto& [x, v] : level.sum_over_y()) CHECK(v == 0);
        }
}

TEST_CASE("the two exact routes agree: recursion extraction vs direct enumeration") {
    for (int d : {2, 3}) {
        auto pi = extract_pi(enumerate_two_point(d, ExactBeta{1, 1}, 4));
        for (int m = 2; m <= 4; ++m) CHECK(maps_equal(pi.by_order.at(m), direct_pi_m(d, ExactBeta{1, 1}, m)));
    }
}

TEST_CASE("recursion closure: extracted pi reproduces c_{n+1} exactly") {
    const int d = 2;
    ExactBeta beta{1, 2};
    auto table = enumerate_two_point(d, beta, 5);
    auto pi = extract_pi(table);

    std::vector<LatticeVector> steps;
    for (int axis = 0; axis < d; ++axis)
        for (int sign : {+1, -1}) steps.push_back(LatticeVector::unit(d, axis, sign));
    for (int n = 1; n < 5; ++n) {
        SiteMap rebuilt;
        for (const auto& s : steps) {
            Rational p = (Rational(1) + beta.rational() * s.c[0]) / (2 * d);
            for (const auto& [x, v] : table.table[n]) rebuilt[x + s] += p * v;
        }
        for (int m = 2; m <= n + 1; ++m)
            for (const auto& [y, pv] : pi.by_order.at(m))
                for (const auto& [x, cv] : table.table[n + 1 - m]) rebuilt[x + y] += pv * cv;
        CHECK(maps_equal(rebuilt, table.table[n + 1]));
    }
}

TEST_CASE("coordinate symmetry under signed permutations of axes 2..d") {
    auto pi = extract_pi(enumerate_two_point(3, ExactBeta{1, 2}, 4));
    for (int m = 3; m <= 4; ++m) {
        for (const auto& [y, v] : pi.by_order.at(m)) {
            LatticeVector swapped = y;
            std::swap(swapped.c[1], swapped.c[2]);
            LatticeVector flipped = y;
            flipped.c[1] = -flipped.c[1];
            auto get = [&](const LatticeVector& k) {
                auto it = pi.by_order.at(m).find(k);
                return it == pi.by_order.at(m).end() ? Rational(0) : it->second;
            };
            CHECK(get(swapped) == v);
            CHECK(get(flipped) == v);
        }
    }
}

TEST_CASE("drift series degenerate cases") {
    DriftSeries zero = drift_series(3, ExactBeta{0, 1}, 4);
    for (const auto& v : zero.value) CHECK(v == 0);
    CHECK(zero.tail_bound == 0.0);

    DriftSeries det = drift_series(1, ExactBeta{1, 1}, 4);
    CHECK(det.value[0] == 1);
    CHECK(std::isinf(det.tail_bound));
}

TEST_CASE("drift series coordinates 2..d vanish") {
    DriftSeries s = drift_series(3, ExactBeta{1, 2}, 5);
    CHECK(s.value[1] == 0);
    CHECK(s.value[2] == 0);
    CHECK(s.value[0] > 0);
}
