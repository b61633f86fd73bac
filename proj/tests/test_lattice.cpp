#include <doctest.h>

#include <random>

#include "erw/lattice.hpp"

using namespace erw;

TEST_CASE("kernel matches the excited transition formula") {
    ModelParams d9(9, 0.0);
    LatticeVector o9(9);
    CHECK(transition_probability(d9, o9, LatticeVector::unit(9, 3, 1), true) ==
          doctest::Approx(1.0 / 18).epsilon(1e-15));

    ModelParams d1(1, 1.0);
    LatticeVector o1(1);
    CHECK(transition_probability(d1, o1, LatticeVector::unit(1, 0, 1), true) == 1.0);

    ModelParams d2(2, 0.5);
    LatticeVector o2(2);
    CHECK(transition_probability(d2, o2, LatticeVector::unit(2, 0, -1), true) == 0.125);
}

TEST_CASE("kernel rejects non-neighbour pairs") {
    ModelParams params(2, 0.5);
    LatticeVector origin(2);
    CHECK_THROWS_AS(transition_probability(params, origin, LatticeVector{1, 1}, true),
                    std::domain_error);
    CHECK_THROWS_AS(transition_probability(params, origin, origin, false), std::domain_error);
}

TEST_CASE("kernel sums to one over the 2d neighbours") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + static_cast<int>(unif(rng) * 9);
        ModelParams params(d, unif(rng));
        LatticeVector origin(d);
        for (bool excited : {true, false}) {
            double sum = 0.0;
            for (int axis = 0; axis < d; ++axis)
                for (int sign : {+1, -1})
                    sum += transition_probability(params, origin,
                                                  LatticeVector::unit(d, axis, sign), excited);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("kernel is affine in beta with slope +-1/(2d) on the first axis") {
    const int d = 4;
    LatticeVector origin(d);
    for (int axis = 0; axis < d; ++axis)
        for (int sign : {+1, -1}) {
            LatticeVector to = LatticeVector::unit(d, axis, sign);
            double p0 = transition_probability(ModelParams(d, 0.25), origin, to, true);
            double p1 = transition_probability(ModelParams(d, 0.75), origin, to, true);
            double slope = (p1 - p0) / 0.5;
            double expected = axis == 0 ? sign / (2.0 * d) : 0.0;
            CHECK(slope == doctest::Approx(expected).epsilon(1e-13));
        }
}

TEST_CASE("freshness of the path endpoint") {
    WalkPath path{LatticeVector(2)};
    CHECK(is_fresh(path));

    WalkPath revisit = path.extend(LatticeVector{1, 0}).extend(LatticeVector{-1, 0});
    CHECK_FALSE(is_fresh(revisit));

    WalkPath diagonal = path.extend(LatticeVector{1, 0}).extend(LatticeVector{0, 1});
    CHECK(is_fresh(diagonal));
}

TEST_CASE("extend keeps value semantics and updates the visited index") {
    WalkPath base{LatticeVector(2)};
    WalkPath one = base.extend(LatticeVector{1, 0});
    CHECK(base.length() == 0);
    CHECK(one.length() == 1);
    CHECK(one.visited_count() == 2);

    WalkPath back = one.extend(LatticeVector{-1, 0});
    CHECK(back.visited_count() == 2);  // revisit does not grow the index
    CHECK(one.length() == 1);

    CHECK_THROWS_AS(base.extend(LatticeVector{1, 1}), std::domain_error);
}

TEST_CASE("visited index agrees with a linear scan on random paths") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        int d = 2 + trial % 3;
        WalkPath path{LatticeVector(d)};
        for (int i = 0; i < 40; ++i) {
            int axis = static_cast<int>(rng() % d);
            int sign = rng() % 2 ? 1 : -1;
            path = path.extend(LatticeVector::unit(d, axis, sign));
        }
        for (const auto& site : path.sites()) CHECK(path.visited(site));
        // Freshness from the public query must match a scan over the prefix.
        bool scan_fresh = true;
        const auto& sites = path.sites();
        for (size_t i = 0; i + 1 < sites.size(); ++i)
            if (sites[i] == sites.back()) scan_fresh = false;
        CHECK(is_fresh(path) == scan_fresh);
    }
}
