#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "erw/lattice.hpp"

namespace erw {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Excitement parameter as an exact fraction, so enumeration results are
// bit-reproducible rationals.
struct ExactBeta {
    long num = 0;
    long den = 1;

    Rational rational() const { return Rational(num, den); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Parses "1", "1/2", "0.25" into an exact fraction in [0,1].
ExactBeta parse_beta(const std::string& text);

using SiteMap = std::unordered_map<LatticeVector, Rational, LatticeVectorHash>;

// Exact distribution c_n(x) of the walk position for all n <= nmax.
struct TwoPointTable {
    int d;
    ExactBeta beta;
    int nmax;
    std::vector<SiteMap> table;  // table[n][x] = c_n(x)
};

// Aggregated expansion coefficients pi_m(y), m = 2..mmax.
struct PiTable {
    int d;
    ExactBeta beta;
    int mmax;
    std::map<int, SiteMap> by_order;  // m -> (y -> pi_m(y))
};

// One level-N coefficient table pi_m^(N)(x, y) at fixed total order m.
struct SitePair {
    LatticeVector x, y;
    bool operator==(const SitePair& o) const { return x == o.x && y == o.y; }
};
struct SitePairHash {
    size_t operator()(const SitePair& p) const {
        LatticeVectorHash h;
        return h(p.x) * 0x9e3779b97f4a7c15ull + h(p.y);
    }
};

struct PiLevelTable {
    int d;
    ExactBeta beta;
    int N;
    int m;
    std::unordered_map<SitePair, Rational, SitePairHash> entries;

    Rational abs_norm() const;  // sum_{x,y} |pi_m^(N)(x,y)|
    SiteMap sum_over_x() const; // y -> sum_x pi_m^(N)(x,y)
    SiteMap sum_over_y() const; // x -> sum_y pi_m^(N)(x,y), identically 0
};

// Exact two-point function by depth-first enumeration of all paths, each step
// weighted by the excited/plain kernel.  Throws resource_error when
// (2d)^nmax exceeds the enumeration budget.
TwoPointTable enumerate_two_point(int d, ExactBeta beta, int nmax, bool parallel = true);

// Solves the recursion
//   c_{n+1}(x) = sum_y p(0,y) c_n(x-y) + sum_{m=2}^{n+1} sum_y pi_m(y) c_{n+1-m}(x-y)
// for pi_m(y) by forward deconvolution (c_0 = delta_0 makes the top order
// explicit).  Exact.
PiTable extract_pi(const TwoPointTable& two_point);

// Direct nested enumeration of pi_m^(N)(x,y): sums over step allocations
// j in A_{m,N} and over all sub-walk realizations, with each Delta factor
// evaluated as the exact signed kernel difference.  Returns the empty table
// when N + 1 > m.
PiLevelTable enumerate_pi_direct(int d, ExactBeta beta, int N, int m, bool parallel = true);

// Truncated drift series with a rigorous bound on the omitted tail.
struct DriftSeries {
    int d;
    ExactBeta beta;
    int mmax;
    std::vector<Rational> value;  // d coordinates; 2..d are exactly 0
    double tail_bound;            // +inf when a_d >= 1 or undefined
};

DriftSeries drift_series(int d, ExactBeta beta, int mmax, double greens_tol = 1e-6);

}  // namespace erw
