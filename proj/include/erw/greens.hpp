#pragma once

#include <optional>

#include "erw/errors.hpp"
#include "erw/interval.hpp"

namespace erw {

// G_d^{*n}(0) with an absolute error radius.  Finite iff d > 2n.
struct GreensValue {
    int d;
    int n;
    double value;
    double error_radius;

    Interval interval() const { return Interval{value, error_radius}; }
};

// e^{-x} I_0(x), the scaled modified Bessel function of order zero.
double bessel_i0_scaled(double x);

// n-fold convolution power of the simple-random-walk Green's function at the
// origin, via the integral
//   G_d^{*n}(0) = int_0^inf t^{n-1}/(n-1)! e^{-t} [I_0(t/d)]^d dt.
// Throws divergence_error when d <= 2n, precision_error when tol is not
// reached within the subdivision budget.
GreensValue greens_power_origin(int d, int n, double tol);

// Partial sum of sum_k C(k+n-1, n-1) P_d(omega_k = 0) up to k = kmax.  Exact
// combinatorics (big-integer walk counts), monotone nondecreasing in kmax and
// always a lower bound on G_d^{*n}(0).
double greens_series_oracle(int d, int n, int kmax);

// Green's-function constants feeding the bound pipeline.  Entries are absent
// when the underlying convolution power diverges:
//   E0 needs d >= 4, E1 and a_d need d >= 6, eps_d needs d >= 8.
struct DerivedConstants {
    int d;
    std::optional<Interval> E0;
    std::optional<Interval> E1;
    std::optional<Interval> a_d;
    std::optional<Interval> eps_d;
};

// E_i(d) = (d/(d-1))^{i+1} G_{d-1}^{*(i+1)}(0) - 1,
// a_d    = d/(d-1)^2 G_{d-1}^{*2}(0),
// eps(d) = 2d/(d-1)^4 G_{d-1}(0) G_{d-1}^{*3}(0) + E_1(d)/(d(d-1)^2) G_{d-1}^{*2}(0).
// Throws divergence_error when d < 4 (nothing is finite there).
DerivedConstants derived_constants(int d, double tol);

}  // namespace erw
