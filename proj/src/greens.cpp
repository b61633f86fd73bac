#include "erw/greens.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <vector>

namespace erw {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kPi = 3.14159265358979323846;

// Validated constant c with e^{-x} I_0(x) <= c / sqrt(x) for x >= 1.  The
// left side times sqrt(x) is maximal at x = 1 (value 0.46576...) and decreases
// towards 1/sqrt(2 pi); a unit test pins this against the power series.
constexpr double kScaledI0Bound = 0.4660;

// Relative accuracy of bessel_i0_scaled (asymptotic truncation floor).
constexpr double kBesselRelErr = 1e-9;

double i0_scaled_series(double x) {
    // All-positive series for I_0, then scale; no cancellation.
    double term = 1.0, sum = 1.0;
    double q = 0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum * std::exp(-x);
}

double i0_scaled_asymptotic(double x) {
    // e^{-x} I_0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k).
    double sum = 1.0, term = 1.0;
    for (int k = 1; k <= 12; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * x * k);
        sum += term;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

struct Quad {
    double value = 0.0;
    double err = 0.0;
    long evals = 0;
};

// Adaptive Simpson with the standard |S2 - S1|/15 error estimate; accumulated
// estimates feed the returned error radius.
void adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double eps, int depth, Quad& out) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    out.evals += 2;
    double h = b - a;
    double s1 = h / 6.0 * (fa + 4.0 * fm + fb);
    double s2 = h / 12.0 * (fa + 4.0 * flm + 2.0 * fm + 4.0 * frm + fb);
    double e = (s2 - s1) / 15.0;
    if (depth <= 0 || std::fabs(e) < eps) {
        out.value += s2 + e;
        out.err += std::fabs(e);
        return;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * eps, depth - 1, out);
    adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * eps, depth - 1, out);
}

}  // namespace

double bessel_i0_scaled(double x) {
    if (x < 0.0) x = -x;
    return x < 15.0 ? i0_scaled_series(x) : i0_scaled_asymptotic(x);
}

GreensValue greens_power_origin(int d, int n, double tol) {
    if (d < 1 || n < 1) throw std::domain_error("greens_power_origin: need d >= 1, n >= 1");
    if (tol <= 0.0) throw std::domain_error("greens_power_origin: need tol > 0");
    if (d <= 2 * n)
        throw divergence_error("greens_power_origin: G_" + std::to_string(d) + "^{*" +
                               std::to_string(n) + "}(0) diverges (requires d > 2n)");

    double log_fact = std::lgamma(static_cast<double>(n));
    auto integrand = [&](double t) {
        if (t <= 0.0) return n == 1 ? 1.0 : 0.0;
        // t^{n-1}/(n-1)! e^{-t} I_0(t/d)^d, all scaled through logs of the
        // Bessel part to avoid overflow at large t.
        double log_poly = (n - 1) * std::log(t) - log_fact;
        double i0s = bessel_i0_scaled(t / d);
        return std::exp(log_poly + d * std::log(i0s));
    };

    // Tail cutoff: with e^{-x} I_0(x) <= c/sqrt(x) for x >= 1, the remainder
    // past T >= d is at most c^d d^{d/2} / (n-1)! * T^{n-d/2} / (d/2 - n).
    double half_tol = 0.5 * tol;
    double log_pref = d * std::log(kScaledI0Bound) + 0.5 * d * std::log(static_cast<double>(d)) -
                      log_fact - std::log(0.5 * d - n);
    double exponent = n - 0.5 * d;  // < 0
    // Solve pref * T^exponent <= tol/2.
    double T = std::exp((std::log(half_tol) - log_pref) / exponent);
    double t_min = std::max(4.0 * d, 32.0);
    if (T < t_min) T = t_min;
    double tail = std::exp(log_pref + exponent * std::log(T));

    // Geometric panels keep the adaptive recursion shallow on huge ranges.
    std::vector<double> cuts;
    cuts.push_back(0.0);
    double edge = t_min;
    while (edge < T) {
        cuts.push_back(edge);
        edge *= 2.0;
    }
    cuts.push_back(T);

    Quad q;
    size_t npanels = cuts.size() - 1;
    for (size_t i = 0; i < npanels; ++i) {
        double a = cuts[i], b = cuts[i + 1];
        double fa = integrand(a), fb = integrand(b), fm = integrand(0.5 * (a + b));
        q.evals += 3;
        adaptive_simpson(integrand, a, b, fa, fm, fb, half_tol / npanels, 48, q);
        if (q.evals > 40'000'000)
            throw precision_error("greens_power_origin: quadrature budget exceeded", q.value,
                                  q.err + tail);
    }

    double value = q.value;
    double radius = tail + q.err + kBesselRelErr * d * value;
    if (radius > tol)
        throw precision_error("greens_power_origin: tolerance " + std::to_string(tol) +
                                  " not achieved",
                              value, radius);
    return GreensValue{d, n, value, radius};
}

double greens_series_oracle(int d, int n, int kmax) {
    if (d < 1 || n < 1 || kmax < 0) throw std::domain_error("greens_series_oracle: bad arguments");

    // Pascal triangle up to kmax.
    std::vector<std::vector<cpp_int>> binom(kmax + 1);
    for (int i = 0; i <= kmax; ++i) {
        binom[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
    }

    // walks[j][k]: closed k-step walks using only the first j coordinates.
    std::vector<std::vector<cpp_int>> walks(d + 1, std::vector<cpp_int>(kmax + 1, 0));
    walks[0][0] = 1;
    for (int j = 1; j <= d; ++j)
        for (int k = 0; k <= kmax; ++k)
            for (int s = 0; s <= k; s += 2)
                walks[j][k] += binom[k][s] * binom[s][s / 2] * walks[j - 1][k - s];

    double sum = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        if (walks[d][k] == 0) continue;
        // C(k+n-1, n-1) walks / (2d)^k
        cpp_int coeff = 1;
        for (int i = 1; i < n; ++i) coeff = coeff * (k + i) / i;
        cpp_int denom = boost::multiprecision::pow(cpp_int(2 * d), k);
        boost::multiprecision::cpp_rational term(coeff * walks[d][k], denom);
        sum += term.convert_to<double>();
    }
    return sum;
}

DerivedConstants derived_constants(int d, double tol) {
    if (d < 4)
        throw divergence_error("derived_constants: nothing finite for d < 4 (E0 needs d-1 > 2)");
    DerivedConstants out;
    out.d = d;
    double ratio = static_cast<double>(d) / (d - 1);

    Interval g1 = greens_power_origin(d - 1, 1, tol).interval();
    out.E0 = ratio * g1 - 1.0;

    if (d >= 6) {
        Interval g2 = greens_power_origin(d - 1, 2, tol).interval();
        out.E1 = ratio * ratio * g2 - 1.0;
        out.a_d = static_cast<double>(d) / ((d - 1.0) * (d - 1.0)) * g2;
        if (d >= 8) {
            Interval g3 = greens_power_origin(d - 1, 3, tol).interval();
            double dm1 = d - 1.0;
            out.eps_d = 2.0 * d / (dm1 * dm1 * dm1 * dm1) * g1 * g3 +
                        *out.E1 / (d * dm1 * dm1) * g2;
        }
    }
    return out;
}

}  // namespace erw
