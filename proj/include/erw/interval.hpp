#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace erw {

// Midpoint-radius interval with outward-rounded radius propagation.  Used for
// the certificate arithmetic: a pass verdict must survive the stated error
// radii, so every operation pads the radius by a few ulps of the result.
struct Interval {
    double v = 0.0;
    double r = 0.0;

    static constexpr double kSlack = 4.0 * std::numeric_limits<double>::epsilon();

    double hi() const { return v + r; }
    double lo() const { return v - r; }

    Interval operator+(const Interval& o) const {
        double nv = v + o.v;
        return {nv, r + o.r + kSlack * std::fabs(nv)};
    }
    Interval operator-(const Interval& o) const {
        double nv = v - o.v;
        return {nv, r + o.r + kSlack * std::fabs(nv)};
    }
    Interval operator*(const Interval& o) const {
        double nv = v * o.v;
        double nr = std::fabs(v) * o.r + std::fabs(o.v) * r + r * o.r;
        return {nv, nr + kSlack * std::fabs(nv)};
    }
    Interval operator/(const Interval& o) const {
        if (o.lo() <= 0.0 && o.hi() >= 0.0)
            throw std::domain_error("Interval: division by an interval containing zero");
        double nv = v / o.v;
        // |a/b - A/B| <= (|A| rb + |B| ra) / (|B| (|B| - rb)) for |B| > rb
        double denom = std::fabs(o.v) * (std::fabs(o.v) - o.r);
        double nr = (std::fabs(v) * o.r + std::fabs(o.v) * r) / denom;
        return {nv, nr + kSlack * std::fabs(nv)};
    }

    Interval operator+(double s) const { return *this + Interval{s, 0.0}; }
    Interval operator-(double s) const { return *this - Interval{s, 0.0}; }
    Interval operator*(double s) const { return *this * Interval{s, 0.0}; }
    Interval operator/(double s) const { return *this / Interval{s, 0.0}; }

    friend Interval operator*(double s, const Interval& a) { return a * s; }
    friend Interval operator+(double s, const Interval& a) { return a + s; }
    friend Interval operator-(double s, const Interval& a) { return Interval{s, 0.0} - a; }
    friend Interval operator/(double s, const Interval& a) { return Interval{s, 0.0} / a; }
};

// Integer power, k >= 0.
inline Interval pow_int(const Interval& a, int k) {
    Interval out{1.0, 0.0};
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

}  // namespace erw
