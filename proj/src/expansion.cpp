#include "erw/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "erw/greens.hpp"

namespace erw {

namespace {

constexpr double kEnumBudget = 1e8;  // leaf-path cap for exhaustive enumeration

double pow_paths(int d, int steps) { return std::pow(2.0 * d, steps); }

// Unit steps of Z^d in a fixed order: +e1, -e1, +e2, -e2, ...
std::vector<LatticeVector> unit_steps(int d) {
    std::vector<LatticeVector> steps;
    steps.reserve(2 * d);
    for (int axis = 0; axis < d; ++axis)
        for (int sign : {+1, -1}) steps.push_back(LatticeVector::unit(d, axis, sign));
    return steps;
}

bool contains(const std::vector<LatticeVector>& sites, size_t count, const LatticeVector& p) {
    for (size_t i = 0; i < count; ++i)
        if (sites[i] == p) return true;
    return false;
}

// Endpoint freshness within the walk's own path.
bool fresh_own(const std::vector<LatticeVector>& walk) {
    return !contains(walk, walk.size() - 1, walk.back());
}

// Endpoint freshness within history-concatenated-with-walk.  The walk starts
// at the history's endpoint; the shared site is counted once.
bool fresh_concat(const std::vector<LatticeVector>& hist, const std::vector<LatticeVector>& walk) {
    const LatticeVector& cur = walk.back();
    if (walk.size() == 1) {
        // Current site is the history endpoint; earlier sites are hist[0..n-2].
        return !contains(hist, hist.size() - 1, cur);
    }
    if (contains(hist, hist.size(), cur)) return false;
    // Skip walk[0] (== hist endpoint, already scanned).
    for (size_t i = 1; i + 1 < walk.size(); ++i)
        if (walk[i] == cur) return false;
    return true;
}

// Step allocations (j_1..j_N) with nonnegative entries summing to `total`.
std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == parts - 1) {
            cur[idx] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[idx] = v;
            rec(idx + 1, left - v);
        }
    };
    if (parts > 0)
        rec(0, total);
    else if (total == 0)
        out.push_back({});
    return out;
}

}  // namespace

ExactBeta parse_beta(const std::string& text) {
    auto fail = [&]() -> ExactBeta {
        throw std::domain_error("parse_beta: cannot parse \"" + text + "\" as a fraction in [0,1]");
    };
    if (text.empty()) return fail();
    long num = 0, den = 1;
    auto slash = text.find('/');
    auto dot = text.find('.');
    try {
        if (slash != std::string::npos) {
            num = std::stol(text.substr(0, slash));
            den = std::stol(text.substr(slash + 1));
        } else if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            size_t frac_len = text.size() - dot - 1;
            if (frac_len > 15) return fail();
            num = std::stol(digits);
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
        } else {
            num = std::stol(text);
        }
    } catch (const std::exception&) {
        return fail();
    }
    if (den <= 0 || num < 0 || num > den) return fail();
    long g = std::gcd(num, den);
    return ExactBeta{num / g, den / g};
}

Rational PiLevelTable::abs_norm() const {
    Rational s = 0;
    for (const auto& [key, v] : entries) s += boost::multiprecision::abs(v);
    return s;
}

SiteMap PiLevelTable::sum_over_x() const {
    SiteMap out;
    for (const auto& [key, v] : entries) out[key.y] += v;
    return out;
}

SiteMap PiLevelTable::sum_over_y() const {
    SiteMap out;
    for (const auto& [key, v] : entries) out[key.x] += v;
    return out;
}

TwoPointTable enumerate_two_point(int d, ExactBeta beta, int nmax, bool parallel) {
    if (d < 1 || nmax < 0) throw std::domain_error("enumerate_two_point: bad arguments");
    if (pow_paths(d, nmax) > kEnumBudget)
        throw resource_error("enumerate_two_point: (2d)^nmax exceeds the enumeration budget of " +
                             std::to_string(static_cast<long long>(kEnumBudget)));

    const long p = beta.num, q = beta.den;
    auto steps = unit_steps(d);

    // Per-path weights are integers over (2 d q)^n: excited steps contribute
    // q + p*s (s the e1 component), plain steps contribute q.  Accumulate the
    // integer numerators per site, then divide once.
    using CountMap = std::unordered_map<LatticeVector, BigInt, LatticeVectorHash>;
    auto run_branch = [&](int first_step) {
        std::vector<CountMap> acc(nmax + 1);
        std::vector<LatticeVector> walk;
        walk.push_back(LatticeVector(d));
        std::function<void(int, long long)> dfs = [&](int n, long long num) {
            acc[n][walk.back()] += num;
            if (n == nmax) return;
            bool fresh = fresh_own(walk);
            for (int s = 0; s < 2 * d; ++s) {
                if (first_step >= 0 && n == 0 && s != first_step) continue;
                long long factor = fresh ? q + p * steps[s].c[0] : q;
                if (factor == 0) continue;
                walk.push_back(walk.back() + steps[s]);
                dfs(n + 1, num * factor);
                walk.pop_back();
            }
        };
        dfs(0, 1);
        return acc;
    };

    std::vector<std::vector<CountMap>> partials;
    if (parallel && nmax >= 1) {
        partials.resize(2 * d);
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < 2 * d; ++s) partials[s] = run_branch(s);
        // First-step fan-out double counts n = 0; keep a single copy.
        for (int s = 1; s < 2 * d; ++s) partials[s][0].clear();
    } else {
        partials.push_back(run_branch(-1));
    }

    TwoPointTable out{d, beta, nmax, std::vector<SiteMap>(nmax + 1)};
    BigInt denom = 1;
    for (int n = 0; n <= nmax; ++n) {
        for (const auto& part : partials)
            if (n < static_cast<int>(part.size()))
                for (const auto& [site, num] : part[n])
                    if (num != 0) out.table[n][site] += Rational(num, denom);
        denom *= 2 * d * q;
    }
    return out;
}

PiTable extract_pi(const TwoPointTable& two_point) {
    const int d = two_point.d;
    const long p = two_point.beta.num, q = two_point.beta.den;
    auto steps = unit_steps(d);

    // First-step kernel p(0,y): the origin is fresh, so the excited kernel.
    SiteMap first_kernel;
    for (const auto& s : steps) {
        Rational w(q + p * s.c[0], 2L * d * q);
        if (w != 0) first_kernel[s] = w;
    }

    auto convolve = [](const SiteMap& f, const SiteMap& g) {
        SiteMap out;
        for (const auto& [y, fy] : f)
            for (const auto& [z, gz] : g) out[y + z] += fy * gz;
        return out;
    };

    PiTable pi{d, two_point.beta, two_point.nmax, {}};
    for (int n = 1; n < two_point.nmax; ++n) {
        // pi_{n+1}(x) = c_{n+1}(x) - (p * c_n)(x) - sum_{m=2}^{n} (pi_m * c_{n+1-m})(x)
        SiteMap residual = two_point.table[n + 1];
        SiteMap drift_term = convolve(first_kernel, two_point.table[n]);
        for (const auto& [x, v] : drift_term) residual[x] -= v;
        for (int m = 2; m <= n; ++m) {
            SiteMap corr = convolve(pi.by_order[m], two_point.table[n + 1 - m]);
            for (const auto& [x, v] : corr) residual[x] -= v;
        }
        SiteMap cleaned;
        for (const auto& [x, v] : residual)
            if (v != 0) cleaned[x] = v;
        pi.by_order[n + 1] = std::move(cleaned);
    }
    return pi;
}

PiLevelTable enumerate_pi_direct(int d, ExactBeta beta, int N, int m, bool parallel) {
    if (d < 1 || N < 1 || m < 2) throw std::domain_error("enumerate_pi_direct: bad arguments");
    PiLevelTable out{d, beta, N, m, {}};
    if (N + 1 > m) return out;  // no step allocation exists
    if (pow_paths(d, m) > kEnumBudget)
        throw resource_error("enumerate_pi_direct: (2d)^m exceeds the enumeration budget of " +
                             std::to_string(static_cast<long long>(kEnumBudget)));

    const long p = beta.num, q = beta.den;
    if (p == 0) return out;  // every Delta factor carries a factor beta
    auto steps = unit_steps(d);
    auto allocations = compositions(m - N - 1, N);

    using PairMap = std::unordered_map<SitePair, BigInt, SitePairHash>;

    // One level: j[n] weighted interior steps, then the signed-difference step.
    // `hist` is the previous level's walk (the only history a level sees).
    auto run_allocation = [&](const std::vector<int>& j, int first_step, PairMap& acc) {
        std::function<void(int, const std::vector<LatticeVector>&, long long)> level =
            [&](int n, const std::vector<LatticeVector>& hist, long long num) {
                const int jn = j[n - 1];
                std::vector<LatticeVector> walk{hist.back()};
                std::function<void(int, long long)> advance = [&](int i, long long cur) {
                    if (i == jn) {
                        // Delta step: nonzero only when the endpoint is fresh in
                        // the walk's own path but already visited by the history.
                        bool fo = fresh_own(walk);
                        bool fc = fresh_concat(hist, walk);
                        if (fo == fc) return;
                        for (int sign : {+1, -1}) {
                            long long dnum = -p * sign;  // p_0 - p_beta on a +-e1 step
                            LatticeVector y = walk.back() + LatticeVector::unit(d, 0, sign);
                            if (n == N) {
                                acc[SitePair{walk.back(), y}] += cur * dnum;
                            } else {
                                std::vector<LatticeVector> next_hist = walk;
                                next_hist.push_back(y);
                                level(n + 1, next_hist, cur * dnum);
                            }
                        }
                        return;
                    }
                    bool fresh = fresh_concat(hist, walk);
                    for (int s = 0; s < 2 * d; ++s) {
                        long long factor = fresh ? q + p * steps[s].c[0] : q;
                        if (factor == 0) continue;
                        walk.push_back(walk.back() + steps[s]);
                        advance(i + 1, cur * factor);
                        walk.pop_back();
                    }
                };
                advance(0, num);
            };

        LatticeVector origin(d);
        for (int s = 0; s < 2 * d; ++s) {
            if (first_step >= 0 && s != first_step) continue;
            long long factor = q + p * steps[s].c[0];  // first step is excited
            if (factor == 0) continue;
            level(1, {origin, origin + steps[s]}, factor);
        }
    };

    std::vector<PairMap> partials;
    if (parallel) {
        partials.resize(2 * d);
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < 2 * d; ++s)
            for (const auto& j : allocations) run_allocation(j, s, partials[s]);
    } else {
        partials.resize(1);
        for (const auto& j : allocations) run_allocation(j, -1, partials[0]);
    }

    BigInt denom = boost::multiprecision::pow(BigInt(2L * d * q), m);
    for (const auto& part : partials)
        for (const auto& [key, num] : part)
            if (num != 0) out.entries[key] += Rational(num, denom);
    for (auto it = out.entries.begin(); it != out.entries.end();)
        it = it->second == 0 ? out.entries.erase(it) : std::next(it);
    return out;
}

DriftSeries drift_series(int d, ExactBeta beta, int mmax, double greens_tol) {
    if (mmax < 1) throw std::domain_error("drift_series: need mmax >= 1");
    DriftSeries out{d, beta, mmax, std::vector<Rational>(d, Rational(0)), 0.0};
    out.value[0] = Rational(beta.num, static_cast<long>(d) * beta.den);

    if (mmax >= 2) {
        auto pi = extract_pi(enumerate_two_point(d, beta, mmax));
        for (const auto& [m, site_map] : pi.by_order)
            for (const auto& [y, v] : site_map)
                for (int i = 0; i < d; ++i) out.value[i] += Rational(y.c[i]) * v;
    }

    if (beta.num == 0) {
        out.tail_bound = 0.0;  // every pi vanishes at beta = 0
        return out;
    }

    // Tail: the full-norm bound per level N, summed over N, minus what the
    // exact enumeration accounts for at m <= mmax.  Valid because each level
    // bound dominates the complete |pi^(N)| norm sum.
    double bd = beta.value();
    if (d < 6) {
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    auto consts = derived_constants(d, greens_tol);
    if (!consts.a_d || consts.a_d->hi() * bd >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    Interval g1 = greens_power_origin(d - 1, 1, greens_tol).interval();
    double total = consts.E0->hi() * bd / d +
                   g1.hi() * consts.E1->hi() * bd * bd /
                       (static_cast<double>(d) * (d - 1) * (1.0 - consts.a_d->hi() * bd));

    double enumerated = 0.0;
    for (int N = 1; N <= mmax - 1; ++N) {
        Rational norm = 0;
        for (int m = N + 1; m <= mmax; ++m) norm += enumerate_pi_direct(d, beta, N, m).abs_norm();
        // Round the subtraction down so the tail bound stays an upper bound.
        double v = norm.convert_to<double>();
        enumerated += std::nextafter(v, 0.0);
    }
    out.tail_bound = std::max(0.0, total - enumerated);
    return out;
}

}  // namespace erw
