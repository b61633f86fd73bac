#include "erw/montecarlo.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <unordered_set>

namespace erw {

namespace {

constexpr int kMaxSimDim = 16;

struct PackedSite {
    std::array<int32_t, kMaxSimDim> c{};
    bool operator==(const PackedSite& o) const { return c == o.c; }
};

struct PackedSiteHash {
    size_t operator()(const PackedSite& s) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (int32_t x : s.c) {
            h ^= static_cast<uint32_t>(x);
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

using VisitedSet = std::unordered_set<PackedSite, PackedSiteHash>;

struct StepperResult {
    PackedSite endpoint;
    int fresh_in_window = 0;
};

// Inner loop shared by all samplers.  Two uniforms per step: axis then sign.
// The sign interval for the first axis is tilted by beta when the current
// site is fresh; everything else is beta-independent, which is what makes
// common-random-numbers coupling across beta values work.
StepperResult run_path(const ModelParams& params, int steps, int window, RandomStream& stream,
                       VisitedSet& visited, std::vector<uint8_t>* fresh_out) {
    const int d = params.d;
    PackedSite pos{};
    visited.clear();
    visited.insert(pos);
    bool fresh = true;
    StepperResult out;
    const int window_start = steps - window;
    for (int i = 0; i < steps; ++i) {
        if (fresh_out) (*fresh_out)[i] = fresh ? 1 : 0;
        if (i >= window_start) out.fresh_in_window += fresh ? 1 : 0;
        double u_axis = stream.uniform();
        double u_sign = stream.uniform();
        int axis = std::min(d - 1, static_cast<int>(u_axis * d));
        int sign;
        if (axis == 0) {
            double p_plus = 0.5 * (1.0 + (fresh ? params.beta : 0.0));
            sign = u_sign < p_plus ? +1 : -1;
        } else {
            sign = u_sign < 0.5 ? +1 : -1;
        }
        pos.c[axis] += sign;
        fresh = visited.insert(pos).second;
    }
    out.endpoint = pos;
    return out;
}

void check_sim_dim(int d) {
    if (d > kMaxSimDim)
        throw std::domain_error("montecarlo: simulation supports d <= " +
                                std::to_string(kMaxSimDim));
}

struct ReplicaStats {
    // endpoints[r * d + j]; window_fraction[r]
    std::vector<int32_t> endpoints;
    std::vector<double> window_fraction;
};

ReplicaStats run_replicas(const ModelParams& params, const SimConfig& cfg) {
    cfg.validate();
    check_sim_dim(params.d);
    const int R = cfg.replicas, n = cfg.steps, w = cfg.effective_window();
    ReplicaStats stats;
    stats.endpoints.assign(static_cast<size_t>(R) * params.d, 0);
    stats.window_fraction.assign(R, 0.0);

#pragma omp parallel if (cfg.parallel)
    {
        VisitedSet visited;
        visited.reserve(2 * n);
        RandomStream stream(0, 0);
#pragma omp for schedule(static)
        for (int r = 0; r < R; ++r) {
            stream.reset(cfg.seed, static_cast<uint64_t>(r));
            StepperResult res = run_path(params, n, w, stream, visited, nullptr);
            for (int j = 0; j < params.d; ++j)
                stats.endpoints[static_cast<size_t>(r) * params.d + j] = res.endpoint.c[j];
            stats.window_fraction[r] = static_cast<double>(res.fresh_in_window) / w;
        }
    }
    return stats;
}

// Mean and standard error of the replica mean, reduced in replica order.
std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
    const size_t R = xs.size();
    double sum = 0.0;
    for (double x : xs) sum += x;
    double mean = sum / R;
    if (R < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (static_cast<double>(R) * (R - 1)))};
}

DriftEstimate endpoint_estimate(const ModelParams& params, const SimConfig& cfg,
                                const ReplicaStats& stats) {
    const int R = cfg.replicas, d = params.d, n = cfg.steps;
    DriftEstimate est{d, params.beta, Estimator::endpoint, std::vector<double>(d),
                      std::vector<double>(d), cfg};
    std::vector<double> coord(R);
    for (int j = 0; j < d; ++j) {
        for (int r = 0; r < R; ++r)
            coord[r] = static_cast<double>(stats.endpoints[static_cast<size_t>(r) * d + j]) / n;
        auto [m, se] = mean_stderr(coord);
        est.mean[j] = m;
        est.stderr_[j] = se;
    }
    return est;
}

DriftEstimate fresh_site_estimate(const ModelParams& params, const SimConfig& cfg,
                                  const ReplicaStats& stats) {
    const int d = params.d;
    DriftEstimate est{d, params.beta, Estimator::fresh_site, std::vector<double>(d, 0.0),
                      std::vector<double>(d, 0.0), cfg};
    auto [m, se] = mean_stderr(stats.window_fraction);
    double scale = params.beta / d;
    est.mean[0] = scale * m;
    est.stderr_[0] = scale * se;
    return est;
}

}  // namespace

PathSample simulate_path(const ModelParams& params, int steps, RandomStream& stream) {
    if (steps < 1) throw std::domain_error("simulate_path: steps must be >= 1");
    check_sim_dim(params.d);
    VisitedSet visited;
    visited.reserve(2 * steps);
    PathSample sample;
    sample.fresh.assign(steps, 0);
    StepperResult res = run_path(params, steps, steps, stream, visited, &sample.fresh);
    sample.endpoint = LatticeVector(params.d);
    for (int j = 0; j < params.d; ++j) sample.endpoint.c[j] = res.endpoint.c[j];
    return sample;
}

DriftEstimate estimate_drift(const ModelParams& params, const SimConfig& cfg, Estimator estimator) {
    ReplicaStats stats = run_replicas(params, cfg);
    return estimator == Estimator::endpoint ? endpoint_estimate(params, cfg, stats)
                                            : fresh_site_estimate(params, cfg, stats);
}

std::pair<DriftEstimate, DriftEstimate> estimate_drift_both(const ModelParams& params,
                                                            const SimConfig& cfg) {
    ReplicaStats stats = run_replicas(params, cfg);
    return {endpoint_estimate(params, cfg, stats), fresh_site_estimate(params, cfg, stats)};
}

BetaScanReport scan_beta(int d, const std::vector<double>& betas, const SimConfig& cfg,
                         bool coupled) {
    cfg.validate();
    check_sim_dim(d);
    if (betas.empty()) throw std::domain_error("scan_beta: empty beta grid");
    for (size_t b = 0; b < betas.size(); ++b) {
        if (betas[b] < 0.0 || betas[b] > 1.0)
            throw std::domain_error("scan_beta: beta grid must lie in [0,1]");
        if (b > 0 && betas[b] < betas[b - 1])
            throw std::domain_error("scan_beta: beta grid must be ascending");
    }

    const int R = cfg.replicas, n = cfg.steps, w = cfg.effective_window();
    const size_t B = betas.size();
    std::vector<int32_t> endpoints(static_cast<size_t>(R) * B * d, 0);
    std::vector<double> fractions(static_cast<size_t>(R) * B, 0.0);

#pragma omp parallel if (cfg.parallel)
    {
        VisitedSet visited;
        visited.reserve(2 * n);
        RandomStream stream(0, 0);
#pragma omp for schedule(static)
        for (int r = 0; r < R; ++r) {
            for (size_t b = 0; b < B; ++b) {
                // Coupled: every beta replays the same substream.
                uint64_t key = coupled ? static_cast<uint64_t>(r)
                                       : static_cast<uint64_t>(b) * R + r;
                stream.reset(cfg.seed, key);
                ModelParams params(d, betas[b]);
                StepperResult res = run_path(params, n, w, stream, visited, nullptr);
                size_t base = (static_cast<size_t>(r) * B + b) * d;
                for (int j = 0; j < d; ++j) endpoints[base + j] = res.endpoint.c[j];
                fractions[static_cast<size_t>(r) * B + b] =
                    static_cast<double>(res.fresh_in_window) / w;
            }
        }
    }

    BetaScanReport report{d, betas, {}, {}, {}, coupled};
    std::vector<double> coord(R);
    for (size_t b = 0; b < B; ++b) {
        ModelParams params(d, betas[b]);
        DriftEstimate est{d, betas[b], Estimator::endpoint, std::vector<double>(d),
                          std::vector<double>(d), cfg};
        for (int j = 0; j < d; ++j) {
            for (int r = 0; r < R; ++r)
                coord[r] =
                    static_cast<double>(endpoints[(static_cast<size_t>(r) * B + b) * d + j]) / n;
            auto [m, se] = mean_stderr(coord);
            est.mean[j] = m;
            est.stderr_[j] = se;
        }
        report.estimates.push_back(std::move(est));
    }
    for (size_t b = 0; b + 1 < B; ++b) {
        for (int r = 0; r < R; ++r) {
            double lo = endpoints[(static_cast<size_t>(r) * B + b) * d + 0];
            double hi = endpoints[(static_cast<size_t>(r) * B + b + 1) * d + 0];
            coord[r] = (hi - lo) / n;
        }
        auto [m, se] = mean_stderr(coord);
        report.diff_mean.push_back(m);
        report.diff_stderr.push_back(se);
    }
    return report;
}

}  // namespace erw
