#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "erw/lattice.hpp"

namespace erw {

// SplitMix64 substream keyed by (seed, stream index).  The generator family
// is fixed: reports are bit-reproducible across runs and thread counts.
class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t stream) { reset(seed, stream); }

    void reset(uint64_t seed, uint64_t stream) {
        state_ = mix(mix(seed ^ 0x2545F4914F6CDD1Dull) ^ (stream * 0x9E3779B97F4A7C15ull));
    }

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    uint64_t state_;
};

struct SimConfig {
    int steps = 2000;
    int replicas = 100000;
    uint64_t seed = 1;
    int window = 0;  // 0 means steps / 2
    bool parallel = true;

    int effective_window() const { return window > 0 ? window : std::max(1, steps / 2); }

    void validate() const {
        if (steps < 1) throw std::domain_error("SimConfig: steps must be >= 1");
        if (replicas < 1) throw std::domain_error("SimConfig: replicas must be >= 1");
        int w = effective_window();
        if (w < 1 || w > steps) throw std::domain_error("SimConfig: window must be in [1, steps]");
    }
};

enum class Estimator { endpoint, fresh_site };

struct DriftEstimate {
    int d;
    double beta;
    Estimator estimator;
    std::vector<double> mean;    // d coordinates
    std::vector<double> stderr_; // d coordinates
    SimConfig config;
};

struct PathSample {
    LatticeVector endpoint;
    std::vector<uint8_t> fresh;  // fresh[i]: site before step i was unvisited
};

// One trajectory.  Each step consumes exactly two uniforms (axis, then sign),
// mapped through the beta-tilted kernel by inverse CDF, so streams stay
// aligned across beta values for the coupled scan.
PathSample simulate_path(const ModelParams& params, int steps, RandomStream& stream);

DriftEstimate estimate_drift(const ModelParams& params, const SimConfig& cfg, Estimator estimator);

// Both estimators from one set of trajectories (shared randomness).
std::pair<DriftEstimate, DriftEstimate> estimate_drift_both(const ModelParams& params,
                                                            const SimConfig& cfg);

struct BetaScanReport {
    int d;
    std::vector<double> betas;
    std::vector<DriftEstimate> estimates;       // endpoint estimator per beta
    std::vector<double> diff_mean;              // adjacent pairs, coordinate 1
    std::vector<double> diff_stderr;
    bool coupled;
};

// Drift across a beta grid.  Coupled mode replays identical uniforms per
// (replica, step) for every beta (common random numbers), so paired
// differences have small variance.
BetaScanReport scan_beta(int d, const std::vector<double>& betas, const SimConfig& cfg,
                         bool coupled);

}  // namespace erw
