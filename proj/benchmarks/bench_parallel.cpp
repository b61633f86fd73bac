// Compares the serial reference path against the OpenMP path for the two
// data-parallel kernels (replica simulation, expansion enumeration) and
// checks that both produce identical results.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "erw/expansion.hpp"
#include "erw/montecarlo.hpp"

using namespace erw;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());

    {
        ModelParams params(9, 1.0);
        SimConfig cfg;
        cfg.steps = 1000;
        cfg.replicas = 20000;
        cfg.seed = 7;

        cfg.parallel = false;
        auto t0 = std::chrono::steady_clock::now();
        DriftEstimate serial = estimate_drift(params, cfg, Estimator::endpoint);
        double ts = seconds_since(t0);

        cfg.parallel = true;
        t0 = std::chrono::steady_clock::now();
        DriftEstimate parallel = estimate_drift(params, cfg, Estimator::endpoint);
        double tp = seconds_since(t0);

        bool same = serial.mean == parallel.mean && serial.stderr_ == parallel.stderr_;
        std::printf("monte-carlo   serial %.3fs  parallel %.3fs  speedup %.2fx  identical %s\n",
                    ts, tp, ts / tp, same ? "yes" : "NO");
    }

    {
        ExactBeta beta{1, 2};
        auto t0 = std::chrono::steady_clock::now();
        auto serial = enumerate_two_point(3, beta, 8, false);
        double ts = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        auto parallel = enumerate_two_point(3, beta, 8, true);
        double tp = seconds_since(t0);

        bool same = true;
        for (int n = 0; n <= 8 && same; ++n) same = serial.table[n] == parallel.table[n];
        std::printf("enumeration   serial %.3fs  parallel %.3fs  speedup %.2fx  identical %s\n",
                    ts, tp, ts / tp, same ? "yes" : "NO");
    }
    return 0;
}
