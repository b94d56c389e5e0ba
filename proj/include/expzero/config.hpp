#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace expzero {

// All numeric knobs of the analytic engine with their defaults. Every
// tolerance used anywhere in the contour, isolation and sampling code is a
// field here, never a literal buried in an algorithm.
struct Tolerances {
    double zero_on_contour = 1e-8;   // |phi| below this at a boundary sample is an error
    double winding_integer = 1e-6;   // raw winding must be this close to an integer
    double clearance = 1e-6;         // contours keep this distance from excluded points
    double residual = 1e-9;          // certificate residual bound
    double newton_step = 1e-12;      // Newton convergence threshold
    int newton_max_iter = 100;
    double newton_divergence = 1e6;  // |z| beyond this aborts a Newton run
    int cell_budget = 4096;          // subdivision cell cap
    double min_cell = 1e-6;          // cells smaller than this become clusters
    int jitter_retries = 8;
    double jitter_scale = 1e-3;
    double trace_imag = 1e-10;       // max |Im| for an assume_real circle trace
    double branch_closure = 1e-6;    // log branch must close up around a loop
    int laurent_min_samples = 1024;
    std::uint64_t seed = 0x5EED;
    int threads = 1;

    static int env_threads() {
        const char* s = std::getenv("EXPZERO_THREADS");
        if (!s) return 1;
        int n = std::atoi(s);
        return n > 0 ? n : 1;
    }
};

}  // namespace expzero
