#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cotrng/map_core.hpp"

// Orbit computation and numeric probes for the chaos conditions: slope scans,
// escape from non-expansive zones, cycle detection, fixed points, orbit
// density and byte-stream sensitivity.

namespace cotrng::dyn {

enum class OrbitMode {
    raw,        // iterate g directly
    normalized, // iterate N_g on (0,1)
    fractional, // iterate g, record x - floor(x)
};

struct Orbit {
    maps::MapId map_id = maps::MapId::cot2;
    OrbitMode mode = OrbitMode::raw;
    std::vector<double> points;  // points[0] is the seed
    bool truncated = false;      // iteration stopped on singular/non-finite
};

struct CycleResult {
    bool found = false;
    std::size_t start_index = 0;
    std::size_t period = 0;
    bool truncated = false;  // orbit hit a singularity before any repeat
};

struct FixedPointResult {
    bool converged = false;
    double value = 0.0;
    std::size_t iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
};

struct EscapeSample {
    double start = 0.0;      // x_s, sampled inside a non-expansive interval
    std::size_t steps = 0;   // iterations until the slope first exceeds 1
    double landing = 0.0;    // x_g, the iterate where that happened
    bool escaped = false;    // false: max_steps exhausted (or orbit died)
};

struct GridPoint {
    double x = 0.0;
    double abs_derivative = 0.0;
    bool non_expansive = false;
};

struct ExpansivenessReport {
    maps::PeriodicMap map;
    std::size_t grid_size = 0;
    std::size_t skipped_points = 0;    // singular or inside an excluded neighborhood
    std::size_t expansive_points = 0;
    // Minimum slope over the expansive grid points, the expansiveness
    // constant of the map. Only meaningful when expansive_points > 0.
    double min_slope = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> non_expansive_intervals;
    std::vector<GridPoint> profile;    // one entry per retained grid point
    std::vector<EscapeSample> escape;  // filled by escape_check
    std::size_t escape_max_steps = 0;
};

struct DensityHistogram {
    std::vector<std::uint64_t> counts;
    std::size_t empty_bins = 0;
    std::uint64_t total = 0;  // orbit points that fell in [0,1)
};

struct StateSpaceBound {
    std::uint64_t states = 0;
    bool overflow = false;  // saturated at the maximum representable count
};

// Forward orbit of n steps from x0 under the chosen mode. Stops early with
// truncated=true if a step is singular, non-finite, or leaves the mode's
// domain. Throws only if x0 itself is invalid for the mode.
Orbit iterate_orbit(const maps::PeriodicMap& map, double x0, std::size_t n, OrbitMode mode);

// Brent cycle detection over an arbitrary step functor, comparing binary64
// iterates bit-exactly. `f` returns the next value or nullopt when the orbit
// dies. Header-inline so tests can drive it with synthetic sequences.
template <typename F>
CycleResult brent_cycle(F&& f, double x0, std::size_t max_iter) {
    const auto bits = [](double v) { return std::bit_cast<std::uint64_t>(v); };
    CycleResult result;

    // Phase 1: find the cycle length with doubling windows.
    double tortoise = x0;
    std::optional<double> next = f(x0);
    if (!next) {
        result.truncated = true;
        return result;
    }
    double hare = *next;
    std::size_t power = 1, lambda = 1, evals = 1;
    while (bits(tortoise) != bits(hare)) {
        if (evals >= max_iter) return result;  // no repeat inside the budget
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        next = f(hare);
        if (!next) {
            result.truncated = true;
            return result;
        }
        hare = *next;
        ++evals;
        ++lambda;
    }

    // Phase 2: locate the first repeat (cycle start).
    tortoise = hare = x0;
    for (std::size_t i = 0; i < lambda; ++i) {
        next = f(hare);
        if (!next) {
            result.truncated = true;
            return result;
        }
        hare = *next;
    }
    std::size_t mu = 0;
    while (bits(tortoise) != bits(hare)) {
        next = f(tortoise);
        if (!next) {
            result.truncated = true;
            return result;
        }
        tortoise = *next;
        next = f(hare);
        if (!next) {
            result.truncated = true;
            return result;
        }
        hare = *next;
        ++mu;
    }

    result.found = true;
    result.start_index = mu;
    result.period = lambda;
    return result;
}

// Cycle detection on raw-map iterates from x0.
CycleResult detect_cycle(const maps::PeriodicMap& map, double x0, std::size_t max_iter);

// Fixed-point iteration under the chosen mode (raw or normalized), stopping
// when successive iterates differ by at most tol.
FixedPointResult find_fixed_point(const maps::PeriodicMap& map, double x0, double tol,
                                  std::size_t max_iter, OrbitMode mode = OrbitMode::normalized);

// Slope profile of the normalized map on a uniform interior grid (midpoints
// of grid_size cells), excluding neighborhoods of radius 1/(10*grid_size)
// around the catalog discontinuities.
ExpansivenessReport expansiveness_scan(const maps::PeriodicMap& map, std::size_t grid_size);

// Escape probe for one start point: iterate the normalized map until the
// slope exceeds 1 or max_steps runs out.
EscapeSample escape_from(const maps::PeriodicMap& map, double x_s, std::size_t max_steps);

// Runs escape_from on every non-expansive grid point of the scan.
ExpansivenessReport escape_check(ExpansivenessReport report, std::size_t max_steps);

// Uniform-bin histogram of the orbit over [0,1). Points outside [0,1) (only
// the seed can be, by the mode invariants) are not counted.
DensityHistogram density_histogram(const Orbit& orbit, std::size_t bins);

// First byte index at which the cot2 streams seeded x0 and x0+delta differ,
// compared over n_blocks 6-byte blocks; nullopt if they agree on the window.
std::optional<std::size_t> sensitivity_divergence(double x0, double delta, std::size_t n_blocks);

// b^N, saturating at the maximum representable count.
StateSpaceBound state_space_bound(std::uint64_t base, std::uint64_t digits);

} // namespace cotrng::dyn
