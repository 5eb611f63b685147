#include "cotrng/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "cotrng/bytegen.hpp"

namespace cotrng::dyn {

namespace {

using maps::EvalResult;
using maps::EvalStatus;
using maps::PeriodicMap;

bool in_unit_interval(double x) { return x > 0.0 && x < 1.0; }

// One step under the mode; nullopt when the orbit leaves the domain or the
// evaluation is not ok.
std::optional<double> step_mode(const PeriodicMap& map, double x, OrbitMode mode) {
    switch (mode) {
        case OrbitMode::raw: {
            if (!std::isfinite(x)) return std::nullopt;
            const EvalResult r = maps::eval_raw(map, x);
            if (!r.ok()) return std::nullopt;
            return r.value;
        }
        case OrbitMode::normalized: {
            if (!in_unit_interval(x)) return std::nullopt;
            const EvalResult r = maps::eval_normalized(map, x);
            if (!r.ok()) return std::nullopt;
            return r.value;
        }
        case OrbitMode::fractional: {
            if (!std::isfinite(x)) return std::nullopt;
            const EvalResult r = maps::eval_raw(map, x);
            if (!r.ok()) return std::nullopt;
            return r.value;
        }
    }
    return std::nullopt;
}

void validate_seed(const PeriodicMap& map, double x0, OrbitMode mode) {
    if (!std::isfinite(x0)) throw std::invalid_argument("orbit seed must be finite");
    if (mode == OrbitMode::normalized && !in_unit_interval(x0)) {
        throw std::invalid_argument("normalized orbit requires x0 in (0,1)");
    }
    (void)map;
}

} // namespace

Orbit iterate_orbit(const PeriodicMap& map, double x0, std::size_t n, OrbitMode mode) {
    if (n < 1) throw std::invalid_argument("orbit length must be at least 1");
    validate_seed(map, x0, mode);

    Orbit orbit{map.id, mode, {}, false};
    orbit.points.reserve(n + 1);
    orbit.points.push_back(x0);

    double state = x0;  // fractional mode iterates the raw value, records frac
    for (std::size_t k = 0; k < n; ++k) {
        const std::optional<double> next = step_mode(map, state, mode);
        if (!next) {
            orbit.truncated = true;
            break;
        }
        state = *next;
        if (mode == OrbitMode::fractional) {
            orbit.points.push_back(state - std::floor(state));
        } else {
            orbit.points.push_back(state);
        }
    }
    return orbit;
}

CycleResult detect_cycle(const PeriodicMap& map, double x0, std::size_t max_iter) {
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (!std::isfinite(x0)) throw std::invalid_argument("seed must be finite");
    return brent_cycle(
        [&map](double x) { return step_mode(map, x, OrbitMode::raw); }, x0, max_iter);
}

FixedPointResult find_fixed_point(const PeriodicMap& map, double x0, double tol,
                                  std::size_t max_iter, OrbitMode mode) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (mode == OrbitMode::fractional) {
        throw std::invalid_argument("fixed-point iteration supports raw or normalized mode");
    }
    validate_seed(map, x0, mode);

    FixedPointResult result;
    double x = x0;
    for (std::size_t k = 0; k < max_iter; ++k) {
        const std::optional<double> next = step_mode(map, x, mode);
        if (!next) {
            result.iterations = k;
            return result;  // orbit died; not converged
        }
        result.iterations = k + 1;
        if (std::fabs(*next - x) <= tol) {
            result.converged = true;
            result.value = *next;
            const std::optional<double> again = step_mode(map, *next, mode);
            result.residual = again ? std::fabs(*again - *next)
                                    : std::numeric_limits<double>::infinity();
            return result;
        }
        x = *next;
    }
    result.value = x;
    return result;
}

ExpansivenessReport expansiveness_scan(const PeriodicMap& map, std::size_t grid_size) {
    if (grid_size < 100) throw std::invalid_argument("grid_size must be at least 100");

    ExpansivenessReport report;
    report.map = map;
    report.grid_size = grid_size;
    report.profile.reserve(grid_size);

    const double exclusion = 1.0 / (10.0 * static_cast<double>(grid_size));
    const double cell = 1.0 / static_cast<double>(grid_size);

    bool in_run = false;
    double run_first = 0.0, run_last = 0.0;
    const auto close_run = [&] {
        if (!in_run) return;
        double lo = run_first, hi = run_last;
        if (lo == hi) {
            // widen an isolated point by a quarter cell; midpoint grids keep
            // the result strictly inside (0,1)
            lo -= cell / 4.0;
            hi += cell / 4.0;
        }
        report.non_expansive_intervals.emplace_back(lo, hi);
        in_run = false;
    };

    for (std::size_t i = 0; i < grid_size; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * cell;
        bool excluded = false;
        for (const double z : map.discontinuities) {
            if (std::fabs(x - z) < exclusion) {
                excluded = true;
                break;
            }
        }
        if (excluded) {
            ++report.skipped_points;
            close_run();
            continue;
        }
        const EvalResult d = maps::eval_normalized_derivative(map, x);
        if (!d.ok()) {
            ++report.skipped_points;
            close_run();
            continue;
        }
        const bool non_expansive = d.value < 1.0;
        report.profile.push_back({x, d.value, non_expansive});
        if (non_expansive) {
            if (!in_run) {
                in_run = true;
                run_first = x;
            }
            run_last = x;
        } else {
            close_run();
            ++report.expansive_points;
            if (d.value < report.min_slope) report.min_slope = d.value;
        }
    }
    close_run();
    return report;
}

EscapeSample escape_from(const PeriodicMap& map, double x_s, std::size_t max_steps) {
    EscapeSample sample{x_s, 0, x_s, false};
    double x = x_s;
    for (std::size_t k = 1; k <= max_steps; ++k) {
        if (!in_unit_interval(x)) break;
        const EvalResult next = maps::eval_normalized(map, x);
        if (!next.ok()) break;
        x = next.value;
        sample.steps = k;
        sample.landing = x;
        const EvalResult d = maps::eval_normalized_derivative(map, x);
        if (d.ok() && d.value > 1.0) {
            sample.escaped = true;
            return sample;
        }
    }
    sample.steps = max_steps;
    return sample;
}

ExpansivenessReport escape_check(ExpansivenessReport report, std::size_t max_steps) {
    report.escape.clear();
    report.escape_max_steps = max_steps;
    for (const GridPoint& p : report.profile) {
        if (!p.non_expansive) continue;
        report.escape.push_back(escape_from(report.map, p.x, max_steps));
    }
    return report;
}

DensityHistogram density_histogram(const Orbit& orbit, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
    if (orbit.mode == OrbitMode::raw) {
        throw std::invalid_argument("density histogram requires a fractional or normalized orbit");
    }
    DensityHistogram hist;
    hist.counts.assign(bins, 0);
    for (const double p : orbit.points) {
        if (!(p >= 0.0 && p < 1.0)) continue;  // the seed may lie outside
        const auto idx = static_cast<std::size_t>(p * static_cast<double>(bins));
        ++hist.counts[idx < bins ? idx : bins - 1];
        ++hist.total;
    }
    for (const std::uint64_t c : hist.counts) {
        if (c == 0) ++hist.empty_bins;
    }
    return hist;
}

std::optional<std::size_t> sensitivity_divergence(double x0, double delta, std::size_t n_blocks) {
    if (delta == 0.0) throw std::invalid_argument("delta must be nonzero");
    if (n_blocks < 1) throw std::invalid_argument("need at least one block");

    bytegen::GeneratorState a = bytegen::seed_from_value(x0);
    bytegen::GeneratorState b = bytegen::seed_from_value(x0 + delta);
    for (std::size_t block = 0; block < n_blocks; ++block) {
        bytegen::step(a);
        bytegen::step(b);
        const bytegen::ByteBlock ba = bytegen::extract_bytes(a.x);
        const bytegen::ByteBlock bb = bytegen::extract_bytes(b.x);
        for (std::size_t i = 0; i < 6; ++i) {
            if (ba[i] != bb[i]) return block * 6 + i;
        }
    }
    return std::nullopt;
}

StateSpaceBound state_space_bound(std::uint64_t base, std::uint64_t digits) {
    if (base < 2) throw std::invalid_argument("base must be at least 2");
    if (digits < 1) throw std::invalid_argument("digits must be at least 1");

    StateSpaceBound bound{1, false};
    for (std::uint64_t i = 0; i < digits; ++i) {
        if (bound.states > std::numeric_limits<std::uint64_t>::max() / base) {
            return {std::numeric_limits<std::uint64_t>::max(), true};
        }
        bound.states *= base;
    }
    return bound;
}

} // namespace cotrng::dyn
