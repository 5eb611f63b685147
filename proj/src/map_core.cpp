#include "cotrng/map_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cotrng::maps {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

EvalResult classify(double v) {
    if (!std::isfinite(v)) return {v, EvalStatus::non_finite};
    return {v, EvalStatus::ok};
}

} // namespace

double cot2_via_tan(double x) {
    const double t = std::tan(x);
    return 1.0 / (t * t);
}

double cot2_via_cos_sin(double x) {
    const double c = std::cos(x) / std::sin(x);
    return c * c;
}

double floored_mod(double value, double period) {
    double m = std::fmod(value, period);
    if (m < 0.0) m += period;
    // fmod is exact, but the += above can round up to the period boundary;
    // 0 and period are the same point on the circle.
    if (m >= period) m -= period;
    return m;
}

PeriodicMap make_map(MapId id, std::optional<double> slope) {
    if (id == MapId::sawtooth) {
        if (!slope) throw std::invalid_argument("sawtooth requires a slope");
        require_finite(*slope, "sawtooth slope");
        return {id, 1.0, slope, {}};
    }
    if (slope) throw std::invalid_argument("slope is only valid for sawtooth");
    switch (id) {
        case MapId::cot2:            return {id, kHalfPi, {}, {0.0}};
        case MapId::inv_x_sq:        return {id, 1.0, {}, {0.0}};
        case MapId::inv_one_minus_x: return {id, 1.0, {}, {1.0}};
        case MapId::inv_cos:         return {id, kPi, {}, {0.5}};
        case MapId::inv_sin_sq:      return {id, kPi, {}, {0.0, 1.0}};
        default: break;
    }
    throw std::invalid_argument("unknown map id");
}

EvalResult eval_raw(const PeriodicMap& map, double x) {
    require_finite(x, "x");
    switch (map.id) {
        case MapId::cot2: {
            const double t = std::tan(x);
            if (t == 0.0) return {0.0, EvalStatus::singular};
            return classify(1.0 / (t * t));
        }
        case MapId::inv_x_sq: {
            if (x == 0.0) return {0.0, EvalStatus::singular};
            return classify(1.0 / (x * x));
        }
        case MapId::inv_one_minus_x: {
            const double d = 1.0 - x;
            if (d == 0.0) return {0.0, EvalStatus::singular};
            return classify(1.0 / d);
        }
        case MapId::inv_cos: {
            const double c = std::cos(x);
            if (c == 0.0) return {0.0, EvalStatus::singular};
            return classify(1.0 / c);
        }
        case MapId::inv_sin_sq: {
            const double s = std::sin(x);
            if (s == 0.0) return {0.0, EvalStatus::singular};
            return classify(1.0 / (s * s));
        }
        case MapId::sawtooth:
            return classify(*map.slope * (1.0 - x));
    }
    throw std::invalid_argument("unknown map id");
}

EvalResult eval_normalized(const PeriodicMap& map, double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::invalid_argument("normalized evaluation requires x in (0,1)");
    }
    const EvalResult raw = eval_raw(map, x * map.period);
    if (!raw.ok()) return raw;
    return {floored_mod(raw.value, map.period) / map.period, EvalStatus::ok};
}

EvalResult eval_derivative(const PeriodicMap& map, double x) {
    require_finite(x, "x");
    switch (map.id) {
        case MapId::cot2:
        case MapId::inv_sin_sq: {
            // d/dx cot^2(x) and d/dx 1/sin^2(x) share |2 cos x / sin^3 x|.
            const double s = std::sin(x);
            if (s == 0.0) return {0.0, EvalStatus::singular};
            return classify(std::fabs(2.0 * std::cos(x) / (s * s * s)));
        }
        case MapId::inv_x_sq: {
            if (x == 0.0) return {0.0, EvalStatus::singular};
            return classify(std::fabs(2.0 / (x * x * x)));
        }
        case MapId::inv_one_minus_x: {
            const double d = 1.0 - x;
            if (d == 0.0) return {0.0, EvalStatus::singular};
            return classify(1.0 / (d * d));
        }
        case MapId::inv_cos: {
            const double c = std::cos(x);
            if (c == 0.0) return {0.0, EvalStatus::singular};
            return classify(std::fabs(std::sin(x) / (c * c)));
        }
        case MapId::sawtooth:
            return {std::fabs(*map.slope), EvalStatus::ok};
    }
    throw std::invalid_argument("unknown map id");
}

EvalResult eval_normalized_derivative(const PeriodicMap& map, double u) {
    return eval_derivative(map, u * map.period);
}

double eval_sawtooth(double m, double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::invalid_argument("sawtooth requires x in (0,1)");
    }
    return floored_mod(m * (1.0 - x), 1.0);
}

std::string to_string(MapId id) {
    switch (id) {
        case MapId::cot2:            return "cot2";
        case MapId::inv_x_sq:        return "inv_x_sq";
        case MapId::inv_one_minus_x: return "inv_one_minus_x";
        case MapId::inv_cos:         return "inv_cos";
        case MapId::inv_sin_sq:      return "inv_sin_sq";
        case MapId::sawtooth:        return "sawtooth";
    }
    return "unknown";
}

std::optional<MapId> parse_map_id(std::string_view name) {
    if (name == "cot2") return MapId::cot2;
    if (name == "inv_x_sq") return MapId::inv_x_sq;
    if (name == "inv_one_minus_x") return MapId::inv_one_minus_x;
    if (name == "inv_cos") return MapId::inv_cos;
    if (name == "inv_sin_sq") return MapId::inv_sin_sq;
    if (name == "sawtooth") return MapId::sawtooth;
    return std::nullopt;
}

} // namespace cotrng::maps
