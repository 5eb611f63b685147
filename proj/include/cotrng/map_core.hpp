#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Catalog of the iterated maps: raw evaluation, normalization onto the unit
// circle, and closed-form derivatives. Everything here is a pure function;
// singularities are reported through EvalResult, never patched over.

namespace cotrng::maps {

enum class MapId {
    cot2,             // g(x) = cot^2(x) = 1/tan^2(x), period pi/2
    inv_x_sq,         // g(x) = 1/x^2, period 1
    inv_one_minus_x,  // g(x) = 1/(1-x), period 1
    inv_cos,          // g(x) = 1/cos(x), period pi
    inv_sin_sq,       // g(x) = 1/sin^2(x), period pi
    sawtooth,         // g(x) = m(1-x), period 1 (mod applied by normalization)
};

enum class EvalStatus {
    ok,
    singular,   // input hit a pole/zero of the defining formula
    non_finite, // the formula overflowed before the modulus
};

struct EvalResult {
    double value = 0.0;
    EvalStatus status = EvalStatus::ok;

    bool ok() const { return status == EvalStatus::ok; }
};

// Descriptor for one catalog entry. `discontinuities` lists the normalized
// coordinates in [0,1] where the raw map is singular; the countable jump set
// introduced by the modulus is not enumerable and is not stored.
struct PeriodicMap {
    MapId id = MapId::cot2;
    double period = 1.0;
    std::optional<double> slope;        // sawtooth slope m, absent otherwise
    std::vector<double> discontinuities;
};

// Builds the catalog entry for `id` with the standard period. Sawtooth
// requires a slope; every other map rejects one.
PeriodicMap make_map(MapId id, std::optional<double> slope = std::nullopt);

// g(x) at a raw (unnormalized) coordinate.
EvalResult eval_raw(const PeriodicMap& map, double x);

// N_g(x) = (g(x*T) mod T) / T for x in (0,1). Result lies in [0,1) on ok.
EvalResult eval_normalized(const PeriodicMap& map, double x);

// |dg/dx| at a raw coordinate, closed form. The modulus does not change the
// derivative away from its jump points, so this is also the normalized-map
// slope at u = x/T.
EvalResult eval_derivative(const PeriodicMap& map, double x);

// Slope of the normalized map at normalized coordinate u, i.e. |g'(u*T)|.
EvalResult eval_normalized_derivative(const PeriodicMap& map, double u);

// The sawtooth map itself: m(1-x) mod 1 for x in (0,1).
double eval_sawtooth(double m, double x);

// cot^2 both ways. The byte generator pins the tan route; the cos/sin route
// exists for cross-checking and differs only in the last ulps.
double cot2_via_tan(double x);
double cot2_via_cos_sin(double x);

// Floored modulus into [0, period). period > 0.
double floored_mod(double value, double period);

std::string to_string(MapId id);
std::optional<MapId> parse_map_id(std::string_view name);

} // namespace cotrng::maps
