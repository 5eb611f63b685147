#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

// The random byte generator: iterate x <- 1/tan^2(x) in binary64 and emit the
// six low-order bytes of each iterate's bit pattern. The tan route is the
// canonical step formula; switching to (cos/sin)^2 would fork the byte stream
// by a few ulps per step.

namespace cotrng::bytegen {

// Escape constant for the (measure-zero) recovery path: frac(x + phi) + 0.1.
inline constexpr double kRecoveryPhi = 0.6180339887498949;

struct GeneratorState {
    double x = 0.0;                 // current iterate, always finite
    double seed = 0.0;              // x0 as given
    std::uint64_t iterations = 0;   // steps applied since seeding
    std::uint64_t reseed_events = 0;
};

// Deterministic seeding. Rejects non-finite seeds and seeds within 1 ulp of a
// multiple of pi (the iteration would start on a pole).
GeneratorState seed_from_value(double x0);

// Seeds from the fractional second of the wall clock at nanosecond
// resolution, substituting 0.5 for an exact integer second, then applies one
// warm-up step so the clock value itself is never emitted.
GeneratorState seed_from_time();

// One iteration of x <- 1/tan^2(x). If the result is non-finite, zero, or
// bit-identical to the previous iterate, the recovery constant restarts the
// orbit deterministically. Exactly one iteration is counted either way.
inline void step(GeneratorState& state) {
    const double prev = state.x;
    const double t = std::tan(prev);
    double next = 1.0 / (t * t);
    if (!std::isfinite(next) || next == 0.0 ||
        std::bit_cast<std::uint64_t>(next) == std::bit_cast<std::uint64_t>(prev)) {
        const double shifted = prev + kRecoveryPhi;
        next = (shifted - std::floor(shifted)) + 0.1;
        ++state.reseed_events;
    }
    state.x = next;
    ++state.iterations;
}

// Bytes B5..B0 of the IEEE-754 bit pattern: the top two bytes (sign, exponent
// and the leading 4 mantissa bits) are discarded, the rest emitted
// most-significant surviving byte first.
using ByteBlock = std::array<std::uint8_t, 6>;

inline ByteBlock extract_bytes(double x) {
    const std::uint64_t w = std::bit_cast<std::uint64_t>(x);
    return {static_cast<std::uint8_t>(w >> 40), static_cast<std::uint8_t>(w >> 32),
            static_cast<std::uint8_t>(w >> 24), static_cast<std::uint8_t>(w >> 16),
            static_cast<std::uint8_t>(w >> 8),  static_cast<std::uint8_t>(w)};
}

// Steps and extracts until `out` is full; a trailing partial block is
// truncated. Advances the state by ceil(out.size()/6) steps.
inline void fill(GeneratorState& state, std::span<std::uint8_t> out) {
    std::uint8_t* dst = out.data();
    const std::size_t n = out.size();
    std::size_t written = 0;
    while (written + 6 <= n) {
        step(state);
        const ByteBlock block = extract_bytes(state.x);
        std::memcpy(dst + written, block.data(), 6);
        written += 6;
    }
    if (written < n) {
        step(state);
        const ByteBlock block = extract_bytes(state.x);
        std::memcpy(dst + written, block.data(), n - written);
    }
}

std::vector<std::uint8_t> fill(GeneratorState& state, std::size_t n_bytes);

// The 52 mantissa bits as 13 lowercase hex digits, matching the fraction
// field of hexadecimal float notation. Rejects zero/subnormal/non-finite
// input (their mantissa field does not carry 52 significant bits).
std::string hex_mantissa(double x);

} // namespace cotrng::bytegen
