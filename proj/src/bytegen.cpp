#include "cotrng/bytegen.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace cotrng::bytegen {

namespace {

double ulp_of(double x) {
    const double ax = std::fabs(x);
    return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

} // namespace

GeneratorState seed_from_value(double x0) {
    if (!std::isfinite(x0)) {
        throw std::invalid_argument("seed must be finite");
    }
    const double r = std::remainder(x0, std::numbers::pi);
    if (std::fabs(r) <= ulp_of(x0)) {
        throw std::invalid_argument("seed is within 1 ulp of a multiple of pi");
    }
    return {x0, x0, 0, 0};
}

GeneratorState seed_from_time() {
    const auto since_epoch = std::chrono::system_clock::now().time_since_epoch();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(since_epoch).count();
    double frac = static_cast<double>(ns % 1'000'000'000LL) / 1e9;
    if (frac == 0.0) frac = 0.5;
    GeneratorState state{frac, frac, 0, 0};
    step(state); // warm-up: never emit bytes of the raw clock value
    return state;
}

std::vector<std::uint8_t> fill(GeneratorState& state, std::size_t n_bytes) {
    std::vector<std::uint8_t> out(n_bytes);
    fill(state, std::span<std::uint8_t>(out));
    return out;
}

std::string hex_mantissa(double x) {
    if (std::fpclassify(x) != FP_NORMAL) {
        throw std::invalid_argument("hex_mantissa requires a normal value");
    }
    const std::uint64_t mantissa =
        std::bit_cast<std::uint64_t>(x) & 0x000F'FFFF'FFFF'FFFFULL;
    char buf[14];
    std::snprintf(buf, sizeof buf, "%013llx", static_cast<unsigned long long>(mantissa));
    return buf;
}

} // namespace cotrng::bytegen
