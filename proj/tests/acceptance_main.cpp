// Acceptance suite: runs each numbered criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N] [--cli /path/to/cotrng]
//
// --criterion 0 (default) runs everything. Criterion 1 drives the CLI binary
// and needs --cli. Exit code is the number of failed criteria.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cotrng/bytegen.hpp"
#include "cotrng/dynamics.hpp"
#include "cotrng/map_core.hpp"
#include "cotrng/stats.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cotrng;

std::string g_cli;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<unsigned char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 1. gen with seed 1.0 twice produces byte-identical 10^6-byte files, < 1 s.
Outcome criterion_determinism() {
    if (g_cli.empty()) return {false, "needs --cli <path to cotrng binary>"};
    const auto f1 = fs::temp_directory_path() / "cotrng_accept_1a.bin";
    const auto f2 = fs::temp_directory_path() / "cotrng_accept_1b.bin";
    const std::string base = g_cli + " gen --seed 1.0 --n 1000000 --out ";

    const auto t0 = std::chrono::steady_clock::now();
    const int rc1 = std::system((base + f1.string() + " 2>/dev/null").c_str());
    const double e1 = seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    const int rc2 = std::system((base + f2.string() + " 2>/dev/null").c_str());
    const double e2 = seconds_since(t1);

    const auto a = slurp(f1);
    const auto b = slurp(f2);
    fs::remove(f1);
    fs::remove(f2);

    char buf[160];
    std::snprintf(buf, sizeof buf, "10^6 bytes, identical=%d, runtimes %.3f s / %.3f s",
                  a == b && a.size() == 1000000, e1, e2);
    const bool pass = rc1 == 0 && rc2 == 0 && a.size() == 1000000 && a == b &&
                      e1 < 1.0 && e2 < 1.0;
    return {pass, buf};
}

// 2. extract_bytes equals the low 48 bits for 10^5 random finite values.
Outcome criterion_extraction() {
    std::mt19937_64 rng(20260811);
    std::size_t checked = 0, mismatches = 0;
    while (checked < 100000) {
        const std::uint64_t word = rng();
        const double x = std::bit_cast<double>(word);
        if (!std::isfinite(x)) continue;
        const auto block = bytegen::extract_bytes(x);
        std::uint64_t rebuilt = 0;
        for (const auto byte : block) rebuilt = (rebuilt << 8) | byte;
        if (rebuilt != (word & 0x0000'FFFF'FFFF'FFFFULL)) ++mismatches;
        ++checked;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu values, %zu mismatches", checked, mismatches);
    return {mismatches == 0, buf};
}

// 3. analytic spot values at the stated tolerances.
Outcome criterion_spot_values() {
    const auto cot2 = maps::make_map(maps::MapId::cot2);
    const double d = maps::eval_derivative(cot2, std::numbers::pi / 4).value;
    const double r = maps::eval_raw(cot2, std::numbers::pi / 4).value;
    const std::string hex = bytegen::hex_mantissa(1.0 / 3.0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "deriv=%.17g raw=%.17g hex(1/3)=%s", d, r, hex.c_str());
    const bool pass = std::fabs(d - 4.0) < 1e-12 && std::fabs(r - 1.0) < 1e-12 &&
                      hex == "5555555555555";
    return {pass, buf};
}

// 4. streams from seeds 1.0000000 and 1.0000001 first differ at index <= 17.
Outcome criterion_sensitivity() {
    const double a = std::stod("1.0000000");
    const double b = std::stod("1.0000001");
    const auto idx = dyn::sensitivity_divergence(a, b - a, 10);
    char buf[96];
    if (!idx) return {false, "streams identical over 60 bytes"};
    std::snprintf(buf, sizeof buf, "first differing byte index %zu (expected near 2)", *idx);
    return {*idx <= 17, buf};
}

// 5. no repeat within 10^7 iterations from seed 1.0, in under 60 s.
Outcome criterion_no_short_cycles() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cycle = dyn::detect_cycle(maps::make_map(maps::MapId::cot2), 1.0, 10'000'000);
    const double elapsed = seconds_since(t0);
    char buf[96];
    std::snprintf(buf, sizeof buf, "found=%d truncated=%d elapsed %.2f s", cycle.found,
                  cycle.truncated, elapsed);
    return {!cycle.found && !cycle.truncated && elapsed < 60.0, buf};
}

// 6. non-expansive samples only at x > 0.68; every sample lands in
// (0.08, 0.32) with slope > 1 after one step.
Outcome criterion_chaos_zone() {
    const auto map = maps::make_map(maps::MapId::cot2);
    auto report = dyn::expansiveness_scan(map, 10000);

    bool zone_ok = true;
    for (const auto& p : report.profile) {
        if (p.non_expansive && p.x <= 0.68) zone_ok = false;
    }

    report = dyn::escape_check(std::move(report), 100);
    std::size_t one_step = 0, steep_landing = 0, in_window = 0;
    for (const auto& e : report.escape) {
        if (e.escaped && e.steps == 1) ++one_step;
        const auto d = maps::eval_normalized_derivative(map, e.landing);
        if (d.ok() && d.value > 1.0) ++steep_landing;
        if (e.landing > 0.08 && e.landing < 0.32) ++in_window;
    }
    const std::size_t total = report.escape.size();
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "zone>0.68=%d; of %zu samples: 1-step=%zu slope>1=%zu "
                  "landing in (0.08,0.32)=%zu",
                  zone_ok, total, one_step, steep_landing, in_window);
    const bool pass = zone_ok && total > 0 && one_step == total &&
                      steep_landing == total && in_window == total;
    return {pass, buf};
}

// 7. inv_sin_sq fixed point near 0.37 with no-escape samples around it.
Outcome criterion_counterexample() {
    const auto map = maps::make_map(maps::MapId::inv_sin_sq);
    const auto fp = dyn::find_fixed_point(map, 0.2, 1e-10, 10000, dyn::OrbitMode::normalized);

    auto report = dyn::expansiveness_scan(map, 10000);
    report = dyn::escape_check(std::move(report), 100);
    std::size_t stuck_near_fp = 0;
    for (const auto& e : report.escape) {
        if (!e.escaped && std::fabs(e.start - fp.value) <= 0.01) ++stuck_near_fp;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "converged=%d value=%.6f iterations=%zu no-escape within 0.01: %zu",
                  fp.converged, fp.value, fp.iterations, stuck_near_fp);
    const bool pass = fp.converged && std::fabs(fp.value - 0.37) <= 0.05 && stuck_near_fp > 0;
    return {pass, buf};
}

// 8. the 3-cycle of 1/(1-x) from 2.0.
Outcome criterion_three_cycle() {
    const auto cycle =
        dyn::detect_cycle(maps::make_map(maps::MapId::inv_one_minus_x), 2.0, 100);
    char buf[96];
    std::snprintf(buf, sizeof buf, "found=%d period=%zu start=%zu", cycle.found, cycle.period,
                  cycle.start_index);
    return {cycle.found && cycle.period == 3 && cycle.start_index == 0, buf};
}

// 9. 10^6 fractional iterates fill all 1000 bins, in under 10 s.
Outcome criterion_density() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto orbit = dyn::iterate_orbit(maps::make_map(maps::MapId::cot2), 1.0, 1'000'000,
                                          dyn::OrbitMode::fractional);
    const auto hist = dyn::density_histogram(orbit, 1000);
    const double elapsed = seconds_since(t0);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu empty of 1000 bins, %llu counted, %.2f s",
                  hist.empty_bins, static_cast<unsigned long long>(hist.total), elapsed);
    return {!orbit.truncated && hist.empty_bins == 0 && elapsed < 10.0, buf};
}

// 10. 100 substreams of 10^6 bits: >= 96 passes per test at alpha 0.01 and
// p-value uniformity >= 1e-4, in under 2 minutes.
Outcome criterion_battery() {
    const auto t0 = std::chrono::steady_clock::now();
    auto state = bytegen::seed_from_value(1.0);
    const auto stream = bytegen::fill(state, 12'500'000);
    const auto battery = stats::run_battery(stream, 0.01, 100);
    const double elapsed = seconds_since(t0);

    bool pass = true;
    std::string detail;
    for (const auto& agg : battery.aggregates) {
        const bool test_ok = agg.valid == 100 && agg.passed >= 96 &&
                             agg.uniformity_p.has_value() && *agg.uniformity_p >= 1e-4;
        if (!test_ok) pass = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s %zu/100 u=%.4f ", stats::to_string(agg.test).c_str(),
                      agg.passed, agg.uniformity_p.value_or(-1.0));
        detail += buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "(%.1f s)", elapsed);
    detail += buf;
    return {pass && elapsed < 120.0, detail};
}

// 11. 600 MB to a discard sink at >= 30 MB/s median over 3 repetitions.
Outcome criterion_throughput() {
    constexpr std::uint64_t kBytes = 600'000'000;
    std::vector<std::uint8_t> buffer((8u << 20) / 6 * 6);  // whole blocks per chunk
    std::vector<double> rates;
    std::uint64_t sink = 0;
    for (int rep = 0; rep < 3; ++rep) {
        auto state = bytegen::seed_from_value(1.0 + rep);
        const auto t0 = std::chrono::steady_clock::now();
        std::uint64_t left = kBytes;
        while (left > 0) {
            const auto chunk =
                static_cast<std::size_t>(std::min<std::uint64_t>(left, buffer.size()));
            bytegen::fill(state, std::span(buffer.data(), chunk));
            sink += buffer[0] + buffer[chunk - 1];
            left -= chunk;
        }
        rates.push_back(kBytes / seconds_since(t0) / 1e6);
    }
    std::sort(rates.begin(), rates.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "median %.1f MB/s (runs %.1f / %.1f / %.1f, sink %llu)",
                  rates[1], rates[0], rates[1], rates[2],
                  static_cast<unsigned long long>(sink & 1));
    return {rates[1] >= 30.0, buf};
}

// 12. negative controls: degenerate streams must fail monobit or serial2 at
// p < 1e-15; the counter-byte stream must pass byte_chi_square at p = 1 yet
// fail monobit.
Outcome criterion_negative_controls() {
    const std::size_t n = 125000;  // 10^6 bits
    const std::vector<std::uint8_t> zeros(n, 0x00);
    const std::vector<std::uint8_t> ones(n, 0xFF);
    const std::vector<std::uint8_t> alternating(n, 0xAA);

    const auto fails_hard = [](const std::vector<std::uint8_t>& bytes) {
        const stats::BitView bits(bytes);
        const double p_mono = stats::monobit(bits).p_value;
        const double p_serial = stats::serial2(bits).p_value;
        return std::min(p_mono, p_serial) < 1e-15;
    };
    const bool zeros_fail = fails_hard(zeros);
    const bool ones_fail = fails_hard(ones);
    const bool alt_fail = fails_hard(alternating);

    std::vector<std::uint8_t> counter(25600);
    for (std::size_t i = 0; i < counter.size(); ++i) {
        counter[i] = static_cast<std::uint8_t>(i & 0xFF);
    }
    const double p_chi = stats::byte_chi_square(counter).p_value;
    const double p_mono = stats::monobit(stats::BitView(counter)).p_value;
    const bool counter_ok = p_chi == 1.0 && p_mono < 0.01;

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "zeros=%d ones=%d alternating=%d; counter: byte_chi p=%.3g monobit p=%.3g",
                  zeros_fail, ones_fail, alt_fail, p_chi, p_mono);
    return {zeros_fail && ones_fail && alt_fail && counter_ok, buf};
}

Outcome run_criterion(int n) {
    switch (n) {
        case 1:  return criterion_determinism();
        case 2:  return criterion_extraction();
        case 3:  return criterion_spot_values();
        case 4:  return criterion_sensitivity();
        case 5:  return criterion_no_short_cycles();
        case 6:  return criterion_chaos_zone();
        case 7:  return criterion_counterexample();
        case 8:  return criterion_three_cycle();
        case 9:  return criterion_density();
        case 10: return criterion_battery();
        case 11: return criterion_throughput();
        case 12: return criterion_negative_controls();
        default: return {false, "unknown criterion"};
    }
}

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0) selected = std::atoi(argv[i + 1]);
        if (std::strcmp(argv[i], "--cli") == 0) g_cli = argv[i + 1];
    }

    int failures = 0;
    const int lo = selected == 0 ? 1 : selected;
    const int hi = selected == 0 ? 12 : selected;
    for (int n = lo; n <= hi; ++n) {
        const Outcome outcome = run_criterion(n);
        std::printf("criterion %2d: %s — %s\n", n, outcome.pass ? "PASS" : "FAIL",
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
