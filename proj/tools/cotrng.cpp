// Command-line front end: raw byte files for external test suites, orbit and
// expansiveness exports behind the analysis figures, the internal battery,
// and a throughput benchmark.
//
// Exit codes: 0 success / statistical pass, 1 statistical fail,
// 2 usage, data, or I/O error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cotrng/bytegen.hpp"
#include "cotrng/dynamics.hpp"
#include "cotrng/map_core.hpp"
#include "cotrng/report_io.hpp"
#include "cotrng/stats.hpp"

namespace {

using cotrng::bytegen::GeneratorState;

constexpr int kExitOk = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// --seed accepts "time", decimal, or hexadecimal float notation.
GeneratorState make_state(const std::string& seed_text) {
    if (seed_text == "time") return cotrng::bytegen::seed_from_time();
    std::size_t used = 0;
    const double v = std::stod(seed_text, &used);
    if (used != seed_text.size()) throw std::invalid_argument("bad seed: " + seed_text);
    return cotrng::bytegen::seed_from_value(v);
}

double parse_seed_value(const std::string& seed_text) {
    std::size_t used = 0;
    const double v = std::stod(seed_text, &used);
    if (used != seed_text.size()) throw std::invalid_argument("bad seed: " + seed_text);
    return v;
}

struct Sink {
    std::FILE* f = nullptr;
    bool owned = false;

    explicit Sink(const std::string& path) {
        if (path == "-") {
            f = stdout;
        } else {
            f = std::fopen(path.c_str(), "wb");
            owned = true;
        }
        if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    }
    ~Sink() {
        if (f && owned) std::fclose(f);
    }
    Sink(const Sink&) = delete;
    Sink& operator=(const Sink&) = delete;

    void write(const void* data, std::size_t n) {
        if (std::fwrite(data, 1, n, f) != n) throw std::runtime_error("write failed");
    }
    void write_text(const std::string& s) { write(s.data(), s.size()); }
    void flush() {
        if (std::fflush(f) != 0) throw std::runtime_error("flush failed");
    }
};

// Chunk sizes stay multiples of 6 so no block is split mid-stream and the
// file equals one contiguous fill() of the same length.
constexpr std::size_t kChunkBytes = (4u << 20) / 6 * 6;

int cmd_gen(const std::string& seed_text, std::uint64_t n_bytes, const std::string& out) {
    GeneratorState state = make_state(seed_text);
    const double seed = state.seed;

    Sink sink(out);
    std::vector<std::uint8_t> buffer(std::min<std::uint64_t>(n_bytes, kChunkBytes));
    const double t0 = now_seconds();
    std::uint64_t left = n_bytes;
    while (left > 0) {
        const std::size_t chunk = static_cast<std::size_t>(
            std::min<std::uint64_t>(left, buffer.size()));
        cotrng::bytegen::fill(state, std::span(buffer.data(), chunk));
        sink.write(buffer.data(), chunk);
        left -= chunk;
    }
    sink.flush();
    const double elapsed = now_seconds() - t0;
    std::fprintf(stderr, "gen: seed=%a bytes=%llu elapsed=%.3f s rate=%.1f MB/s\n", seed,
                 static_cast<unsigned long long>(n_bytes), elapsed,
                 elapsed > 0 ? n_bytes / elapsed / 1e6 : 0.0);
    return kExitOk;
}

int cmd_orbit(const cotrng::maps::PeriodicMap& map, const std::string& seed_text,
              std::uint64_t n, cotrng::dyn::OrbitMode mode, const std::string& format,
              const std::string& out) {
    double x0;
    if (seed_text == "time") {
        x0 = cotrng::bytegen::seed_from_time().seed;
    } else {
        x0 = parse_seed_value(seed_text);
    }

    const cotrng::dyn::Orbit orbit =
        cotrng::dyn::iterate_orbit(map, x0, static_cast<std::size_t>(n), mode);
    if (orbit.truncated && orbit.points.size() == 1) {
        throw std::runtime_error("seed is singular for this map");
    }

    Sink sink(out);
    if (format == "csv") {
        std::ostringstream os;
        cotrng::io::write_orbit_csv(os, orbit);
        sink.write_text(os.str());
    } else {
        sink.write_text(cotrng::io::orbit_json(orbit) + "\n");
    }
    sink.flush();
    std::fprintf(stderr, "orbit: map=%s seed=%a points=%zu truncated=%d\n",
                 cotrng::maps::to_string(map.id).c_str(), x0, orbit.points.size(),
                 orbit.truncated ? 1 : 0);
    return kExitOk;
}

int cmd_analyze(const cotrng::maps::PeriodicMap& map, std::uint64_t grid,
                std::uint64_t max_steps, const std::string& format, const std::string& out) {
    cotrng::dyn::ExpansivenessReport report =
        cotrng::dyn::expansiveness_scan(map, static_cast<std::size_t>(grid));
    report = cotrng::dyn::escape_check(std::move(report),
                                       static_cast<std::size_t>(max_steps));

    Sink sink(out);
    if (format == "csv") {
        std::ostringstream os;
        cotrng::io::write_scan_csv(os, report);
        sink.write_text(os.str());
    } else {
        sink.write_text(cotrng::io::scan_json(report) + "\n");
    }
    sink.flush();

    std::size_t no_escape = 0;
    for (const auto& e : report.escape) {
        if (!e.escaped) ++no_escape;
    }
    std::fprintf(stderr,
                 "analyze: map=%s grid=%llu intervals=%zu escapes=%zu no_escape=%zu\n",
                 cotrng::maps::to_string(map.id).c_str(),
                 static_cast<unsigned long long>(grid),
                 report.non_expansive_intervals.size(), report.escape.size(), no_escape);
    return kExitOk;
}

int cmd_test(const std::string& in_path, std::uint64_t gen_bits,
             const std::string& seed_text, double alpha, std::uint64_t substreams,
             std::uint64_t block_len, const std::string& out) {
    std::vector<std::uint8_t> bytes;
    if (!in_path.empty()) {
        std::ifstream in(in_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + in_path);
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else if (gen_bits > 0) {
        GeneratorState state = make_state(seed_text);
        bytes = cotrng::bytegen::fill(state, static_cast<std::size_t>((gen_bits + 7) / 8));
    } else {
        throw std::invalid_argument("test needs --in or --gen-bits");
    }

    const cotrng::stats::BatteryReport battery = cotrng::stats::run_battery(
        bytes, alpha, static_cast<std::size_t>(substreams),
        static_cast<std::size_t>(block_len));

    Sink sink(out);
    sink.write_text(cotrng::io::battery_json(battery) + "\n");
    sink.flush();
    std::fputs(cotrng::io::battery_table(battery).c_str(), stderr);

    bool any_insufficient = false;
    bool all_in_band = true;
    const double lower = cotrng::stats::pass_proportion_lower_bound(alpha, battery.substreams);
    for (const auto& agg : battery.aggregates) {
        if (agg.valid < battery.substreams) any_insufficient = true;
        if (agg.valid == 0 ||
            static_cast<double>(agg.passed) / static_cast<double>(agg.valid) < lower) {
            all_in_band = false;
        }
    }
    if (any_insufficient) {
        std::fprintf(stderr,
                     "test: insufficient data for at least one test "
                     "(stream too short for its minimum length)\n");
        return kExitUsage;
    }
    std::fprintf(stderr, "test: alpha=%g substreams=%zu band_lower=%.4f %s\n", alpha,
                 battery.substreams, lower, all_in_band ? "PASS" : "FAIL");
    return all_in_band ? kExitOk : kExitStatFail;
}

int cmd_bench(std::uint64_t n_bytes, std::uint64_t reps) {
    std::vector<std::uint8_t> buffer(std::min<std::uint64_t>(n_bytes, 2 * kChunkBytes));
    std::vector<double> rates;
    std::uint64_t sink_sum = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        GeneratorState state = cotrng::bytegen::seed_from_value(1.0 + static_cast<double>(r));
        const double t0 = now_seconds();
        std::uint64_t left = n_bytes;
        while (left > 0) {
            const std::size_t chunk = static_cast<std::size_t>(
                std::min<std::uint64_t>(left, buffer.size()));
            cotrng::bytegen::fill(state, std::span(buffer.data(), chunk));
            sink_sum += buffer[0] + buffer[chunk - 1];
            left -= chunk;
        }
        const double elapsed = now_seconds() - t0;
        rates.push_back(n_bytes / elapsed / 1e6);
    }
    std::vector<double> sorted = rates;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];

    std::ostringstream os;
    os << "{\n  \"bytes\": " << n_bytes << ",\n  \"reps\": " << reps
       << ",\n  \"rates_mb_per_s\": [";
    for (std::size_t i = 0; i < rates.size(); ++i) {
        os << (i ? ", " : "") << cotrng::io::format_double(rates[i]);
    }
    os << "],\n  \"median_mb_per_s\": " << cotrng::io::format_double(median) << "\n}\n";
    std::fputs(os.str().c_str(), stdout);
    std::fprintf(stderr, "bench: bytes=%llu reps=%llu median=%.1f MB/s (sink %llu)\n",
                 static_cast<unsigned long long>(n_bytes),
                 static_cast<unsigned long long>(reps), median,
                 static_cast<unsigned long long>(sink_sum & 0xFF));
    return kExitOk;
}

cotrng::maps::PeriodicMap map_from_flags(const std::string& map_name,
                                         std::optional<double> slope) {
    const auto id = cotrng::maps::parse_map_id(map_name);
    if (!id) throw std::invalid_argument("unknown map: " + map_name);
    return cotrng::maps::make_map(*id, slope);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cot^2 chaotic random byte generator and dynamics toolkit"};
    app.require_subcommand(1);

    std::string seed = "time";
    std::string map_name = "cot2";
    std::string out = "-";
    std::string format;
    std::string mode_name = "fractional";
    std::string in_path;
    std::optional<double> slope;
    std::uint64_t n = 0, grid = 10000, max_steps = 100, gen_bits = 0, reps = 3;
    std::uint64_t substreams = 10, block_len = cotrng::stats::kDefaultBlockLen;
    double alpha = cotrng::stats::kDefaultAlpha;

    auto* gen = app.add_subcommand("gen", "write raw random bytes to a file");
    gen->add_option("--seed", seed, "seed: decimal, hexfloat, or \"time\"");
    gen->add_option("--n", n, "number of bytes")->required();
    gen->add_option("--out", out, "output path, - for stdout")->required();
    gen->add_option("--format", format, "output format (raw only)")
        ->check(CLI::IsMember({"raw"}));

    auto* orbit = app.add_subcommand("orbit", "export a forward orbit");
    orbit->add_option("--map", map_name, "map id");
    orbit->add_option("--slope", slope, "sawtooth slope m");
    orbit->add_option("--seed", seed, "seed: decimal, hexfloat, or \"time\"");
    orbit->add_option("--n", n, "orbit length")->required();
    orbit->add_option("--mode", mode_name, "raw|normalized|fractional")
        ->check(CLI::IsMember({"raw", "normalized", "fractional"}));
    orbit->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    orbit->add_option("--out", out, "output path, - for stdout");

    auto* analyze = app.add_subcommand("analyze", "expansiveness scan and escape check");
    analyze->add_option("--map", map_name, "map id");
    analyze->add_option("--slope", slope, "sawtooth slope m");
    analyze->add_option("--grid", grid, "grid size (>= 100)");
    analyze->add_option("--max-steps", max_steps, "escape iteration budget");
    analyze->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    analyze->add_option("--out", out, "output path, - for stdout");

    auto* test = app.add_subcommand("test", "run the statistical battery");
    test->add_option("--in", in_path, "input byte file");
    test->add_option("--gen-bits", gen_bits, "generate this many bits instead of reading");
    test->add_option("--seed", seed, "seed for --gen-bits");
    test->add_option("--alpha", alpha, "significance level");
    test->add_option("--substreams", substreams, "number of disjoint substreams");
    test->add_option("--blocklen", block_len, "block length M for block frequency");
    test->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
    test->add_option("--out", out, "report path, - for stdout");

    auto* bench = app.add_subcommand("bench", "throughput benchmark (discard sink)");
    bench->add_option("--n", n, "bytes per repetition (>= 1e6)");
    bench->add_option("--reps", reps, "repetitions (median reported)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            if (n < 1) throw std::invalid_argument("gen needs --n >= 1");
            return cmd_gen(seed, n, out);
        }
        if (orbit->parsed()) {
            const auto map = map_from_flags(map_name, slope);
            cotrng::dyn::OrbitMode mode = cotrng::dyn::OrbitMode::fractional;
            if (mode_name == "raw") mode = cotrng::dyn::OrbitMode::raw;
            if (mode_name == "normalized") mode = cotrng::dyn::OrbitMode::normalized;
            return cmd_orbit(map, seed, n, mode, format.empty() ? "csv" : format, out);
        }
        if (analyze->parsed()) {
            const auto map = map_from_flags(map_name, slope);
            return cmd_analyze(map, grid, max_steps, format.empty() ? "csv" : format, out);
        }
        if (test->parsed()) {
            return cmd_test(in_path, gen_bits, seed, alpha, substreams, block_len, out);
        }
        if (bench->parsed()) {
            if (n < 1'000'000) throw std::invalid_argument("bench needs --n >= 1e6");
            if (reps < 1) throw std::invalid_argument("bench needs --reps >= 1");
            return cmd_bench(n, reps);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
