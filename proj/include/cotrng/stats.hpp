#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Internal statistical battery: five tests over bit/byte streams producing
// p-values, plus an aggregation layer over disjoint substreams. The formulas
// are the standard frequency/runs/serial family; bits are read MSB-first
// within each byte.

namespace cotrng::stats {

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr std::size_t kDefaultBlockLen = 128;

// Bit access over a byte buffer; the bit count may end mid-byte.
class BitView {
public:
    BitView(std::span<const std::uint8_t> bytes, std::size_t n_bits);
    explicit BitView(std::span<const std::uint8_t> bytes)
        : BitView(bytes, bytes.size() * 8) {}

    std::size_t size() const { return n_bits_; }
    int bit(std::size_t i) const {
        return (data_[i >> 3] >> (7 - (i & 7))) & 1;
    }
    std::span<const std::uint8_t> bytes() const { return bytes_; }

    // Number of one bits.
    std::uint64_t count_ones() const;
    // Number of adjacent unequal pairs; circular additionally compares the
    // last bit with the first.
    std::uint64_t count_transitions(bool circular) const;

private:
    std::span<const std::uint8_t> bytes_;
    const std::uint8_t* data_ = nullptr;
    std::size_t n_bits_ = 0;
};

enum class TestName { monobit, block_frequency, runs, serial2, byte_chi_square };

std::string to_string(TestName name);

struct TestReport {
    TestName test = TestName::monobit;
    std::map<std::string, double> params;
    double statistic = 0.0;
    double p_value = 0.0;
    bool pass = false;
    bool sufficient_data = true;
    std::size_t substream = 0;
};

// Frequency test: S_n = #ones - #zeros, p = erfc(|S_n|/sqrt(2n)).
// Needs n >= 100 unless the gate is relaxed.
TestReport monobit(const BitView& bits, double alpha = kDefaultAlpha,
                   bool enforce_min_length = true);

// Chi-square over per-block one-proportions; N = floor(n/M) blocks, leftover
// bits discarded. Needs n >= 100*M and M >= 20 unless relaxed.
TestReport block_frequency(const BitView& bits, std::size_t block_len = kDefaultBlockLen,
                           double alpha = kDefaultAlpha, bool enforce_min_length = true);

// Total runs against the expectation under the observed proportion. When the
// frequency gate |pi - 1/2| >= 2/sqrt(n) trips, p = 0 by convention.
TestReport runs(const BitView& bits, double alpha = kDefaultAlpha,
                bool enforce_min_length = true);

// First serial p-value for overlapping 2-bit patterns; the stream is treated
// as circular, which makes the null distribution exact.
TestReport serial2(const BitView& bits, double alpha = kDefaultAlpha,
                   bool enforce_min_length = true);

// Pearson chi-square of byte values against uniform, 255 degrees of freedom.
// Needs at least 25600 bytes (100 per cell) unless relaxed.
TestReport byte_chi_square(std::span<const std::uint8_t> bytes, double alpha = kDefaultAlpha,
                           bool enforce_min_length = true);

struct TestAggregate {
    TestName test = TestName::monobit;
    std::size_t valid = 0;   // substreams with sufficient data
    std::size_t passed = 0;  // of the valid ones
    // Chi-square uniformity of the valid p-values over 10 bins; present only
    // when at least 10 substreams were tested.
    std::optional<double> uniformity_p;
};

struct BatteryReport {
    std::uint64_t stream_length_bits = 0;
    double alpha = kDefaultAlpha;
    std::size_t substreams = 0;
    std::size_t block_len = kDefaultBlockLen;
    std::vector<TestReport> reports;     // ordered by substream, then test
    std::vector<TestAggregate> aggregates;
};

// Splits the input into `substreams` equal disjoint substreams (leftover
// bytes discarded) and runs all five tests on each. Tests that lack data are
// reported with sufficient_data=false rather than aborting the battery.
BatteryReport run_battery(std::span<const std::uint8_t> bytes, double alpha = kDefaultAlpha,
                          std::size_t substreams = 1,
                          std::size_t block_len = kDefaultBlockLen);

// Lower edge of the NIST proportion band: (1-alpha) - 3*sqrt(alpha(1-alpha)/n).
double pass_proportion_lower_bound(double alpha, std::size_t substreams);

// Regularized upper incomplete gamma Q(a, x); the p-value backbone for the
// chi-square family of tests.
double gamma_q(double a, double x);

} // namespace cotrng::stats
