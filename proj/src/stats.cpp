#include "cotrng/stats.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace cotrng::stats {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

TestReport insufficient(TestName name, double alpha) {
    TestReport r;
    r.test = name;
    r.params["alpha"] = alpha;
    r.sufficient_data = false;
    return r;
}

} // namespace

double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(a, x);
}

BitView::BitView(std::span<const std::uint8_t> bytes, std::size_t n_bits)
    : bytes_(bytes), data_(bytes.data()), n_bits_(n_bits) {
    require(n_bits <= bytes.size() * 8, "bit count exceeds the buffer");
}

std::uint64_t BitView::count_ones() const {
    std::uint64_t ones = 0;
    const std::size_t full = n_bits_ / 8;
    for (std::size_t i = 0; i < full; ++i) ones += std::popcount(data_[i]);
    for (std::size_t i = full * 8; i < n_bits_; ++i) ones += bit(i);
    return ones;
}

std::uint64_t BitView::count_transitions(bool circular) const {
    if (n_bits_ < 2) return 0;
    std::uint64_t t = 0;
    const std::size_t full = n_bits_ / 8;
    for (std::size_t i = 0; i < full; ++i) {
        const std::uint8_t b = data_[i];
        // intra-byte pairs (b7,b6)..(b1,b0) in stream order
        t += std::popcount(static_cast<std::uint8_t>((b ^ (b << 1)) & 0xFE));
    }
    for (std::size_t i = 1; i < full; ++i) {
        t += (data_[i - 1] & 1) != (data_[i] >> 7);  // byte boundary
    }
    // tail bits and the boundary into them
    for (std::size_t i = full * 8; i < n_bits_; ++i) {
        if (i > 0) t += bit(i - 1) != bit(i);
    }
    if (circular) t += bit(n_bits_ - 1) != bit(0);
    return t;
}

std::string to_string(TestName name) {
    switch (name) {
        case TestName::monobit:         return "monobit";
        case TestName::block_frequency: return "block_frequency";
        case TestName::runs:            return "runs";
        case TestName::serial2:         return "serial2";
        case TestName::byte_chi_square: return "byte_chi_square";
    }
    return "unknown";
}

TestReport monobit(const BitView& bits, double alpha, bool enforce_min_length) {
    if (enforce_min_length && bits.size() < 100) {
        throw std::invalid_argument("monobit needs at least 100 bits");
    }
    require(bits.size() > 0, "monobit needs a non-empty stream");
    const auto n = static_cast<double>(bits.size());
    const double s_n = 2.0 * static_cast<double>(bits.count_ones()) - n;
    const double s_obs = std::fabs(s_n) / std::sqrt(n);

    TestReport r;
    r.test = TestName::monobit;
    r.params["n"] = n;
    r.params["alpha"] = alpha;
    r.statistic = s_obs;
    r.p_value = std::erfc(s_obs / std::sqrt(2.0));
    r.pass = r.p_value >= alpha;
    return r;
}

TestReport block_frequency(const BitView& bits, std::size_t block_len, double alpha,
                           bool enforce_min_length) {
    require(block_len >= 1, "block length must be positive");
    if (enforce_min_length && (block_len < 20 || bits.size() < 100 * block_len)) {
        throw std::invalid_argument("block_frequency needs M >= 20 and n >= 100*M");
    }
    const std::size_t blocks = bits.size() / block_len;
    require(blocks >= 1, "block_frequency needs at least one full block");

    double chi_sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::uint64_t ones = 0;
        for (std::size_t i = 0; i < block_len; ++i) ones += bits.bit(b * block_len + i);
        const double pi = static_cast<double>(ones) / static_cast<double>(block_len);
        chi_sq += (pi - 0.5) * (pi - 0.5);
    }
    chi_sq *= 4.0 * static_cast<double>(block_len);

    TestReport r;
    r.test = TestName::block_frequency;
    r.params["n"] = static_cast<double>(bits.size());
    r.params["M"] = static_cast<double>(block_len);
    r.params["blocks"] = static_cast<double>(blocks);
    r.params["alpha"] = alpha;
    r.statistic = chi_sq;
    r.p_value = gamma_q(static_cast<double>(blocks) / 2.0, chi_sq / 2.0);
    r.pass = r.p_value >= alpha;
    return r;
}

TestReport runs(const BitView& bits, double alpha, bool enforce_min_length) {
    if (enforce_min_length && bits.size() < 100) {
        throw std::invalid_argument("runs needs at least 100 bits");
    }
    require(bits.size() >= 2, "runs needs at least 2 bits");
    const auto n = static_cast<double>(bits.size());
    const double pi = static_cast<double>(bits.count_ones()) / n;

    TestReport r;
    r.test = TestName::runs;
    r.params["n"] = n;
    r.params["pi"] = pi;
    r.params["alpha"] = alpha;

    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
        // frequency precondition failed; p = 0 by convention
        r.statistic = 0.0;
        r.p_value = 0.0;
        r.pass = false;
        return r;
    }
    const double v_obs = static_cast<double>(bits.count_transitions(false)) + 1.0;
    const double expected = 2.0 * n * pi * (1.0 - pi);
    const double denom = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    r.statistic = v_obs;
    r.p_value = std::erfc(std::fabs(v_obs - expected) / denom);
    r.pass = r.p_value >= alpha;
    return r;
}

TestReport serial2(const BitView& bits, double alpha, bool enforce_min_length) {
    if (enforce_min_length && bits.size() < 100) {
        throw std::invalid_argument("serial2 needs at least 100 bits");
    }
    require(bits.size() >= 2, "serial2 needs at least 2 bits");
    const auto n = static_cast<double>(bits.size());
    const double ones = static_cast<double>(bits.count_ones());
    const double zeros = n - ones;

    // Overlapping 2-bit pattern counts via the circular transition count: in
    // a circular stream c01 = c10 = T/2, c11 = ones - T/2, c00 = zeros - T/2.
    const double t = static_cast<double>(bits.count_transitions(true));
    const double c01 = t / 2.0, c10 = t / 2.0;
    const double c11 = ones - t / 2.0, c00 = zeros - t / 2.0;

    const double psi2 = (4.0 / n) * (c00 * c00 + c01 * c01 + c10 * c10 + c11 * c11) - n;
    const double psi1 = (2.0 / n) * (ones * ones + zeros * zeros) - n;
    const double del = psi2 - psi1;

    TestReport r;
    r.test = TestName::serial2;
    r.params["n"] = n;
    r.params["m"] = 2.0;
    r.params["alpha"] = alpha;
    r.statistic = del;
    r.p_value = gamma_q(1.0, del / 2.0);
    r.pass = r.p_value >= alpha;
    return r;
}

TestReport byte_chi_square(std::span<const std::uint8_t> bytes, double alpha,
                           bool enforce_min_length) {
    if (enforce_min_length && bytes.size() < 25600) {
        throw std::invalid_argument("byte_chi_square needs at least 25600 bytes");
    }
    require(!bytes.empty(), "byte_chi_square needs a non-empty stream");

    std::uint64_t counts[256] = {};
    for (const std::uint8_t b : bytes) ++counts[b];
    const double expected = static_cast<double>(bytes.size()) / 256.0;
    double chi_sq = 0.0;
    for (const std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi_sq += d * d / expected;
    }

    TestReport r;
    r.test = TestName::byte_chi_square;
    r.params["bytes"] = static_cast<double>(bytes.size());
    r.params["alpha"] = alpha;
    r.statistic = chi_sq;
    r.p_value = gamma_q(255.0 / 2.0, chi_sq / 2.0);
    r.pass = r.p_value >= alpha;
    return r;
}

double pass_proportion_lower_bound(double alpha, std::size_t substreams) {
    const double n = static_cast<double>(substreams);
    return (1.0 - alpha) - 3.0 * std::sqrt(alpha * (1.0 - alpha) / n);
}

namespace {

std::optional<double> uniformity_p(const std::vector<double>& p_values) {
    if (p_values.size() < 10) return std::nullopt;
    std::size_t bins[10] = {};
    for (const double p : p_values) {
        auto idx = static_cast<std::size_t>(p * 10.0);
        if (idx > 9) idx = 9;  // p = 1.0 falls in the top bin
        ++bins[idx];
    }
    const double expected = static_cast<double>(p_values.size()) / 10.0;
    double chi_sq = 0.0;
    for (const std::size_t c : bins) {
        const double d = static_cast<double>(c) - expected;
        chi_sq += d * d / expected;
    }
    return gamma_q(4.5, chi_sq / 2.0);
}

} // namespace

BatteryReport run_battery(std::span<const std::uint8_t> bytes, double alpha,
                          std::size_t substreams, std::size_t block_len) {
    require(substreams >= 1, "need at least one substream");
    require(alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");

    BatteryReport battery;
    battery.alpha = alpha;
    battery.substreams = substreams;
    battery.block_len = block_len;

    const std::size_t sub_len = bytes.size() / substreams;
    battery.stream_length_bits = static_cast<std::uint64_t>(sub_len) * substreams * 8;

    constexpr TestName kOrder[] = {TestName::monobit, TestName::block_frequency,
                                   TestName::runs, TestName::serial2,
                                   TestName::byte_chi_square};

    for (std::size_t s = 0; s < substreams; ++s) {
        const std::span<const std::uint8_t> sub = bytes.subspan(s * sub_len, sub_len);
        const BitView bits(sub);
        for (const TestName name : kOrder) {
            TestReport r;
            try {
                switch (name) {
                    case TestName::monobit:         r = monobit(bits, alpha); break;
                    case TestName::block_frequency: r = block_frequency(bits, block_len, alpha); break;
                    case TestName::runs:            r = runs(bits, alpha); break;
                    case TestName::serial2:         r = serial2(bits, alpha); break;
                    case TestName::byte_chi_square: r = byte_chi_square(sub, alpha); break;
                }
            } catch (const std::invalid_argument&) {
                r = insufficient(name, alpha);
            }
            r.substream = s;
            battery.reports.push_back(std::move(r));
        }
    }

    for (const TestName name : kOrder) {
        TestAggregate agg;
        agg.test = name;
        std::vector<double> ps;
        for (const TestReport& r : battery.reports) {
            if (r.test != name || !r.sufficient_data) continue;
            ++agg.valid;
            if (r.pass) ++agg.passed;
            ps.push_back(r.p_value);
        }
        if (substreams >= 10) agg.uniformity_p = uniformity_p(ps);
        battery.aggregates.push_back(std::move(agg));
    }
    return battery;
}

} // namespace cotrng::stats
