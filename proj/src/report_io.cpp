#include "cotrng/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cotrng::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* mode_name(dyn::OrbitMode mode) {
    switch (mode) {
        case dyn::OrbitMode::raw:        return "raw";
        case dyn::OrbitMode::normalized: return "normalized";
        case dyn::OrbitMode::fractional: return "fractional";
    }
    return "unknown";
}

json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

} // namespace

void write_orbit_csv(std::ostream& os, const dyn::Orbit& orbit) {
    os << "index,x\n";
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        os << i << ',' << format_double(orbit.points[i]) << '\n';
    }
}

std::string orbit_json(const dyn::Orbit& orbit) {
    json doc;
    doc["map"] = maps::to_string(orbit.map_id);
    doc["mode"] = mode_name(orbit.mode);
    doc["truncated"] = orbit.truncated;
    doc["points"] = orbit.points;
    return doc.dump(2);
}

void write_scan_csv(std::ostream& os, const dyn::ExpansivenessReport& report) {
    os << "x,abs_derivative,non_expansive,escape_steps,landing,escaped\n";
    std::size_t esc = 0;
    for (const dyn::GridPoint& p : report.profile) {
        os << format_double(p.x) << ',' << format_double(p.abs_derivative) << ','
           << (p.non_expansive ? 1 : 0) << ',';
        if (p.non_expansive && esc < report.escape.size()) {
            const dyn::EscapeSample& e = report.escape[esc++];
            os << e.steps << ',' << format_double(e.landing) << ',' << (e.escaped ? 1 : 0);
        } else {
            os << ",,";
        }
        os << '\n';
    }
}

std::string scan_json(const dyn::ExpansivenessReport& report) {
    json doc;
    doc["map"] = maps::to_string(report.map.id);
    if (report.map.slope) doc["slope"] = *report.map.slope;
    doc["period"] = report.map.period;
    doc["grid_size"] = report.grid_size;
    doc["skipped_points"] = report.skipped_points;
    doc["expansive_points"] = report.expansive_points;
    doc["min_slope"] = report.expansive_points > 0 ? number_or_null(report.min_slope)
                                                   : json(nullptr);
    json intervals = json::array();
    for (const auto& [lo, hi] : report.non_expansive_intervals) {
        intervals.push_back({lo, hi});
    }
    doc["non_expansive_intervals"] = std::move(intervals);
    json escape = json::array();
    for (const dyn::EscapeSample& e : report.escape) {
        escape.push_back({{"start", e.start},
                          {"steps", e.steps},
                          {"landing", e.landing},
                          {"escaped", e.escaped}});
    }
    doc["escape"] = std::move(escape);
    doc["escape_max_steps"] = report.escape_max_steps;
    return doc.dump(2);
}

std::string battery_json(const stats::BatteryReport& battery) {
    json doc;
    doc["stream_length_bits"] = battery.stream_length_bits;
    doc["alpha"] = battery.alpha;
    doc["substreams"] = battery.substreams;
    doc["block_len"] = battery.block_len;

    json reports = json::array();
    for (const stats::TestReport& r : battery.reports) {
        json params = json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        reports.push_back({{"substream", r.substream},
                           {"test", stats::to_string(r.test)},
                           {"params", std::move(params)},
                           {"statistic", r.statistic},
                           {"p_value", r.p_value},
                           {"pass", r.pass},
                           {"sufficient_data", r.sufficient_data}});
    }
    doc["reports"] = std::move(reports);

    json aggregates = json::array();
    for (const stats::TestAggregate& a : battery.aggregates) {
        json entry = {{"test", stats::to_string(a.test)},
                      {"valid", a.valid},
                      {"passed", a.passed}};
        entry["proportion"] =
            a.valid > 0 ? json(static_cast<double>(a.passed) / static_cast<double>(a.valid))
                        : json(nullptr);
        entry["uniformity_p"] = a.uniformity_p ? json(*a.uniformity_p) : json(nullptr);
        aggregates.push_back(std::move(entry));
    }
    doc["aggregates"] = std::move(aggregates);
    return doc.dump(2);
}

std::string battery_table(const stats::BatteryReport& battery) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-18s %10s %10s %14s %10s\n", "Test Name", "Passed",
                  "Valid", "Uniformity p", "Result");
    os << line;
    os << std::string(66, '-') << '\n';
    for (const stats::TestAggregate& a : battery.aggregates) {
        const double lower =
            stats::pass_proportion_lower_bound(battery.alpha, battery.substreams);
        const bool ok =
            a.valid > 0 &&
            static_cast<double>(a.passed) / static_cast<double>(a.valid) >= lower;
        char unif[24];
        if (a.uniformity_p) {
            std::snprintf(unif, sizeof unif, "%.6f", *a.uniformity_p);
        } else {
            std::snprintf(unif, sizeof unif, "-");
        }
        std::snprintf(line, sizeof line, "%-18s %10zu %10zu %14s %10s\n",
                      stats::to_string(a.test).c_str(), a.passed, a.valid, unif,
                      a.valid == 0 ? "NO DATA" : (ok ? "PASSED" : "FAILED"));
        os << line;
    }
    return os.str();
}

} // namespace cotrng::io
