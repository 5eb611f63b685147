#pragma once

#include <iosfwd>
#include <string>

#include "cotrng/dynamics.hpp"
#include "cotrng/stats.hpp"

// CSV and JSON renderings of the analysis reports. CSV is line-oriented with
// a header row; doubles print with 17 significant digits so values round-trip
// exactly.

namespace cotrng::io {

// "index,x" rows, seed included as row 0.
void write_orbit_csv(std::ostream& os, const dyn::Orbit& orbit);
std::string orbit_json(const dyn::Orbit& orbit);

// One row per retained grid point; escape columns are empty for expansive
// points: "x,abs_derivative,non_expansive,escape_steps,landing,escaped".
void write_scan_csv(std::ostream& os, const dyn::ExpansivenessReport& report);
// Summary document: intervals, min slope, escape list, counts.
std::string scan_json(const dyn::ExpansivenessReport& report);

std::string battery_json(const stats::BatteryReport& battery);
// Aligned plain-text table of per-test results, one line per test.
std::string battery_table(const stats::BatteryReport& battery);

std::string format_double(double v);  // shortest exact round-trip form

} // namespace cotrng::io
