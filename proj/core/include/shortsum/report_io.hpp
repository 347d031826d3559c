#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "shortsum/scanners.hpp"

namespace shortsum {

// Every real number leaves the library with 17 significant digits ("%.17g"),
// which round-trips IEEE doubles exactly.
std::string format_real(double v);

// CSV schemas:
//   scan_short   x,short_avg,long_avg,diff
//   correlation  h,X,value
//   sign         X,count,nonzero,density
//   smooth       x,count,expected
void write_scan_csv(std::ostream& out, const ScanReport& report);
void write_correlation_csv(std::ostream& out, std::uint64_t h, std::uint64_t X, double value);
void write_sign_csv(std::ostream& out, std::uint64_t X, const SignChanges& s);
void write_smooth_csv(std::ostream& out, const SmoothScan& scan);

// JSON mirror of ScanReport. scan_report_from_json(scan_report_to_json(r)) == r.
// Malformed input throws FormatError.
std::string scan_report_to_json(const ScanReport& report);
ScanReport scan_report_from_json(std::string_view text);

// Re-emits arbitrary JSON text with two-space indentation and every
// floating-point number at 17 significant digits. Non-finite values, which
// JSON cannot carry, become null.
std::string canonical_json(std::string_view text);

// Minimal standalone SVG plots.
std::string svg_histogram(std::span<const double> values, unsigned bins, const std::string& title);
std::string svg_curve(std::span<const std::pair<double, double>> points, const std::string& title);

}  // namespace shortsum
