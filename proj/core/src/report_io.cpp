#include "shortsum/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "shortsum/error.hpp"

namespace shortsum {

namespace {

using ojson = nlohmann::ordered_json;

void emit(std::ostream& out, const ojson& v, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  switch (v.type()) {
    case ojson::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << ojson(it.key()).dump() << ": ";
        emit(out, it.value(), depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case ojson::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        emit(out, v[i], depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case ojson::value_t::number_float: {
      const double d = v.get<double>();
      out << (std::isfinite(d) ? format_real(d) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

std::string emit(const ojson& v) {
  std::ostringstream out;
  emit(out, v, 0);
  out << "\n";
  return out.str();
}

ojson restriction_to_json(const Restriction& r) {
  ojson intervals = ojson::array();
  for (const auto& iv : r.system.intervals()) {
    intervals.push_back({{"log_lo", iv.log_lo},
                         {"log_hi", iv.log_hi},
                         {"int_lo", iv.int_lo},
                         {"int_hi", iv.int_hi}});
  }
  return {{"eta", r.system.eta()},
          {"explicit", r.system.is_explicit()},
          {"intervals", intervals},
          {"J", r.J}};
}

Restriction restriction_from_json(const ojson& j) {
  std::vector<LogInterval> intervals;
  for (const auto& iv : j.at("intervals")) {
    intervals.push_back({iv.at("log_lo").get<double>(), iv.at("log_hi").get<double>(),
                         iv.at("int_lo").get<std::uint64_t>(),
                         iv.at("int_hi").get<std::uint64_t>()});
  }
  return {IntervalSystem::restore(j.at("eta").get<double>(), std::move(intervals),
                                  j.at("explicit").get<bool>()),
          j.at("J").get<unsigned>()};
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_scan_csv(std::ostream& out, const ScanReport& report) {
  out << "x,short_avg,long_avg,diff\n";
  for (const auto& r : report.records) {
    out << r.x << ',' << format_real(r.short_avg) << ',' << format_real(r.long_avg) << ','
        << format_real(r.diff) << '\n';
  }
}

void write_correlation_csv(std::ostream& out, std::uint64_t h, std::uint64_t X, double value) {
  out << "h,X,value\n" << h << ',' << X << ',' << format_real(value) << '\n';
}

void write_sign_csv(std::ostream& out, std::uint64_t X, const SignChanges& s) {
  const double density = static_cast<double>(s.count) / static_cast<double>(X);
  out << "X,count,nonzero,density\n"
      << X << ',' << s.count << ',' << s.nonzero << ',' << format_real(density) << '\n';
}

void write_smooth_csv(std::ostream& out, const SmoothScan& scan) {
  out << "x,count,expected\n";
  for (const auto& r : scan.records) {
    out << r.x << ',' << r.count << ',' << format_real(r.expected) << '\n';
  }
}

std::string scan_report_to_json(const ScanReport& report) {
  const ScanParams& p = report.params;
  ojson params = {{"function", p.function}, {"X", p.X},           {"h", p.h},
                  {"delta", p.delta},       {"samples", p.samples}, {"seed", p.seed}};
  params["restriction"] = p.restriction ? restriction_to_json(*p.restriction) : ojson(nullptr);

  ojson records = ojson::array();
  for (const auto& r : report.records) {
    records.push_back(
        {{"x", r.x}, {"short_avg", r.short_avg}, {"long_avg", r.long_avg}, {"diff", r.diff}});
  }
  ojson user = ojson::object();
  for (const auto& [t, c] : report.exceptional_counts_user) user[format_real(t)] = c;

  ojson j;
  j["params"] = params;
  j["records"] = records;
  j["long_avg"] = report.long_avg;
  j["paper_threshold"] = report.paper_threshold;
  j["exceptional_count"] = report.exceptional_count;
  j["vacuous_at_desk_scale"] = report.vacuous_at_desk_scale;
  j["exceptional_counts_user"] = user;
  j["paper_exceptional_bound"] = report.paper_exceptional_bound;
  j["bound_constant"] = report.bound_constant;
  j["mean_square"] = report.mean_square;
  return emit(j);
}

ScanReport scan_report_from_json(std::string_view text) {
  try {
    const ojson j = ojson::parse(text);
    ScanReport r;
    const ojson& p = j.at("params");
    r.params.function = p.at("function").get<std::string>();
    r.params.X = p.at("X").get<std::uint64_t>();
    r.params.h = p.at("h").get<std::uint64_t>();
    r.params.delta = p.at("delta").get<double>();
    r.params.samples = p.at("samples").get<std::uint64_t>();
    r.params.seed = p.at("seed").get<std::uint64_t>();
    if (!p.at("restriction").is_null()) r.params.restriction = restriction_from_json(p["restriction"]);
    for (const auto& rec : j.at("records")) {
      r.records.push_back({rec.at("x").get<std::uint64_t>(), rec.at("short_avg").get<double>(),
                           rec.at("long_avg").get<double>(), rec.at("diff").get<double>()});
    }
    r.long_avg = j.at("long_avg").get<double>();
    r.paper_threshold = j.at("paper_threshold").get<double>();
    r.exceptional_count = j.at("exceptional_count").get<std::uint64_t>();
    r.vacuous_at_desk_scale = j.at("vacuous_at_desk_scale").get<bool>();
    for (const auto& [key, value] : j.at("exceptional_counts_user").items()) {
      r.exceptional_counts_user[std::stod(key)] = value.get<std::uint64_t>();
    }
    r.paper_exceptional_bound = j.at("paper_exceptional_bound").get<double>();
    r.bound_constant = j.at("bound_constant").get<double>();
    r.mean_square = j.at("mean_square").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scan report JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("scan report JSON: ") + e.what());
  }
}

std::string canonical_json(std::string_view text) {
  try {
    return emit(ojson::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("JSON: ") + e.what());
  }
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 48.0;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_open(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
    << " font-size=\"14\">" << escape_xml(title) << "</text>\n"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
    << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
    << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  return s.str();
}

std::string axis_labels(double x_lo, double x_hi, double y_lo, double y_hi) {
  std::ostringstream s;
  char buf[64];
  auto label = [&](double x, double y, const char* anchor, double v) {
    std::snprintf(buf, sizeof buf, "%.4g", v);
    s << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << buf << "</text>\n";
  };
  label(kMargin, kHeight - kMargin + 14, "middle", x_lo);
  label(kWidth - kMargin, kHeight - kMargin + 14, "middle", x_hi);
  label(kMargin - 4, kHeight - kMargin, "end", y_lo);
  label(kMargin - 4, kMargin + 4, "end", y_hi);
  return s.str();
}

}  // namespace

std::string svg_histogram(std::span<const double> values, unsigned bins, const std::string& title) {
  if (bins == 0) throw UsageError("svg_histogram: bins must be >= 1");
  double lo = 0.0, hi = 1.0;
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx > *mn ? *mx : *mn + 1.0;
  }
  std::vector<std::uint64_t> counts(bins, 0);
  for (const double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
    counts[std::min<std::size_t>(b, bins - 1)]++;
  }
  const std::uint64_t peak = std::max<std::uint64_t>(1, *std::max_element(counts.begin(), counts.end()));
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  std::ostringstream s;
  s << svg_open(title);
  for (unsigned b = 0; b < bins; ++b) {
    const double bh = plot_h * static_cast<double>(counts[b]) / static_cast<double>(peak);
    s << "<rect x=\"" << kMargin + plot_w * b / bins << "\" y=\"" << kHeight - kMargin - bh
      << "\" width=\"" << plot_w / bins << "\" height=\"" << bh
      << "\" fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  s << axis_labels(lo, hi, 0.0, static_cast<double>(peak)) << "</svg>\n";
  return s.str();
}

std::string svg_curve(std::span<const std::pair<double, double>> points, const std::string& title) {
  std::ostringstream s;
  s << svg_open(title);
  if (!points.empty()) {
    double x_lo = points.front().first, x_hi = x_lo, y_lo = points.front().second, y_hi = y_lo;
    for (const auto& [x, y] : points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin;
    s << "<polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"1.5\" points=\"";
    char buf[64];
    for (const auto& [x, y] : points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", kMargin + plot_w * (x - x_lo) / (x_hi - x_lo),
                    kHeight - kMargin - plot_h * (y - y_lo) / (y_hi - y_lo));
      s << buf;
    }
    s << "\"/>\n" << axis_labels(x_lo, x_hi, y_lo, y_hi);
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace shortsum
