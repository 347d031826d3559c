#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "shortsum/analytic.hpp"
#include "shortsum/dickman.hpp"
#include "shortsum/error.hpp"
#include "shortsum/mfunc.hpp"
#include "shortsum/report_io.hpp"
#include "shortsum/s_system.hpp"
#include "shortsum/scanners.hpp"
#include "shortsum/sieve.hpp"

namespace shortsum::cli {

namespace {

using json = nlohmann::ordered_json;

// Raw flag text before conversion; numbers accept "1000000" or "1e6".
struct RawFlags {
  std::string f, X, h, delta, psi, u, eps, samples, seed, threads, format, out, svg, table;
  std::string system, eta, thresholds, start, len, T0, t, C;
};

std::uint64_t to_count(const std::string& text, const char* flag) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec == std::errc() && ptr == end) return v;
  double d = 0.0;
  auto [p2, e2] = std::from_chars(text.data(), end, d);
  if (e2 == std::errc() && p2 == end && d >= 0.0 && d < 0x1p64 && d == std::floor(d)) {
    return static_cast<std::uint64_t>(d);
  }
  throw UsageError(std::string("--") + flag + ": expected a non-negative integer, got '" + text +
                   "'");
}

double to_real(const std::string& text, const char* flag) {
  double d = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, d);
  if (ec != std::errc() || ptr != end || !std::isfinite(d)) {
    throw UsageError(std::string("--") + flag + ": expected a real number, got '" + text + "'");
  }
  return d;
}

void require(bool ok, const char* flag, const std::string& what) {
  if (!ok) throw UsageError(std::string("--") + flag + ": " + what);
}

void require_given(const std::string& text, const char* flag) {
  require(!text.empty(), flag, "required by this command");
}

RunConfig convert(Command command, const RawFlags& r) {
  RunConfig c;
  c.command = command;
  if (!r.f.empty()) c.function = r.f;
  MultiplicativeFunction::parse(c.function);  // validates the grammar early

  if (!r.X.empty()) c.X = to_count(r.X, "X");
  if (!r.h.empty()) c.h = to_count(r.h, "h");
  if (!r.delta.empty()) c.delta = to_real(r.delta, "delta");
  if (!r.psi.empty()) {
    c.psi = to_count(r.psi, "psi");
    c.has_psi = true;
  }
  if (!r.u.empty()) {
    c.u = to_real(r.u, "u");
    c.has_u = true;
  }
  if (!r.eps.empty()) {
    c.eps = to_real(r.eps, "eps");
    c.has_eps = true;
  }
  if (!r.samples.empty()) c.samples = to_count(r.samples, "samples");
  if (!r.seed.empty()) c.seed = to_count(r.seed, "seed");
  if (!r.threads.empty()) {
    const auto th = to_count(r.threads, "threads");
    require(th <= 1024, "threads", "must be <= 1024");
    c.threads = static_cast<unsigned>(th);
  }
  if (!r.format.empty()) {
    require(r.format == "csv" || r.format == "json", "format", "must be csv or json");
    c.format = r.format == "csv" ? Format::kCsv : Format::kJson;
  }
  c.out_path = r.out;
  c.svg_path = r.svg;
  c.table_path = r.table;
  c.system = r.system;
  if (!r.eta.empty()) c.eta = to_real(r.eta, "eta");
  if (!r.thresholds.empty()) {
    std::stringstream ss(r.thresholds);
    std::string item;
    while (std::getline(ss, item, ',')) c.thresholds.push_back(to_real(item, "thresholds"));
  }
  if (!r.start.empty()) c.start = to_count(r.start, "start");
  if (!r.len.empty()) c.len = to_count(r.len, "len");
  if (!r.T0.empty()) c.T0 = to_real(r.T0, "T0");
  if (!r.t.empty()) c.t = to_real(r.t, "t");
  if (!r.C.empty()) {
    c.C = to_real(r.C, "C");
    c.has_C = true;
  }
  if (!c.system.empty()) IntervalSystem::parse(c.system, c.eta);

  switch (command) {
    case Command::kSieve:
      require(c.start >= 1, "start", "must be >= 1");
      require(c.len >= 1 && c.len <= (std::uint64_t{1} << 24), "len", "must lie in [1, 2^24]");
      break;
    case Command::kScanShort:
      require_given(r.X, "X");
      require_given(r.h, "h");
      require(c.h >= 2, "h", "must be >= 2");
      require(c.h <= c.X, "h", "must not exceed --X");
      require(c.delta > 0.0, "delta", "must be > 0");
      require(c.samples >= 1, "samples", "must be >= 1");
      break;
    case Command::kScanBilinear:
      require_given(r.X, "x");
      require_given(r.h, "h");
      require(c.h >= 10, "h", "must be >= 10");
      require(c.h <= c.X, "h", "must not exceed --x");
      require(c.X <= 1'000'000'000'000ULL, "x", "must be <= 10^12");
      break;
    case Command::kChowla:
      require_given(r.X, "X");
      require_given(r.h, "h");
      require(c.h >= 1, "h", "must be >= 1");
      require(c.X >= c.h, "X", "must be >= --h");
      break;
    case Command::kSigns:
      require_given(r.X, "X");
      require(c.X >= 2, "X", "must be >= 2");
      if (c.has_psi) {
        require(c.psi >= 2, "psi", "must be >= 2");
        require(c.samples >= 1, "samples", "must be >= 1");
      }
      break;
    case Command::kSmooth:
      require_given(r.X, "X");
      require(c.has_u != c.has_eps, "u", "give exactly one of --u or --eps");
      if (c.has_u) {
        require(c.u >= 1.0 && c.u <= kDickmanDefaultUMax, "u", "must lie in [1, 20]");
        require_given(r.psi, "psi");
        require(c.psi >= 10, "psi", "must be >= 10");
        require(c.samples >= 1, "samples", "must be >= 1");
      } else {
        require(c.eps > 0.0 && c.eps <= 1.0, "eps", "must lie in (0, 1]");
        require(1.0 / c.eps <= kDickmanDefaultUMax, "eps", "1/eps must be <= 20");
        require(c.X >= 2, "X", "must be >= 2");
      }
      break;
    case Command::kDickman:
      require(c.has_u || !c.table_path.empty() || !c.svg_path.empty(), "u",
              "give --u, --table or --svg");
      if (c.has_u) require(c.u >= 0.0 && c.u <= kDickmanDefaultUMax, "u", "must lie in [0, 20]");
      break;
    case Command::kHalasz:
      require_given(r.X, "x");
      require(c.X >= 16, "x", "must be >= 16");
      require(c.X <= (std::uint64_t{1} << 31), "x", "must be <= 2^31");
      require(c.T0 >= 1.0, "T0", "must be >= 1");
      break;
    case Command::kSSystem:
      require(!c.system.empty(), "system", "required by this command");
      break;
  }
  return c;
}

void write_text(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw UsageError("--out: cannot open '" + c.out_path + "'");
  file << text;
}

void write_file(const std::string& path, const char* flag, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError(std::string("--") + flag + ": cannot open '" + path + "'");
  file << text;
}

std::string render(const json& j) { return canonical_json(j.dump()); }

// JSON numbers must stay finite; the infinite marker travels as a string.
json real_or_marker(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

std::optional<Restriction> restriction_for(const RunConfig& c, std::uint64_t X) {
  if (c.system.empty()) return std::nullopt;
  IntervalSystem sys = IntervalSystem::parse(c.system, c.eta);
  const unsigned J = bind_to_X(sys, X);
  return Restriction{std::move(sys), J};
}

std::string sieve_output(const RunConfig& c) {
  const FactorTable table = sieve_factorize(Window{c.start, c.len});
  if (c.format == Format::kJson) {
    json rows = json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      json factors = json::array();
      for (const PrimePower pp : table[i]) factors.push_back({pp.prime, pp.exponent});
      rows.push_back({{"n", c.start + i}, {"factors", factors}});
    }
    return render({{"start", c.start}, {"len", c.len}, {"table", rows}});
  }
  std::ostringstream s;
  s << "n,factorization\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    s << c.start + i << ',';
    bool first = true;
    for (const PrimePower pp : table[i]) {
      if (!first) s << '*';
      first = false;
      s << pp.prime;
      if (pp.exponent > 1) s << '^' << pp.exponent;
    }
    if (first) s << '1';
    s << '\n';
  }
  return s.str();
}

std::string scan_short_output(const RunConfig& c, const ExecPolicy& policy) {
  const auto f = MultiplicativeFunction::parse(c.function);
  const ScanReport report = scan_short(f, c.X, c.h, c.delta, c.samples, c.seed,
                                       restriction_for(c, c.X), c.thresholds, policy);
  if (!c.svg_path.empty()) {
    std::vector<double> diffs;
    for (const auto& r : report.records) diffs.push_back(r.diff);
    write_file(c.svg_path, "svg", svg_histogram(diffs, 40, "|short - long| for " + c.function));
  }
  if (c.format == Format::kJson) return scan_report_to_json(report);
  std::ostringstream s;
  write_scan_csv(s, report);
  return s.str();
}

std::string bilinear_output(const RunConfig& c, const ExecPolicy& policy) {
  const auto f = MultiplicativeFunction::parse(c.function);
  const BilinearResult r = scan_bilinear(f, c.X, c.h, restriction_for(c, c.X), policy);
  if (c.format == Format::kJson) {
    return render({{"function", c.function}, {"x", c.X}, {"h", c.h}, {"lhs", r.lhs},
                   {"rhs", r.rhs}, {"diff", r.diff}, {"pair_sum", r.pair_sum},
                   {"linear_sum", r.linear_sum}});
  }
  std::ostringstream s;
  s << "x,h,lhs,rhs,diff\n"
    << c.X << ',' << c.h << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ','
    << format_real(r.diff) << '\n';
  return s.str();
}

std::string chowla_output(const RunConfig& c, const ExecPolicy& policy) {
  const auto f = MultiplicativeFunction::parse(c.function);
  const CorrelationStats st = correlation_stats(f, c.h, c.X, policy);
  if (c.format == Format::kJson) {
    return render({{"function", c.function}, {"h", c.h}, {"X", c.X}, {"value", st.value},
                   {"sum", st.sum}, {"positive", st.positive}, {"negative", st.negative},
                   {"zero", st.zero}, {"delta_measured", 1.0 - std::abs(st.value)}});
  }
  std::ostringstream s;
  write_correlation_csv(s, c.h, c.X, st.value);
  return s.str();
}

std::string signs_output(const RunConfig& c, const ExecPolicy& policy) {
  const auto f = MultiplicativeFunction::parse(c.function);
  const SignChanges sc = sign_changes(f, c.X, policy);
  if (c.format == Format::kJson) {
    json j = {{"function", c.function},
              {"X", c.X},
              {"count", sc.count},
              {"nonzero", sc.nonzero},
              {"density", static_cast<double>(sc.count) / static_cast<double>(c.X)}};
    if (f.kind() == FunctionKind::kNegPrimes && !f.negative_primes().empty()) {
      j["lucht_tuttas_density"] = lucht_tuttas_density(f.negative_primes());
    }
    if (c.has_psi) {
      j["psi"] = c.psi;
      j["samples"] = c.samples;
      j["seed"] = c.seed;
      j["interval_fraction"] = sign_change_in_intervals(f, c.X, c.psi, c.samples, c.seed, policy);
    }
    if (c.has_C && f.completely_multiplicative()) {
      j["C"] = c.C;
      j["sqrt_interval_sign_change"] = sqrt_interval_sign_change(f, c.X, c.C);
    }
    return render(j);
  }
  std::ostringstream s;
  write_sign_csv(s, c.X, sc);
  return s.str();
}

std::string smooth_output(const RunConfig& c, const ExecPolicy& policy) {
  const DickmanTable table;
  if (c.has_u) {
    const SmoothScan scan = smooth_in_intervals(c.u, c.X, c.psi, c.samples, c.seed, table, policy);
    if (c.format == Format::kJson) {
      json records = json::array();
      for (const auto& r : scan.records) {
        records.push_back({{"x", r.x}, {"count", r.count}, {"expected", r.expected}});
      }
      return render({{"u", c.u}, {"X", c.X}, {"psi", c.psi}, {"samples", c.samples},
                     {"seed", c.seed}, {"records", records}, {"mean", scan.mean},
                     {"ratio", scan.ratio}});
    }
    std::ostringstream s;
    write_smooth_csv(s, scan);
    return s.str();
  }
  const SqrtIntervalSmooth r = smooth_in_sqrt_interval(c.eps, c.X, table, kSqrtIntervalMaxWindow,
                                                       policy);
  if (c.format == Format::kJson) {
    return render({{"eps", c.eps}, {"X", c.X}, {"C", real_or_marker(r.C)}, {"y", r.y},
                   {"first", r.first}, {"last", r.last}, {"partial", r.partial},
                   {"count", r.count}, {"threshold", r.threshold}});
  }
  std::ostringstream s;
  s << "x,count,expected\n" << r.first << ',' << r.count << ',' << format_real(r.threshold) << '\n';
  return s.str();
}

std::string dickman_output(const RunConfig& c) {
  const DickmanTable table;
  if (!c.table_path.empty()) {
    std::ostringstream s;
    s << "u,rho\n";
    const auto values = table.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      s << format_real(static_cast<double>(i) * table.step()) << ',' << format_real(values[i])
        << '\n';
    }
    write_file(c.table_path, "table", s.str());
  }
  if (!c.svg_path.empty()) {
    std::vector<std::pair<double, double>> points;
    const auto values = table.values();
    const std::size_t stride = 16;
    for (std::size_t i = 0; i < values.size(); i += stride) {
      points.emplace_back(static_cast<double>(i) * table.step(), values[i]);
    }
    write_file(c.svg_path, "svg", svg_curve(points, "Dickman rho(u)"));
  }
  if (!c.has_u) return {};
  const double value = table.rho(c.u);
  if (c.format == Format::kJson) {
    return render({{"u", c.u}, {"rho", value}, {"clamped", table.clamped()}});
  }
  return "u,rho\n" + format_real(c.u) + ',' + format_real(value) + '\n';
}

std::string halasz_output(const RunConfig& c) {
  const auto f = MultiplicativeFunction::parse(c.function);
  const HalaszShape shape = halasz_bound_shape(f, c.X, c.T0, c.t);
  // At sigma = 1 the normalization x^{1 - sigma} is 1.
  const double measured = std::abs(dyadic_sum(f, c.X, 1.0, c.t, ExecPolicy{c.threads}));
  const double ratio = measured / shape.value;
  if (c.format == Format::kJson) {
    return render({{"function", c.function}, {"x", c.X}, {"T0", c.T0}, {"t", c.t},
                   {"measured", measured}, {"shape_bound", shape.value}, {"ratio", ratio},
                   {"M", shape.minimum.M}, {"argmin", shape.minimum.argmin}});
  }
  std::ostringstream s;
  s << "t,measured,shape_bound,ratio\n"
    << format_real(c.t) << ',' << format_real(measured) << ',' << format_real(shape.value) << ','
    << format_real(ratio) << '\n';
  return s.str();
}

std::string s_system_output(const RunConfig& c) {
  const IntervalSystem sys = IntervalSystem::parse(c.system, c.eta);
  const auto violations = validate(sys);
  std::optional<unsigned> J;
  if (c.X >= 16) J = bind_to_X(sys, c.X);
  if (c.format == Format::kJson) {
    json list = json::array();
    for (const auto& v : violations) {
      list.push_back({{"j", v.j}, {"condition", v.condition}, {"lhs", real_or_marker(v.lhs)},
                      {"rhs", real_or_marker(v.rhs)}});
    }
    json j = {{"system", sys.to_string()}, {"eta", sys.eta()}, {"valid", violations.empty()},
              {"violations", list}};
    if (J) {
      j["X"] = c.X;
      j["J"] = *J;
    }
    return render(j);
  }
  std::ostringstream s;
  s << "j,condition,lhs,rhs\n";
  for (const auto& v : violations) {
    s << v.j << ',' << v.condition << ',' << format_real(v.lhs) << ',' << format_real(v.rhs)
      << '\n';
  }
  return s.str();
}

void add_common(CLI::App& app, RawFlags& r) {
  app.add_option("--f", r.f,
                 "multiplicative function: one | moebius | liouville | abs_moebius | smooth:<y> | "
                 "negp:<p1,p2,...> (default liouville)");
  app.add_option("--X,--x", r.X,
                 "scale: scan-short needs h <= X; scan-bilinear x in [h, 10^12]; chowla X >= h; "
                 "signs X >= 2; halasz x in [16, 2^31]; s-system binds J for X >= 16");
  app.add_option("--h", r.h,
                 "interval length: scan-short 2 <= h <= X; scan-bilinear 10 <= h <= x; "
                 "chowla shift h >= 1");
  app.add_option("--delta", r.delta, "scan-short tolerance, > 0 (default 0.1)");
  app.add_option("--psi", r.psi, "interval length: smooth psi >= 10; signs psi >= 2");
  app.add_option("--u", r.u, "smooth: 1 <= u <= 20; dickman: 0 <= u <= 20");
  app.add_option("--eps", r.eps, "smooth sqrt-interval mode: 0 < eps <= 1, 1/eps <= 20");
  app.add_option("--samples", r.samples, "sampled windows, >= 1 (default 100)");
  app.add_option("--seed", r.seed, "SplitMix64 seed, any u64 (default 0)");
  app.add_option("--threads", r.threads, "worker threads, 0 = all cores (default 0)");
  app.add_option("--format", r.format, "csv | json (default csv)");
  app.add_option("--out", r.out, "output file (default stdout)");
  app.add_option("--svg", r.svg, "scan-short diff histogram or dickman rho curve, SVG path");
  app.add_option("--table", r.table, "dickman: dump the rho grid as CSV u,rho to this path");
  app.add_option("--system", r.system,
                 "interval system: auto:eta,logP1,logQ1,count | explicit:P1-Q1[,P2-Q2...]");
  app.add_option("--eta", r.eta, "eta for explicit systems, 0 < eta < 1/6 (default 0.1)");
  app.add_option("--thresholds", r.thresholds, "scan-short extra thresholds, comma separated");
  app.add_option("--start", r.start, "sieve: first integer, >= 1 (default 2)");
  app.add_option("--len", r.len, "sieve: window length in [1, 2^24] (default 10)");
  app.add_option("--T0", r.T0, "halasz: search half-width, >= 1 (default 10)");
  app.add_option("--t", r.t, "halasz: centre of the search, any real (default 0)");
  app.add_option("--C", r.C, "signs: also test [X, X + C sqrt(X)] for a sign change, C > 0");
}

struct Parser {
  CLI::App app{"Short-interval averages of multiplicative functions", "shortsum"};
  RawFlags raw;
  std::vector<std::pair<CLI::App*, Command>> commands;

  Parser() {
    app.set_config("--config", "", "flat 'key = value' file; command-line flags win");
    app.set_help_flag("--help", "print this help (every flag with its precondition)");
    app.require_subcommand(1);
    add_common(app, raw);
    const std::pair<const char*, Command> names[] = {
        {"sieve", Command::kSieve},         {"scan-short", Command::kScanShort},
        {"scan-bilinear", Command::kScanBilinear}, {"chowla", Command::kChowla},
        {"signs", Command::kSigns},         {"smooth", Command::kSmooth},
        {"dickman", Command::kDickman},     {"halasz", Command::kHalasz},
        {"s-system", Command::kSSystem},
    };
    const char* help[] = {
        "factor the window [start, start + len)",
        "short vs long averages over sampled windows",
        "bilinear pair sum against the squared long average",
        "correlation (1/X) sum_{n <= X} f(n) f(n + h)",
        "sign changes of f up to X",
        "smooth numbers in short intervals",
        "Dickman rho",
        "minimal pretentious distance and the Halasz bound shape",
        "validate an interval system",
    };
    for (std::size_t i = 0; i < std::size(names); ++i) {
      CLI::App* sub = app.add_subcommand(names[i].first, help[i]);
      sub->fallthrough();
      commands.emplace_back(sub, names[i].second);
    }
  }
};

}  // namespace

RunConfig parse(const std::vector<std::string>& args) {
  Parser p;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  p.app.parse(reversed);
  for (const auto& [sub, command] : p.commands) {
    if (sub->parsed()) return convert(command, p.raw);
  }
  throw UsageError("no subcommand given");
}

void run(const RunConfig& config, std::ostream& out) {
  const ExecPolicy policy{config.threads};
  std::string text;
  switch (config.command) {
    case Command::kSieve: text = sieve_output(config); break;
    case Command::kScanShort: text = scan_short_output(config, policy); break;
    case Command::kScanBilinear: text = bilinear_output(config, policy); break;
    case Command::kChowla: text = chowla_output(config, policy); break;
    case Command::kSigns: text = signs_output(config, policy); break;
    case Command::kSmooth: text = smooth_output(config, policy); break;
    case Command::kDickman: text = dickman_output(config); break;
    case Command::kHalasz: text = halasz_output(config); break;
    case Command::kSSystem: text = s_system_output(config); break;
  }
  if (!text.empty()) write_text(config, out, text);
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse(args);
  } catch (const CLI::CallForHelp&) {
    Parser p;
    out << p.app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    Parser p;
    out << p.app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  try {
    run(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace shortsum::cli
