#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace shortsum::cli {

enum class Command {
  kSieve,
  kScanShort,
  kScanBilinear,
  kChowla,
  kSigns,
  kSmooth,
  kDickman,
  kHalasz,
  kSSystem,
};

enum class Format { kCsv, kJson };

// Fully validated invocation. Numeric fields that a command does not use keep
// their defaults.
struct RunConfig {
  Command command = Command::kSieve;
  std::string function = "liouville";
  std::uint64_t X = 0;
  std::uint64_t h = 0;
  double delta = 0.1;
  std::uint64_t psi = 0;
  double u = 0.0;
  double eps = 0.0;
  std::uint64_t samples = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  Format format = Format::kCsv;
  std::string out_path;
  std::string svg_path;
  std::string table_path;
  std::string system;
  double eta = 0.1;
  std::vector<double> thresholds;
  std::uint64_t start = 2;
  std::uint64_t len = 10;
  double T0 = 10.0;
  double t = 0.0;
  double C = 5.0;
  bool has_u = false;
  bool has_eps = false;
  bool has_psi = false;
  bool has_C = false;
};

// Throws UsageError (or CLI11 help/parse exceptions) on bad input.
RunConfig parse(const std::vector<std::string>& args);

// Executes a validated config, writing the report to out (or config.out_path).
void run(const RunConfig& config, std::ostream& out);

// Whole program: parse, run, map failures to exit codes
//   0 ok, 1 usage error (message on err), 2 computation error (JSON on err).
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shortsum::cli
