#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shortsum/dickman.hpp"
#include "shortsum/mfunc.hpp"
#include "shortsum/parallel.hpp"
#include "shortsum/s_system.hpp"

namespace shortsum {

// Intervals [x, x + h] are closed (h + 1 integers) while averages divide by h,
// so even f = 1 shows an O(1/h) discrepancy.

struct DiscrepancyRecord {
  std::uint64_t x = 0;
  double short_avg = 0.0;
  double long_avg = 0.0;
  double diff = 0.0;  // |short_avg - long_avg|

  friend bool operator==(const DiscrepancyRecord&, const DiscrepancyRecord&) = default;
};

struct ScanParams {
  std::string function;
  std::uint64_t X = 0;
  std::uint64_t h = 0;
  double delta = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<Restriction> restriction;

  friend bool operator==(const ScanParams&, const ScanParams&) = default;
};

struct ScanReport {
  ScanParams params;
  std::vector<DiscrepancyRecord> records;
  double long_avg = 0.0;
  // delta + 20000 loglog h / log h; counts use the strict diff > threshold.
  double paper_threshold = 0.0;
  std::uint64_t exceptional_count = 0;
  // True when the threshold exceeds the largest diff any f in [-1, 1] can
  // produce, so the count is zero for every input.
  bool vacuous_at_desk_scale = false;
  std::map<double, std::uint64_t> exceptional_counts_user;
  // X ((log h)^{1/3} / (delta^2 h^{delta/25}) + 1 / (delta^2 (log X)^{1/50}))
  // times the unknown constant, reported with that constant set to 1.
  double paper_exceptional_bound = 0.0;
  double bound_constant = 1.0;
  // Monte-Carlo mean of diff^2 over the sampled x.
  double mean_square = 0.0;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

double paper_threshold(double delta, std::uint64_t h);
double paper_exceptional_bound(std::uint64_t X, std::uint64_t h, double delta);

// Samples x uniformly from [X, 2X - h] with SplitMix64(seed) and compares
// (1/h) sum_{x <= n <= x + h} f(n) to the long average. With a restriction
// both sums run over n in the S-set. Requires 2 <= h <= X, samples >= 1,
// 0 < delta; throws UsageError otherwise.
ScanReport scan_short(const MultiplicativeFunction& f, std::uint64_t X, std::uint64_t h,
                      double delta, std::uint64_t samples, std::uint64_t seed,
                      const std::optional<Restriction>& restrict = std::nullopt,
                      const std::vector<double>& user_thresholds = {},
                      const ExecPolicy& policy = {});

struct BilinearResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
  // Unnormalized integer-exact pieces, for brute-force comparison.
  double pair_sum = 0.0;
  double linear_sum = 0.0;
};

// lhs = (1 / (h sqrt(x) log 2)) sum f(n1) f(n2) over
//   sqrt(x) <= n1 <= 2 sqrt(x),  x <= n1 n2 <= x + h sqrt(x),
// rhs = ((1 / sqrt(x)) sum_{sqrt(x) <= n <= 2 sqrt(x)} f(n))^2.
// All bounds are resolved exactly in integers. Requires 10 <= h <= x <= 10^12.
BilinearResult scan_bilinear(const MultiplicativeFunction& f, std::uint64_t x, std::uint64_t h,
                             const std::optional<Restriction>& restrict = std::nullopt,
                             const ExecPolicy& policy = {});

struct CorrelationStats {
  double sum = 0.0;  // sum_{n <= X} f(n) f(n + h)
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t zero = 0;
  double value = 0.0;  // sum / X
};

// Requires h >= 1 and X >= h.
CorrelationStats correlation_stats(const MultiplicativeFunction& f, std::uint64_t h,
                                   std::uint64_t X, const ExecPolicy& policy = {});
double correlation(const MultiplicativeFunction& f, std::uint64_t h, std::uint64_t X,
                   const ExecPolicy& policy = {});

// |f(n)| below this counts as a zero value and is skipped.
inline constexpr double kZeroTolerance = 1e-12;

struct SignChanges {
  std::uint64_t count = 0;
  std::uint64_t nonzero = 0;
};

// Adjacent opposite-sign pairs in the zero-skipped sequence f(1), ..., f(X).
SignChanges sign_changes(const MultiplicativeFunction& f, std::uint64_t X,
                         const ExecPolicy& policy = {});

// 1/2 - 1/2 prod_p (1 - 4/(p + 1)); entries must be prime.
double lucht_tuttas_density(const std::vector<std::uint64_t>& neg_primes);

// Fraction of sampled x in [X, 2X] whose interval [x, x + psi] contains a
// sign change. Requires psi >= 2, samples >= 1.
double sign_change_in_intervals(const MultiplicativeFunction& f, std::uint64_t X,
                                std::uint64_t psi, std::uint64_t samples, std::uint64_t seed,
                                const ExecPolicy& policy = {});

// Whether [x, x + floor(C sqrt(x))] contains a sign change. f must be
// completely multiplicative (UsageError otherwise); C > 0.
bool sqrt_interval_sign_change(const MultiplicativeFunction& f, std::uint64_t x, double C);

struct SmoothRecord {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  double expected = 0.0;  // rho(u) psi
};

struct SmoothScan {
  double u = 0.0;
  std::uint64_t psi = 0;
  std::vector<SmoothRecord> records;
  double mean = 0.0;
  double ratio = 0.0;  // mean / (rho(u) psi)
};

// Counts floor(x^{1/u})-smooth integers in [x, x + psi] for x sampled from
// [X, 2X]. Smoothness is literal: a prime in (x, x + psi] is not x-smooth,
// so u = 1 counts psi + 1 minus such primes. Requires u >= 1, psi >= 10.
SmoothScan smooth_in_intervals(double u, std::uint64_t X, std::uint64_t psi,
                               std::uint64_t samples, std::uint64_t seed,
                               const DickmanTable& table, const ExecPolicy& policy = {});

inline constexpr std::uint64_t kSqrtIntervalMaxWindow = 1'000'000'000;

struct SqrtIntervalSmooth {
  double C = 0.0;
  std::uint64_t y = 0;
  std::uint64_t first = 0;
  std::uint64_t last = 0;  // inclusive end actually scanned
  bool partial = false;    // window truncated to max_window integers
  std::uint64_t count = 0;
  double threshold = 0.0;  // sqrt(X) (log X)^{-4}
};

// X^eps-smooth integers in [X, X + floor(C(eps) sqrt(X))], C(eps) from the
// Dickman table. Windows longer than max_window are truncated and flagged.
SqrtIntervalSmooth smooth_in_sqrt_interval(double eps, std::uint64_t X, const DickmanTable& table,
                                           std::uint64_t max_window = kSqrtIntervalMaxWindow,
                                           const ExecPolicy& policy = {});

struct MediumVsLong {
  std::uint64_t y = 0;
  double max_diff = 0.0;
  double mean_diff = 0.0;
};

// (1/y) sum_{x <= n <= x + y} f(n) against the long average, y =
// ceil(X / (log X)^{1/5}), x sampled from [X, 2X]. Requires X >= 10^4.
MediumVsLong medium_vs_long(const MultiplicativeFunction& f, std::uint64_t X,
                            std::uint64_t samples, std::uint64_t seed,
                            const ExecPolicy& policy = {});

}  // namespace shortsum
