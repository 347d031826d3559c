#include "shortsum/scanners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shortsum/error.hpp"
#include "shortsum/rng.hpp"
#include "shortsum/sieve.hpp"

namespace shortsum {

namespace {

int sign_of(double v) {
  if (std::abs(v) < kZeroTolerance) return 0;
  return v > 0.0 ? 1 : -1;
}

std::vector<std::uint64_t> draw(std::uint64_t lo, std::uint64_t hi, std::uint64_t samples,
                                std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::uint64_t> xs(samples);
  for (auto& x : xs) x = rng.uniform(lo, hi);
  return xs;
}

bool window_has_sign_change(const MultiplicativeFunction& f, std::uint64_t first,
                            std::uint64_t last) {
  const FactorTable table = sieve_factorize(Window::closed(first, last));
  int prev = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const int s = sign_of(f(table[i]));
    if (s == 0) continue;
    if (prev != 0 && s != prev) return true;
    prev = s;
  }
  return false;
}

// floor(x^{1/u}), corrected against rounding in pow.
std::uint64_t integer_root(std::uint64_t x, double u) {
  const long double inv = 1.0L / static_cast<long double>(u);
  auto y = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(x), inv)));
  while (std::pow(static_cast<long double>(y + 1), static_cast<long double>(u)) <=
         static_cast<long double>(x)) {
    ++y;
  }
  while (y > 1 && std::pow(static_cast<long double>(y), static_cast<long double>(u)) >
                      static_cast<long double>(x)) {
    --y;
  }
  return y;
}

std::uint64_t count_smooth(std::uint64_t first, std::uint64_t last, std::uint64_t y,
                           const ExecPolicy& policy) {
  std::vector<std::uint64_t> partial(segment_count(first, last), 0);
  for_each_segment(first, last, policy, [&](std::size_t s, const FactorTable& table) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i].largest_prime() <= y) ++c;
    }
    partial[s] = c;
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

}  // namespace

double paper_threshold(double delta, std::uint64_t h) {
  const double log_h = std::log(static_cast<double>(h));
  return delta + 20000.0 * std::log(log_h) / log_h;
}

double paper_exceptional_bound(std::uint64_t X, std::uint64_t h, double delta) {
  const double log_h = std::log(static_cast<double>(h));
  const double log_X = std::log(static_cast<double>(X));
  const double d2 = delta * delta;
  return static_cast<double>(X) *
         (std::cbrt(log_h) / (d2 * std::pow(static_cast<double>(h), delta / 25.0)) +
          1.0 / (d2 * std::pow(log_X, 1.0 / 50.0)));
}

ScanReport scan_short(const MultiplicativeFunction& f, std::uint64_t X, std::uint64_t h,
                      double delta, std::uint64_t samples, std::uint64_t seed,
                      const std::optional<Restriction>& restrict,
                      const std::vector<double>& user_thresholds, const ExecPolicy& policy) {
  if (h < 2) throw UsageError("scan_short: h must be >= 2");
  if (h > X) throw UsageError("scan_short: h must not exceed X");
  if (samples == 0) throw UsageError("scan_short: samples must be >= 1");
  if (!(delta > 0.0)) throw UsageError("scan_short: delta must be > 0");
  if (X > kWindowCapacity / 2) throw CapacityError("scan_short: 2X exceeds 2^62");

  ScanReport report;
  report.params = {f.to_string(), X, h, delta, samples, seed, restrict};
  report.long_avg = long_average(f, X, restrict, policy);

  const auto xs = draw(X, 2 * X - h, samples, seed);
  report.records.resize(samples);
  const ExecPolicy serial{1};
  parallel_for(samples, policy, [&](std::size_t i) {
    const std::uint64_t x = xs[i];
    const double short_avg = range_sum(f, x, x + h, restrict, serial) / static_cast<double>(h);
    report.records[i] = {x, short_avg, report.long_avg, std::abs(short_avg - report.long_avg)};
  });

  report.paper_threshold = paper_threshold(delta, h);
  const double max_diff = static_cast<double>(h + 1) / static_cast<double>(h) +
                          static_cast<double>(X + 1) / static_cast<double>(X);
  report.vacuous_at_desk_scale = report.paper_threshold >= max_diff;
  for (const double t : user_thresholds) report.exceptional_counts_user[t] = 0;
  std::vector<double> squares(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double d = report.records[i].diff;
    if (d > report.paper_threshold) ++report.exceptional_count;
    for (auto& [t, count] : report.exceptional_counts_user) {
      if (d > t) ++count;
    }
    squares[i] = d * d;
  }
  report.mean_square = tree_sum(squares) / static_cast<double>(samples);
  report.paper_exceptional_bound = paper_exceptional_bound(X, h, delta);
  report.bound_constant = 1.0;
  return report;
}

BilinearResult scan_bilinear(const MultiplicativeFunction& f, std::uint64_t x, std::uint64_t h,
                             const std::optional<Restriction>& restrict,
                             const ExecPolicy& policy) {
  if (h < 10) throw UsageError("scan_bilinear: h must be >= 10");
  if (h > x) throw UsageError("scan_bilinear: h must not exceed x");
  if (x > 1'000'000'000'000ULL) throw CapacityError("scan_bilinear: x exceeds 10^12");

  using u128 = unsigned __int128;
  std::uint64_t n1_lo = isqrt(x);
  if (n1_lo * n1_lo < x) ++n1_lo;
  const std::uint64_t n1_hi = isqrt(4 * x);
  const std::uint64_t upper = x + isqrt(static_cast<u128>(h) * h * x);
  const std::uint64_t n2_lo = (x + n1_hi - 1) / n1_hi;
  const std::uint64_t n2_hi = upper / n1_lo;
  const std::uint64_t lo = std::min(n1_lo, n2_lo);
  const std::uint64_t hi = std::max(n1_hi, n2_hi);
  if (hi - lo > (std::uint64_t{1} << 31)) {
    throw CapacityError("scan_bilinear: n2 range exceeds 2^31 integers");
  }

  // g(n) = f(n), zeroed outside the S-set when restricted.
  std::vector<double> g(hi - lo + 1);
  for_each_segment(lo, hi, policy, [&](std::size_t, const FactorTable& table) {
    const std::uint64_t base = table.window().start - lo;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Factorization entry = table[i];
      if (restrict && !membership(entry, restrict->system, restrict->J)) {
        g[base + i] = 0.0;
      } else {
        g[base + i] = f(entry);
      }
    }
  });
  // prefix[k] = sum of g over [lo, lo + k).
  std::vector<double> prefix(g.size() + 1, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) prefix[k + 1] = prefix[k] + g[k];
  auto range = [&](std::uint64_t a, std::uint64_t b) {
    return a > b ? 0.0 : prefix[b - lo + 1] - prefix[a - lo];
  };

  BilinearResult r;
  for (std::uint64_t n1 = n1_lo; n1 <= n1_hi; ++n1) {
    const double f1 = g[n1 - lo];
    if (f1 == 0.0) continue;
    r.pair_sum += f1 * range((x + n1 - 1) / n1, upper / n1);
  }
  r.linear_sum = range(n1_lo, n1_hi);
  const double root = std::sqrt(static_cast<double>(x));
  r.lhs = r.pair_sum / (static_cast<double>(h) * root * std::log(2.0));
  const double avg = r.linear_sum / root;
  r.rhs = avg * avg;
  r.diff = std::abs(r.lhs - r.rhs);
  return r;
}

CorrelationStats correlation_stats(const MultiplicativeFunction& f, std::uint64_t h,
                                   std::uint64_t X, const ExecPolicy& policy) {
  if (h < 1) throw UsageError("correlation: h must be >= 1");
  if (X < h) throw UsageError("correlation: X must be >= h");
  if (X + h >= kWindowCapacity) throw CapacityError("correlation: X + h exceeds 2^62");

  const std::size_t segments = segment_count(1, X);
  std::vector<double> sums(segments, 0.0);
  std::vector<CorrelationStats> parts(segments);
  parallel_for(segments, policy, [&](std::size_t s) {
    const std::uint64_t a = 1 + s * kSegmentLength;
    const std::uint64_t b = std::min(X, a + kSegmentLength - 1);
    std::vector<double> va, vb;
    if (h < kSegmentLength) {
      const auto all = evaluate_window(f, sieve_factorize(Window::closed(a, b + h)));
      va.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(b - a + 1));
      vb.assign(all.begin() + static_cast<std::ptrdiff_t>(h), all.end());
    } else {
      va = evaluate_window(f, sieve_factorize(Window::closed(a, b)));
      vb = evaluate_window(f, sieve_factorize(Window::closed(a + h, b + h)));
    }
    CorrelationStats& p = parts[s];
    double sum = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
      const double prod = va[i] * vb[i];
      sum += prod;
      const int sg = sign_of(va[i]) * sign_of(vb[i]);
      if (sg > 0) {
        ++p.positive;
      } else if (sg < 0) {
        ++p.negative;
      } else {
        ++p.zero;
      }
    }
    sums[s] = sum;
  });
  CorrelationStats out;
  out.sum = tree_sum(sums);
  for (const auto& p : parts) {
    out.positive += p.positive;
    out.negative += p.negative;
    out.zero += p.zero;
  }
  out.value = out.sum / static_cast<double>(X);
  return out;
}

double correlation(const MultiplicativeFunction& f, std::uint64_t h, std::uint64_t X,
                   const ExecPolicy& policy) {
  return correlation_stats(f, h, X, policy).value;
}

SignChanges sign_changes(const MultiplicativeFunction& f, std::uint64_t X,
                         const ExecPolicy& policy) {
  if (X < 1) throw UsageError("sign_changes: X must be >= 1");
  struct Part {
    int first = 0;
    int last = 0;
    std::uint64_t changes = 0;
    std::uint64_t nonzero = 0;
  };
  std::vector<Part> parts(segment_count(1, X));
  for_each_segment(1, X, policy, [&](std::size_t s, const FactorTable& table) {
    Part p;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const int sg = sign_of(f(table[i]));
      if (sg == 0) continue;
      ++p.nonzero;
      if (p.first == 0) p.first = sg;
      if (p.last != 0 && sg != p.last) ++p.changes;
      p.last = sg;
    }
    parts[s] = p;
  });
  SignChanges out;
  int last = 0;
  for (const auto& p : parts) {
    out.count += p.changes;
    out.nonzero += p.nonzero;
    if (p.first == 0) continue;
    if (last != 0 && p.first != last) ++out.count;
    last = p.last;
  }
  return out;
}

double lucht_tuttas_density(const std::vector<std::uint64_t>& neg_primes) {
  if (neg_primes.empty()) throw ValidationError("lucht_tuttas_density: prime set is empty");
  double product = 1.0;
  for (const auto p : neg_primes) {
    if (!is_prime(p)) {
      throw ValidationError("lucht_tuttas_density: " + std::to_string(p) + " is not prime");
    }
    product *= 1.0 - 4.0 / (static_cast<double>(p) + 1.0);
  }
  return 0.5 - 0.5 * product;
}

double sign_change_in_intervals(const MultiplicativeFunction& f, std::uint64_t X,
                                std::uint64_t psi, std::uint64_t samples, std::uint64_t seed,
                                const ExecPolicy& policy) {
  if (psi < 2) throw UsageError("sign_change_in_intervals: psi must be >= 2");
  if (samples == 0) throw UsageError("sign_change_in_intervals: samples must be >= 1");
  if (X < 1 || 2 * X + psi >= kWindowCapacity) {
    throw CapacityError("sign_change_in_intervals: window exceeds 2^62");
  }
  const auto xs = draw(X, 2 * X, samples, seed);
  std::vector<std::uint8_t> hit(samples, 0);
  parallel_for(samples, policy,
               [&](std::size_t i) { hit[i] = window_has_sign_change(f, xs[i], xs[i] + psi); });
  std::uint64_t total = 0;
  for (auto v : hit) total += v;
  return static_cast<double>(total) / static_cast<double>(samples);
}

bool sqrt_interval_sign_change(const MultiplicativeFunction& f, std::uint64_t x, double C) {
  if (!f.completely_multiplicative()) {
    throw UsageError("sqrt_interval_sign_change: " + f.to_string() +
                     " is not completely multiplicative");
  }
  if (!(C > 0.0)) throw UsageError("sqrt_interval_sign_change: C must be > 0");
  if (x < 1) throw UsageError("sqrt_interval_sign_change: x must be >= 1");
  const double len = std::floor(C * std::sqrt(static_cast<double>(x)));
  if (len > static_cast<double>(std::uint64_t{1} << 32)) {
    throw CapacityError("sqrt_interval_sign_change: interval longer than 2^32");
  }
  return window_has_sign_change(f, x, x + static_cast<std::uint64_t>(len));
}

SmoothScan smooth_in_intervals(double u, std::uint64_t X, std::uint64_t psi,
                               std::uint64_t samples, std::uint64_t seed,
                               const DickmanTable& table, const ExecPolicy& policy) {
  if (!(u >= 1.0)) throw UsageError("smooth_in_intervals: u must be >= 1");
  if (psi < 10) throw UsageError("smooth_in_intervals: psi must be >= 10");
  if (samples == 0) throw UsageError("smooth_in_intervals: samples must be >= 1");
  if (X < 1 || 2 * X + psi >= kWindowCapacity) {
    throw CapacityError("smooth_in_intervals: window exceeds 2^62");
  }
  SmoothScan out;
  out.u = u;
  out.psi = psi;
  const double expected = table.rho(u) * static_cast<double>(psi);
  const auto xs = draw(X, 2 * X, samples, seed);
  out.records.resize(samples);
  const ExecPolicy serial{1};
  parallel_for(samples, policy, [&](std::size_t i) {
    const std::uint64_t x = xs[i];
    out.records[i] = {x, count_smooth(x, x + psi, integer_root(x, u), serial), expected};
  });
  std::vector<double> counts(samples);
  for (std::size_t i = 0; i < samples; ++i) counts[i] = static_cast<double>(out.records[i].count);
  out.mean = tree_sum(counts) / static_cast<double>(samples);
  out.ratio = expected > 0.0 ? out.mean / expected : std::numeric_limits<double>::infinity();
  return out;
}

SqrtIntervalSmooth smooth_in_sqrt_interval(double eps, std::uint64_t X, const DickmanTable& table,
                                           std::uint64_t max_window, const ExecPolicy& policy) {
  if (!(eps > 0.0 && eps <= 1.0)) throw UsageError("smooth_in_sqrt_interval: eps in (0, 1]");
  if (X < 2) throw UsageError("smooth_in_sqrt_interval: X must be >= 2");
  if (max_window == 0) throw UsageError("smooth_in_sqrt_interval: max_window must be >= 1");
  SqrtIntervalSmooth out;
  out.C = smooth_interval_constant(eps, table);
  out.y = integer_root(X, 1.0 / eps);
  out.first = X;
  const double span = out.C * std::sqrt(static_cast<double>(X));
  std::uint64_t len;  // integers in the scanned window
  if (!(span + 1.0 <= static_cast<double>(max_window))) {
    out.partial = true;
    len = max_window;
  } else {
    len = static_cast<std::uint64_t>(std::floor(span)) + 1;
  }
  if (X + len >= kWindowCapacity) throw CapacityError("smooth_in_sqrt_interval: window too large");
  out.last = X + len - 1;
  out.count = count_smooth(out.first, out.last, out.y, policy);
  const double log_X = std::log(static_cast<double>(X));
  out.threshold = std::sqrt(static_cast<double>(X)) / std::pow(log_X, 4.0);
  return out;
}

MediumVsLong medium_vs_long(const MultiplicativeFunction& f, std::uint64_t X,
                            std::uint64_t samples, std::uint64_t seed, const ExecPolicy& policy) {
  if (X < 10'000) throw UsageError("medium_vs_long: X must be >= 10^4");
  if (samples == 0) throw UsageError("medium_vs_long: samples must be >= 1");
  if (X > kWindowCapacity / 4) throw CapacityError("medium_vs_long: X too large");
  MediumVsLong out;
  const double log_X = std::log(static_cast<double>(X));
  out.y = static_cast<std::uint64_t>(std::ceil(static_cast<double>(X) / std::pow(log_X, 0.2)));
  const double long_avg = long_average(f, X, std::nullopt, policy);
  const auto xs = draw(X, 2 * X, samples, seed);
  std::vector<double> diffs(samples);
  // Samples run one after another; each medium sum is itself segment-parallel.
  for (std::size_t i = 0; i < samples; ++i) {
    const double medium =
        range_sum(f, xs[i], xs[i] + out.y, std::nullopt, policy) / static_cast<double>(out.y);
    diffs[i] = std::abs(medium - long_avg);
  }
  out.max_diff = *std::max_element(diffs.begin(), diffs.end());
  out.mean_diff = tree_sum(diffs) / static_cast<double>(samples);
  return out;
}

}  // namespace shortsum
