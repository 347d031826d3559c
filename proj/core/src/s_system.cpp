#include "shortsum/s_system.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "shortsum/error.hpp"

namespace shortsum {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// exp(43) < 2^64; above this the integer bounds saturate.
constexpr double kMaxIntegerLog = 43.0;

double log_u64(std::uint64_t n) { return std::log(static_cast<double>(n)); }

// Smallest n >= 1 with log(n) >= log_lo.
std::uint64_t integer_floor_bound(double log_lo) {
  if (log_lo <= 0.0) return 1;
  if (log_lo > kMaxIntegerLog) return kSaturated;
  auto n = static_cast<std::uint64_t>(std::ceil(std::exp(log_lo)));
  while (n > 1 && log_u64(n - 1) >= log_lo) --n;
  while (log_u64(n) < log_lo) ++n;
  return n;
}

// Largest n with log(n) <= log_hi.
std::uint64_t integer_ceil_bound(double log_hi) {
  if (log_hi < 0.0) return 0;
  if (log_hi > kMaxIntegerLog) return kSaturated;
  auto n = static_cast<std::uint64_t>(std::floor(std::exp(log_hi)));
  while (n > 0 && log_u64(n) > log_hi) --n;
  while (log_u64(n + 1) <= log_hi) ++n;
  return n;
}

double parse_double_token(std::string_view token, std::string_view context) {
  // from_chars for double is unavailable on older toolchains; strtod on a copy.
  const std::string copy(token);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    throw ValidationError("cannot parse '" + copy + "' in system spec '" + std::string(context) +
                          "'");
  }
  return v;
}

std::uint64_t parse_u64_token(std::string_view token, std::string_view context) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ValidationError("cannot parse '" + std::string(token) + "' in system spec '" +
                          std::string(context) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == s.npos ? s.npos : next - pos));
    if (next == s.npos) break;
    pos = next + 1;
  }
  return parts;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

IntervalSystem::IntervalSystem(double eta, std::vector<std::pair<double, double>> log_bounds)
    : eta_(eta) {
  intervals_.reserve(log_bounds.size());
  for (const auto& [lo, hi] : log_bounds) {
    intervals_.push_back({lo, hi, integer_floor_bound(lo), integer_ceil_bound(hi)});
  }
  check_invariants();
}

void IntervalSystem::check_invariants() const {
  if (!(eta_ > 0.0 && eta_ < 1.0 / 6.0)) {
    throw ValidationError("eta must lie in (0, 1/6), got " + fmt17(eta_));
  }
  if (intervals_.empty()) throw ValidationError("interval system needs at least one interval");
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    const auto& iv = intervals_[j];
    if (!std::isfinite(iv.log_lo) || !std::isfinite(iv.log_hi) || iv.log_lo < 0.0 ||
        iv.log_lo > iv.log_hi) {
      throw ValidationError("interval " + std::to_string(j + 1) + " is malformed");
    }
    if (j > 0 && !(intervals_[j - 1].log_hi < iv.log_lo)) {
      throw ValidationError("intervals " + std::to_string(j) + " and " + std::to_string(j + 1) +
                            " are not increasing and disjoint");
    }
  }
}

IntervalSystem IntervalSystem::from_integers(
    double eta, std::vector<std::pair<std::uint64_t, std::uint64_t>> bounds) {
  IntervalSystem sys;
  sys.eta_ = eta;
  sys.explicit_ = true;
  for (const auto& [p, q] : bounds) {
    if (p < 1 || p > q) {
      throw ValidationError("explicit interval " + std::to_string(p) + "-" + std::to_string(q) +
                            " needs 1 <= P <= Q");
    }
    sys.intervals_.push_back({log_u64(p), log_u64(q), p, q});
  }
  sys.check_invariants();
  for (std::size_t j = 1; j < sys.intervals_.size(); ++j) {
    if (sys.intervals_[j - 1].int_hi >= sys.intervals_[j].int_lo) {
      throw ValidationError("explicit intervals overlap");
    }
  }
  return sys;
}

IntervalSystem IntervalSystem::restore(double eta, std::vector<LogInterval> intervals,
                                       bool is_explicit) {
  IntervalSystem sys;
  sys.eta_ = eta;
  sys.intervals_ = std::move(intervals);
  sys.explicit_ = is_explicit;
  sys.check_invariants();
  return sys;
}

IntervalSystem IntervalSystem::canonical(double eta, double log_p1, double log_q1,
                                         unsigned count) {
  if (!(eta > 0.0 && eta < 1.0 / 6.0)) {
    throw ValidationError("eta must lie in (0, 1/6), got " + fmt17(eta));
  }
  if (!(log_p1 > 0.0 && log_p1 <= log_q1)) {
    throw ValidationError("canonical system needs 0 < log P1 <= log Q1");
  }
  if (count < 1) throw ValidationError("canonical system needs count >= 1");
  if (count > 60) throw CapacityError("canonical system: count > 60 overflows j^{4j}");
  std::vector<std::pair<double, double>> bounds;
  bounds.emplace_back(log_p1, log_q1);
  for (unsigned j = 2; j <= count; ++j) {
    const double jd = j;
    const double lp = std::pow(jd, 4.0 * jd) * std::pow(log_q1, jd - 1.0) * log_p1;
    const double lq = std::pow(jd, 4.0 * jd + 2.0) * std::pow(log_q1, jd);
    if (!std::isfinite(lp) || !std::isfinite(lq)) {
      throw CapacityError("canonical system: interval " + std::to_string(j) +
                          " overflows double precision");
    }
    bounds.emplace_back(lp, lq);
  }
  return IntervalSystem(eta, std::move(bounds));
}

IntervalSystem IntervalSystem::parse(std::string_view text, double eta) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("system spec '" + std::string(text) + "' lacks a form prefix");
  }
  const auto head = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (head == "auto") {
    const auto parts = split(body, ',');
    if (parts.size() != 4) {
      throw ValidationError("auto system needs eta,logP1,logQ1,count in '" + std::string(text) +
                            "'");
    }
    const std::uint64_t count = parse_u64_token(parts[3], text);
    if (count > 1000) throw CapacityError("auto system count too large");
    return canonical(parse_double_token(parts[0], text), parse_double_token(parts[1], text),
                     parse_double_token(parts[2], text), static_cast<unsigned>(count));
  }
  if (head == "explicit") {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> bounds;
    for (const auto part : split(body, ',')) {
      const auto dash = part.find('-');
      if (dash == std::string_view::npos) {
        throw ValidationError("expected P-Q, got '" + std::string(part) + "'");
      }
      bounds.emplace_back(parse_u64_token(part.substr(0, dash), text),
                          parse_u64_token(part.substr(dash + 1), text));
    }
    return from_integers(eta, std::move(bounds));
  }
  throw ValidationError("unknown system form '" + std::string(head) + "'");
}

std::string IntervalSystem::to_string() const {
  std::string s;
  if (explicit_) {
    s = "explicit:";
    for (std::size_t j = 0; j < intervals_.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(intervals_[j].int_lo) + "-" + std::to_string(intervals_[j].int_hi);
    }
    return s;
  }
  s = "log:";
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    if (j) s += ',';
    s += fmt17(intervals_[j].log_lo) + "-" + fmt17(intervals_[j].log_hi);
  }
  return s;
}

std::vector<Violation> validate(const IntervalSystem& sys) {
  std::vector<Violation> out;
  const double eta = sys.eta();
  for (std::size_t idx = 1; idx < sys.size(); ++idx) {
    const unsigned j = static_cast<unsigned>(idx + 1);
    const double j2 = static_cast<double>(j) * j;
    const auto& prev = sys[idx - 1];
    const auto& cur = sys[idx];

    const double denom = prev.log_lo - 1.0;
    const double far_lhs = denom > 0.0 ? std::log(cur.log_hi) / denom
                                       : std::numeric_limits<double>::infinity();
    const double far_rhs = eta / (4.0 * j2);
    if (far_lhs > far_rhs) out.push_back({j, "not_too_far", far_lhs, far_rhs});

    const double close_lhs = eta / j2 * cur.log_lo;
    const double close_rhs = 8.0 * prev.log_hi + 16.0 * std::log(static_cast<double>(j));
    if (close_lhs < close_rhs) out.push_back({j, "not_too_close", close_lhs, close_rhs});
  }
  return out;
}

unsigned bind_to_log_X(const IntervalSystem& sys, double log_x) {
  const double cap = std::sqrt(log_x);
  unsigned J = 0;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (sys[j].log_hi <= cap) J = static_cast<unsigned>(j + 1);
  }
  return J;
}

unsigned bind_to_X(const IntervalSystem& sys, std::uint64_t X) {
  if (X < 16) throw UsageError("bind_to_X requires X >= 16");
  return bind_to_log_X(sys, log_u64(X));
}

std::uint32_t interval_mask(const Factorization& entry, const IntervalSystem& sys, unsigned J) {
  std::uint32_t mask = 0;
  for (const std::uint64_t p : entry.primes()) {
    for (unsigned j = 0; j < J; ++j) {
      if (sys[j].contains(p)) {
        mask |= std::uint32_t{1} << j;
        break;
      }
    }
  }
  return mask;
}

bool membership(const Factorization& entry, const IntervalSystem& sys, unsigned J) {
  if (J == 0) return true;
  if (J > sys.size()) throw UsageError("membership: J exceeds system length");
  for (unsigned j = 0; j < J; ++j) {
    bool hit = false;
    for (const std::uint64_t p : entry.primes()) {
      if (sys[j].contains(p)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

double nonmember_density_bound(const IntervalSystem& sys, unsigned J) {
  if (J < 1 || J > sys.size()) throw UsageError("nonmember_density_bound needs 1 <= J <= length");
  double total = 0.0;
  for (unsigned j = 0; j < J; ++j) total += sys[j].log_lo / sys[j].log_hi;
  return total;
}

namespace {

template <typename Num>
void inclusion_exclusion_impl(std::span<const Num> a, std::uint64_t X, const IntervalSystem& sys,
                              unsigned J, Num& lhs, Num& rhs) {
  if (J > kMaxInclusionExclusionJ) {
    throw CapacityError("inclusion_exclusion_check: J > 20 needs 2^J subsets");
  }
  if (J > sys.size()) throw UsageError("inclusion_exclusion_check: J exceeds system length");
  if (a.size() != X + 1) throw UsageError("inclusion_exclusion_check: need X + 1 coefficients");
  const std::uint32_t full = (std::uint32_t{1} << J) - 1;

  // Coefficient mass per mask of intervals hit.
  std::vector<Num> bucket(std::size_t{1} << J, Num{});
  lhs = Num{};
  const FactorTable table = sieve_factorize(Window::closed(X, 2 * X));
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::uint32_t mask = interval_mask(table[i], sys, J);
    bucket[mask] += a[i];
    if (mask == full) lhs += a[i];
  }
  // Subset sums: zeta[m] = sum of bucket[k] over k a subset of m.
  std::vector<Num> zeta = bucket;
  for (unsigned b = 0; b < J; ++b) {
    for (std::uint32_t m = 0; m <= full; ++m) {
      if (m & (std::uint32_t{1} << b)) zeta[m] += zeta[m ^ (std::uint32_t{1} << b)];
    }
  }
  // g_G(n) = 1 iff mask(n) avoids G, i.e. mask(n) is a subset of ~G.
  rhs = Num{};
  for (std::uint32_t g = 0; g <= full; ++g) {
    const Num term = zeta[full ^ g];
    if (std::popcount(g) & 1) {
      rhs -= term;
    } else {
      rhs += term;
    }
  }
}

}  // namespace

InclusionExclusion inclusion_exclusion_check(std::span<const double> a, std::uint64_t X,
                                             const IntervalSystem& sys, unsigned J) {
  InclusionExclusion r;
  inclusion_exclusion_impl<double>(a, X, sys, J, r.lhs, r.rhs);
  r.difference = std::abs(r.lhs - r.rhs);
  return r;
}

ExactInclusionExclusion inclusion_exclusion_check(std::span<const std::int64_t> a,
                                                  std::uint64_t X, const IntervalSystem& sys,
                                                  unsigned J) {
  ExactInclusionExclusion r;
  inclusion_exclusion_impl<std::int64_t>(a, X, sys, J, r.lhs, r.rhs);
  r.difference = r.lhs > r.rhs ? r.lhs - r.rhs : r.rhs - r.lhs;
  return r;
}

}  // namespace shortsum
