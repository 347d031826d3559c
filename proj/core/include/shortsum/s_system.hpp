#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shortsum/sieve.hpp"

namespace shortsum {

// One interval [P, Q] held as natural logarithms. The integer bounds are the
// smallest n with log n >= log_lo and the largest n with log n <= log_hi,
// saturated at UINT64_MAX once the interval leaves machine range.
struct LogInterval {
  double log_lo = 0.0;
  double log_hi = 0.0;
  std::uint64_t int_lo = 0;
  std::uint64_t int_hi = 0;

  bool contains(std::uint64_t p) const noexcept { return p >= int_lo && p <= int_hi; }
};

// Increasing, disjoint intervals [P_j, Q_j] with a parameter eta in (0, 1/6).
// Bounds are stored in log space because canonical systems overflow every
// integer type from the second interval on.
class IntervalSystem {
 public:
  // Throws ValidationError unless 0 < eta < 1/6, every interval has
  // 0 <= log_lo <= log_hi and consecutive intervals are strictly increasing.
  IntervalSystem(double eta, std::vector<std::pair<double, double>> log_bounds);

  // Explicit integer bounds [P_j, Q_j] (P_j <= Q_j; single-point intervals
  // are allowed here even though their logs coincide).
  static IntervalSystem from_integers(double eta,
                                      std::vector<std::pair<std::uint64_t, std::uint64_t>> bounds);

  // log P_j = j^{4j} (log Q_1)^{j-1} log P_1,  log Q_j = j^{4j+2} (log Q_1)^j  for j >= 2.
  static IntervalSystem canonical(double eta, double log_p1, double log_q1, unsigned count);

  // Grammar: auto:eta,logP1,logQ1,count | explicit:P1-Q1[,P2-Q2,...]
  // Explicit systems take `eta` from the second argument.
  static IntervalSystem parse(std::string_view text, double eta = 0.1);

  // Rebuilds a system from stored fields (used when reading reports back).
  static IntervalSystem restore(double eta, std::vector<LogInterval> intervals, bool is_explicit);

  // Explicit systems render in the parse grammar; log-space ones as
  // "log:lo-hi,..." (display only).
  std::string to_string() const;

  bool is_explicit() const noexcept { return explicit_; }
  double eta() const noexcept { return eta_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const LogInterval& operator[](std::size_t j) const { return intervals_[j]; }
  const std::vector<LogInterval>& intervals() const noexcept { return intervals_; }

  friend bool operator==(const IntervalSystem& a, const IntervalSystem& b) {
    if (a.eta_ != b.eta_ || a.intervals_.size() != b.intervals_.size()) return false;
    for (std::size_t i = 0; i < a.intervals_.size(); ++i) {
      if (a.intervals_[i].log_lo != b.intervals_[i].log_lo ||
          a.intervals_[i].log_hi != b.intervals_[i].log_hi ||
          a.intervals_[i].int_lo != b.intervals_[i].int_lo ||
          a.intervals_[i].int_hi != b.intervals_[i].int_hi) {
        return false;
      }
    }
    return a.explicit_ == b.explicit_;
  }

 private:
  IntervalSystem() = default;
  void check_invariants() const;

  double eta_ = 0.0;
  std::vector<LogInterval> intervals_;
  bool explicit_ = false;
};

// An S-set: integers with a prime factor in each of the first J intervals.
struct Restriction {
  IntervalSystem system;
  unsigned J = 0;

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

struct Violation {
  unsigned j = 0;          // 1-based index of the later interval
  std::string condition;   // "not_too_far" | "not_too_close"
  double lhs = 0.0;
  double rhs = 0.0;
};

// Spacing conditions for j >= 2, evaluated in log space with no slack;
// equality counts as satisfied.
//   not_too_far:   log log Q_j / (log P_{j-1} - 1) <= eta / (4 j^2)
//   not_too_close: (eta / j^2) log P_j >= 8 log Q_{j-1} + 16 log j
std::vector<Violation> validate(const IntervalSystem& sys);

// J = max{ j : log Q_j <= sqrt(log X) }, 0 when even Q_1 is too large.
unsigned bind_to_X(const IntervalSystem& sys, std::uint64_t X);
unsigned bind_to_log_X(const IntervalSystem& sys, double log_x);

// True iff entry has a prime in each interval j <= J (vacuously for J = 0).
bool membership(const Factorization& entry, const IntervalSystem& sys, unsigned J);

// Bit j-1 set iff entry has a prime factor in interval j, for j <= J.
std::uint32_t interval_mask(const Factorization& entry, const IntervalSystem& sys, unsigned J);

// sum_{j <= J} log P_j / log Q_j.
double nonmember_density_bound(const IntervalSystem& sys, unsigned J);

inline constexpr unsigned kMaxInclusionExclusionJ = 20;

struct InclusionExclusion {
  double lhs = 0.0;
  double rhs = 0.0;
  double difference = 0.0;
};

struct ExactInclusionExclusion {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::int64_t difference = 0;
};

// lhs = sum_{n in S} a_n over n in [X, 2X] (a.size() == X + 1);
// rhs = sum over subsets G of {1..J} of (-1)^{|G|} sum_n g_G(n) a_n with
// g_G(n) = 1 iff n has no prime factor in the union of intervals in G.
// J > 20 throws CapacityError.
InclusionExclusion inclusion_exclusion_check(std::span<const double> a, std::uint64_t X,
                                             const IntervalSystem& sys, unsigned J);
ExactInclusionExclusion inclusion_exclusion_check(std::span<const std::int64_t> a,
                                                  std::uint64_t X, const IntervalSystem& sys,
                                                  unsigned J);

}  // namespace shortsum
