#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shortsum/parallel.hpp"
#include "shortsum/s_system.hpp"
#include "shortsum/sieve.hpp"

namespace shortsum {

enum class FunctionKind {
  kOne,
  kMoebius,
  kLiouville,
  kAbsMoebius,
  kSmoothIndicator,
  kNegPrimes,
  kTable,
};

// A real multiplicative function with values in [-1, 1], described by its
// values on prime powers. f(1) = 1 and f(n) is the product over the prime
// powers exactly dividing n.
class MultiplicativeFunction {
 public:
  // Key (prime, exponent) -> value for table functions.
  using PrimePowerTable = std::map<std::pair<std::uint64_t, std::uint32_t>, double>;

  static MultiplicativeFunction one();
  static MultiplicativeFunction moebius();
  static MultiplicativeFunction liouville();
  static MultiplicativeFunction abs_moebius();
  // 1 on y-smooth integers, 0 elsewhere.
  static MultiplicativeFunction smooth_indicator(std::uint64_t y);
  // Completely multiplicative: f(p) = -1 for p in `primes`, +1 for every other
  // prime. Entries must be prime; duplicates are removed.
  static MultiplicativeFunction neg_primes(std::vector<std::uint64_t> primes);
  // Explicit prime-power values. NOTE: every prime power missing from the
  // table evaluates to +1, so a partial table still defines a total
  // function. When completely_multiplicative is set, only exponent-1 keys are
  // accepted and f(p^e) = f(p)^e. Values outside [-1, 1] throw
  // ValidationError.
  static MultiplicativeFunction table(PrimePowerTable values, bool completely_multiplicative);

  // Grammar: one | moebius | liouville | abs_moebius | smooth:<y> | negp:<p1,p2,...>
  // Throws ValidationError naming the offending token.
  static MultiplicativeFunction parse(std::string_view text);

  // Canonical grammar form; table functions render as "table".
  std::string to_string() const;

  FunctionKind kind() const noexcept { return kind_; }
  bool completely_multiplicative() const noexcept { return completely_multiplicative_; }
  std::uint64_t smoothness() const noexcept { return smooth_y_; }
  const std::vector<std::uint64_t>& negative_primes() const noexcept { return neg_primes_; }

  double prime_power(std::uint64_t p, std::uint32_t e) const;
  double operator()(const Factorization& entry) const;

  friend bool operator==(const MultiplicativeFunction&, const MultiplicativeFunction&) = default;

 private:
  MultiplicativeFunction(FunctionKind kind, bool completely) noexcept
      : kind_(kind), completely_multiplicative_(completely) {}

  FunctionKind kind_;
  bool completely_multiplicative_;
  std::uint64_t smooth_y_ = 0;
  std::vector<std::uint64_t> neg_primes_;
  PrimePowerTable table_;
};

double evaluate(const MultiplicativeFunction& f, const Factorization& entry);

// Element i is f(window.start + i).
std::vector<double> evaluate_window(const MultiplicativeFunction& f, const FactorTable& table);

// (1/X) * sum_{X <= n <= 2X} f(n) over X + 1 integers, optionally restricted
// to the S-set of `restrict`. Segment sums are combined in a fixed tree order.
double long_average(const MultiplicativeFunction& f, std::uint64_t X,
                    const std::optional<Restriction>& restrict = std::nullopt,
                    const ExecPolicy& policy = {});

// sum_{first <= n <= last} f(n) (restricted when requested), same reduction.
double range_sum(const MultiplicativeFunction& f, std::uint64_t first, std::uint64_t last,
                 const std::optional<Restriction>& restrict = std::nullopt,
                 const ExecPolicy& policy = {});

}  // namespace shortsum
