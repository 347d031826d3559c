#include "shortsum/mfunc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "shortsum/error.hpp"

namespace shortsum {

namespace {

std::uint64_t parse_u64_token(std::string_view token, std::string_view context) {
  std::uint64_t v = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw ValidationError("cannot parse '" + std::string(token) + "' in function spec '" +
                          std::string(context) + "'");
  }
  return v;
}

}  // namespace

MultiplicativeFunction MultiplicativeFunction::one() { return {FunctionKind::kOne, true}; }

MultiplicativeFunction MultiplicativeFunction::moebius() { return {FunctionKind::kMoebius, false}; }

MultiplicativeFunction MultiplicativeFunction::liouville() {
  return {FunctionKind::kLiouville, true};
}

MultiplicativeFunction MultiplicativeFunction::abs_moebius() {
  return {FunctionKind::kAbsMoebius, false};
}

MultiplicativeFunction MultiplicativeFunction::smooth_indicator(std::uint64_t y) {
  // 1_{p <= y} on every prime power is completely multiplicative.
  MultiplicativeFunction f(FunctionKind::kSmoothIndicator, true);
  f.smooth_y_ = y;
  return f;
}

MultiplicativeFunction MultiplicativeFunction::neg_primes(std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (auto p : primes) {
    if (!is_prime(p)) throw ValidationError("negp: " + std::to_string(p) + " is not prime");
  }
  MultiplicativeFunction f(FunctionKind::kNegPrimes, true);
  f.neg_primes_ = std::move(primes);
  return f;
}

MultiplicativeFunction MultiplicativeFunction::table(PrimePowerTable values,
                                                     bool completely_multiplicative) {
  for (const auto& [key, v] : values) {
    const auto [p, e] = key;
    if (!is_prime(p) || e == 0) {
      throw ValidationError("table: key (" + std::to_string(p) + "," + std::to_string(e) +
                            ") is not a prime power");
    }
    if (!(v >= -1.0 && v <= 1.0)) {
      throw ValidationError("table: value for " + std::to_string(p) + "^" + std::to_string(e) +
                            " outside [-1,1]");
    }
    if (completely_multiplicative && e != 1) {
      throw ValidationError("table: completely multiplicative tables take prime keys only");
    }
  }
  MultiplicativeFunction f(FunctionKind::kTable, completely_multiplicative);
  f.table_ = std::move(values);
  return f;
}

MultiplicativeFunction MultiplicativeFunction::parse(std::string_view text) {
  if (text == "one") return one();
  if (text == "moebius") return moebius();
  if (text == "liouville") return liouville();
  if (text == "abs_moebius") return abs_moebius();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("unknown function '" + std::string(text) + "'");
  }
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (head == "smooth") {
    return smooth_indicator(parse_u64_token(body, text));
  }
  if (head == "negp") {
    std::vector<std::uint64_t> primes;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = body.find(',', pos);
      const auto token = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
      const std::uint64_t p = parse_u64_token(token, text);
      if (!is_prime(p)) {
        throw ValidationError("'" + std::string(token) + "' is not prime in '" +
                              std::string(text) + "'");
      }
      primes.push_back(p);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return neg_primes(std::move(primes));
  }
  throw ValidationError("unknown function '" + std::string(head) + "'");
}

std::string MultiplicativeFunction::to_string() const {
  switch (kind_) {
    case FunctionKind::kOne: return "one";
    case FunctionKind::kMoebius: return "moebius";
    case FunctionKind::kLiouville: return "liouville";
    case FunctionKind::kAbsMoebius: return "abs_moebius";
    case FunctionKind::kSmoothIndicator: return "smooth:" + std::to_string(smooth_y_);
    case FunctionKind::kNegPrimes: {
      std::string s = "negp:";
      for (std::size_t i = 0; i < neg_primes_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(neg_primes_[i]);
      }
      return s;
    }
    case FunctionKind::kTable: return "table";
  }
  return "table";
}

double MultiplicativeFunction::prime_power(std::uint64_t p, std::uint32_t e) const {
  switch (kind_) {
    case FunctionKind::kOne: return 1.0;
    case FunctionKind::kMoebius: return e == 1 ? -1.0 : 0.0;
    case FunctionKind::kLiouville: return (e & 1) ? -1.0 : 1.0;
    case FunctionKind::kAbsMoebius: return e == 1 ? 1.0 : 0.0;
    case FunctionKind::kSmoothIndicator: return p <= smooth_y_ ? 1.0 : 0.0;
    case FunctionKind::kNegPrimes:
      if (std::binary_search(neg_primes_.begin(), neg_primes_.end(), p)) {
        return (e & 1) ? -1.0 : 1.0;
      }
      return 1.0;
    case FunctionKind::kTable: {
      if (completely_multiplicative_) {
        const auto it = table_.find({p, 1});
        return it == table_.end() ? 1.0 : std::pow(it->second, static_cast<double>(e));
      }
      const auto it = table_.find({p, e});
      return it == table_.end() ? 1.0 : it->second;
    }
  }
  return 1.0;
}

double MultiplicativeFunction::operator()(const Factorization& entry) const {
  switch (kind_) {
    case FunctionKind::kOne:
      return 1.0;
    case FunctionKind::kLiouville:
      return (entry.big_omega() & 1) ? -1.0 : 1.0;
    case FunctionKind::kMoebius:
    case FunctionKind::kAbsMoebius:
      for (auto e : entry.exponents()) {
        if (e >= 2) return 0.0;
      }
      if (kind_ == FunctionKind::kAbsMoebius) return 1.0;
      return (entry.size() & 1) ? -1.0 : 1.0;
    case FunctionKind::kSmoothIndicator:
      return entry.largest_prime() <= smooth_y_ ? 1.0 : 0.0;
    default:
      break;
  }
  double v = 1.0;
  for (const PrimePower pp : entry) {
    v *= prime_power(pp.prime, pp.exponent);
    if (v == 0.0) break;
  }
  return v;
}

double evaluate(const MultiplicativeFunction& f, const Factorization& entry) { return f(entry); }

std::vector<double> evaluate_window(const MultiplicativeFunction& f, const FactorTable& table) {
  std::vector<double> values(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) values[i] = f(table[i]);
  return values;
}

double range_sum(const MultiplicativeFunction& f, std::uint64_t first, std::uint64_t last,
                 const std::optional<Restriction>& restrict, const ExecPolicy& policy) {
  std::vector<double> partial(segment_count(first, last), 0.0);
  for_each_segment(first, last, policy, [&](std::size_t s, const FactorTable& table) {
    double sum = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Factorization entry = table[i];
      if (restrict && !membership(entry, restrict->system, restrict->J)) continue;
      sum += f(entry);
    }
    partial[s] = sum;
  });
  return tree_sum(partial);
}

double long_average(const MultiplicativeFunction& f, std::uint64_t X,
                    const std::optional<Restriction>& restrict, const ExecPolicy& policy) {
  if (X < 2) throw UsageError("long_average: X must be >= 2");
  if (X > kWindowCapacity / 2) throw CapacityError("long_average: 2X exceeds 2^62");
  return range_sum(f, X, 2 * X, restrict, policy) / static_cast<double>(X);
}

}  // namespace shortsum
