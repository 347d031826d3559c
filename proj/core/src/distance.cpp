#include <algorithm>
#include <cmath>
#include <limits>

#include "shortsum/analytic.hpp"
#include "shortsum/error.hpp"

namespace shortsum {

namespace {

struct PrimeTerm {
  double log_p;
  double inv_p;
  double f_over_p;
};

std::vector<PrimeTerm> prime_terms(const MultiplicativeFunction& f, std::uint64_t x) {
  if (x < 2) throw UsageError("distance: x must be >= 2");
  if (x > (std::uint64_t{1} << 31)) throw CapacityError("distance: x exceeds 2^31");
  const auto primes = base_primes(x);
  std::vector<PrimeTerm> terms;
  for (auto p : *primes) {
    if (p > x) break;
    const double inv = 1.0 / static_cast<double>(p);
    terms.push_back({std::log(static_cast<double>(p)), inv, f.prime_power(p, 1) * inv});
  }
  return terms;
}

// D(f, p^{i tau}; x)^2 for real f.
double archimedean_sq(const std::vector<PrimeTerm>& terms, double tau) {
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& t : terms) {
    const double y = (t.inv_p - t.f_over_p * std::cos(tau * t.log_p)) - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  return sum;
}

}  // namespace

DistanceResult halasz_distance(const MultiplicativeFunction& f, const DistanceTarget& g,
                               std::uint64_t x) {
  const auto terms = prime_terms(f, x);
  double sq = 0.0;
  if (const auto* arch = std::get_if<Archimedean>(&g)) {
    sq = archimedean_sq(terms, arch->t0);
  } else {
    const auto& other = std::get<MultiplicativeFunction>(g);
    const auto primes = base_primes(x);
    double carry = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double gp = other.prime_power((*primes)[i], 1);
      const double y = (terms[i].inv_p - terms[i].f_over_p * gp) - carry;
      const double s = sq + y;
      carry = (s - sq) - y;
      sq = s;
    }
  }
  return {std::sqrt(std::max(0.0, sq)), x};
}

MinDistance min_distance(const MultiplicativeFunction& f, double t, double T0, std::uint64_t x,
                         unsigned grid) {
  if (grid < 3) throw UsageError("min_distance: grid must be >= 3");
  if (!(T0 >= 0.0)) throw UsageError("min_distance: T0 must be >= 0");
  const auto terms = prime_terms(f, x);
  auto objective = [&](double t0) { return archimedean_sq(terms, t + t0); };

  const double spacing = 2.0 * T0 / static_cast<double>(grid - 1);
  MinDistance best{std::numeric_limits<double>::infinity(), 0.0};
  for (unsigned k = 0; k < grid; ++k) {
    const double t0 = k + 1 == grid ? T0 : -T0 + spacing * k;
    const double v = objective(t0);
    if (v < best.M) best = {v, t0};
  }

  // Golden-section on the bracket around the best node.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = std::max(-T0, best.argmin - spacing);
  double hi = std::min(T0, best.argmin + spacing);
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 100 && hi - lo > 1e-13 * std::max(1.0, std::abs(best.argmin));
       ++iter) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = objective(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = objective(mid);
  if (fmid < best.M) best = {fmid, mid};
  if (fc < best.M) best = {fc, c};
  if (fd < best.M) best = {fd, d};
  best.M = std::max(0.0, best.M);
  return best;
}

double halasz_bound_shape(double M, double x, double T0) {
  const double log_x = std::log(x);
  return M * std::exp(-M) + 1.0 / T0 + std::log(log_x) / log_x;
}

HalaszShape halasz_bound_shape(const MultiplicativeFunction& f, std::uint64_t x, double T0,
                               double t, unsigned grid) {
  if (x < 16) throw UsageError("halasz_bound_shape: x must be >= 16");
  if (!(T0 >= 1.0)) throw UsageError("halasz_bound_shape: T0 must be >= 1");
  HalaszShape out;
  out.minimum = min_distance(f, t, T0, x, grid);
  out.value = halasz_bound_shape(out.minimum.M, static_cast<double>(x), T0);
  return out;
}

}  // namespace shortsum
