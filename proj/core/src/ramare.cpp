#include <algorithm>
#include <numeric>

#include "shortsum/analytic.hpp"
#include "shortsum/error.hpp"

namespace shortsum {

namespace {

// Distinct primes of any n <= 2^62 number at most 15.
constexpr unsigned kMaxDistinctPrimes = 15;

struct RangeInfo {
  std::vector<std::uint64_t> primes;  // primes in [P, Q]
  unsigned max_omega = 0;
};

RangeInfo range_primes(std::uint64_t X, std::uint64_t P, std::uint64_t Q) {
  if (X < 1) throw UsageError("ramare_decompose: X must be >= 1");
  if (X > kWindowCapacity / 2) throw CapacityError("ramare_decompose: 2X exceeds 2^62");
  if (P < 2 || P > Q || Q > 2 * X) throw UsageError("ramare_decompose: need 2 <= P <= Q <= 2X");
  if (Q > (std::uint64_t{1} << 31)) throw CapacityError("ramare_decompose: Q exceeds 2^31");
  RangeInfo info;
  const auto all = base_primes(Q);
  for (auto it = std::lower_bound(all->begin(), all->end(), P); it != all->end() && *it <= Q;
       ++it) {
    info.primes.push_back(*it);
  }
  info.max_omega =
      std::min<unsigned>(kMaxDistinctPrimes, static_cast<unsigned>(info.primes.size()));
  return info;
}

// Accumulates every field with a caller-supplied weight: term(a_n, n, k)
// returns a_n * n^{-s} / k in the caller's number type (k = omega + 1, or 1).
template <typename Num, typename Coef, typename Term>
void decompose(std::uint64_t X, std::uint64_t P, std::uint64_t Q, const RangeInfo& info,
               Coef coef, Term term, Num& lhs, Num& main, Num& correction, Num& coprime,
               Num& residual, Num& sf_residual) {
  const FactorTable nt = sieve_factorize(Window::closed(X, 2 * X));
  const std::size_t count = nt.size();

  // Per-n: omega(n; P, Q) and whether some p in range has p^2 | n.
  std::vector<std::uint8_t> omega(count);
  std::vector<std::uint8_t> squarefull(count);
  lhs = coprime = correction = Num{};
  Num lhs_sf{};
  for (std::size_t i = 0; i < count; ++i) {
    const Factorization e = nt[i];
    unsigned k = 0;
    bool sq = false;
    for (const PrimePower pp : e) {
      if (pp.prime < P) continue;
      if (pp.prime > Q) break;
      ++k;
      sq = sq || pp.exponent >= 2;
    }
    omega[i] = static_cast<std::uint8_t>(k);
    squarefull[i] = sq ? 1 : 0;
    const std::uint64_t n = X + i;
    const auto a = coef(i);
    lhs += term(a, n, 1);
    if (!sq) lhs_sf += term(a, n, 1);
    if (k == 0) coprime += term(a, n, 1);
    if (sq) {
      // Deficiency from the n side: a_n (1 - sum_{p | n} w(n / p)).
      Num covered{};
      for (const PrimePower pp : e) {
        if (pp.prime < P) continue;
        if (pp.prime > Q) break;
        const unsigned omega_m = pp.exponent >= 2 ? k : k - 1;
        covered += term(a, n, omega_m + 1);
      }
      correction += term(a, n, 1) - covered;
    }
  }

  // Pair side: n = p m with X <= n <= 2X, weight from omega(m; P, Q).
  main = Num{};
  Num main_sf{};
  const std::uint64_t m_lo = (X + Q - 1) / Q;
  const std::uint64_t m_hi = 2 * X / P;
  const FactorTable mt = sieve_factorize(Window::closed(std::max<std::uint64_t>(m_lo, 1), m_hi));
  for (const std::uint64_t p : info.primes) {
    const std::uint64_t lo = (X + p - 1) / p;
    const std::uint64_t hi = 2 * X / p;
    for (std::uint64_t m = lo; m <= hi; ++m) {
      const unsigned omega_m = omega_in_range(mt.of(m), P, Q);
      const std::size_t i = static_cast<std::size_t>(p * m - X);
      const Num w = term(coef(i), p * m, omega_m + 1);
      main += w;
      if (!squarefull[i]) main_sf += w;
    }
  }
  residual = lhs - main - coprime;
  sf_residual = lhs_sf - main_sf - coprime;
}

}  // namespace

RamareDecomposition ramare_decompose(std::span<const double> a, std::uint64_t X,
                                     std::uint64_t P, std::uint64_t Q, int s) {
  if (s != 0 && s != 1) throw UsageError("ramare_decompose: s must be 0 or 1");
  const RangeInfo info = range_primes(X, P, Q);
  if (a.size() != X + 1) throw UsageError("ramare_decompose: need X + 1 coefficients");
  RamareDecomposition r;
  decompose<double>(
      X, P, Q, info, [&](std::size_t i) { return a[i]; },
      [s](double coef, std::uint64_t n, unsigned k) {
        const double v = coef / static_cast<double>(k);
        return s == 1 ? v / static_cast<double>(n) : v;
      },
      r.lhs, r.main, r.correction, r.coprime, r.residual, r.squarefree_residual);
  return r;
}

ExactRamareDecomposition ramare_decompose_exact(std::span<const std::int64_t> a, std::uint64_t X,
                                                std::uint64_t P, std::uint64_t Q) {
  const RangeInfo info = range_primes(X, P, Q);
  if (a.size() != X + 1) throw UsageError("ramare_decompose: need X + 1 coefficients");
  std::int64_t denom = 1;
  for (std::int64_t k = 2; k <= static_cast<std::int64_t>(info.max_omega) + 1; ++k) {
    denom = std::lcm(denom, k);
  }
  using i128 = __int128;
  i128 lhs, main, correction, coprime, residual, sf;
  decompose<i128>(
      X, P, Q, info, [&](std::size_t i) { return a[i]; },
      [denom](std::int64_t coef, std::uint64_t, unsigned k) {
        return static_cast<i128>(coef) * (denom / static_cast<std::int64_t>(k));
      },
      lhs, main, correction, coprime, residual, sf);
  auto narrow = [](i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw CapacityError("ramare_decompose_exact: overflow");
    return static_cast<std::int64_t>(v);
  };
  ExactRamareDecomposition r;
  r.denominator = denom;
  r.lhs = narrow(lhs);
  r.main = narrow(main);
  r.correction = narrow(correction);
  r.coprime = narrow(coprime);
  r.residual = narrow(residual);
  r.squarefree_residual = narrow(sf);
  return r;
}

}  // namespace shortsum
