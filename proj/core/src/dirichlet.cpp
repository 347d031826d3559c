#include <algorithm>
#include <cmath>
#include <string>

#include "shortsum/analytic.hpp"
#include "shortsum/error.hpp"

namespace shortsum {

namespace {

// Nodes per quadrature panel. Each panel re-anchors its phasors with exact
// cos/sin, so rotation drift is bounded by this many multiplications.
constexpr std::size_t kPanelNodes = 4096;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

DirichletPolynomial::DirichletPolynomial(std::uint64_t n_start, std::vector<double> coefficients)
    : n_start_(n_start), coefficients_(std::move(coefficients)) {
  if (n_start_ < 1) throw ValidationError("Dirichlet polynomial must start at n >= 1");
  if (coefficients_.empty()) throw ValidationError("Dirichlet polynomial has no coefficients");
  if (n_start_ > kWindowCapacity - coefficients_.size()) {
    throw CapacityError("Dirichlet polynomial support exceeds 2^62");
  }
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (!(std::abs(coefficients_[i]) <= kMaxCoefficient)) {
      throw ValidationError("coefficient a_" + std::to_string(n_start_ + i) +
                            " outside [-1e6, 1e6]");
    }
  }
}

double DirichletPolynomial::coefficient(std::uint64_t n) const noexcept {
  if (n < n_start_ || n > n_end()) return 0.0;
  return coefficients_[static_cast<std::size_t>(n - n_start_)];
}

double DirichletPolynomial::squared_norm() const noexcept {
  KahanSum s;
  for (double a : coefficients_) s.add(a * a);
  return s.sum;
}

DirichletPolynomial build_poly(const MultiplicativeFunction& f, std::uint64_t X,
                               const std::optional<Restriction>& restrict, bool normalize) {
  if (X < 1) throw UsageError("build_poly: X must be >= 1");
  if (X > kWindowCapacity / 2) throw CapacityError("build_poly: 2X exceeds 2^62");
  std::vector<double> coeffs(static_cast<std::size_t>(X + 1), 0.0);
  for_each_segment(X, 2 * X, ExecPolicy{1}, [&](std::size_t, const FactorTable& table) {
    const std::uint64_t base = table.window().start;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Factorization entry = table[i];
      if (restrict && !membership(entry, restrict->system, restrict->J)) continue;
      const std::uint64_t n = base + i;
      double v = f(entry);
      if (normalize) v /= static_cast<double>(n);
      coeffs[static_cast<std::size_t>(n - X)] = v;
    }
  });
  return DirichletPolynomial(X, std::move(coeffs));
}

DirichletPolynomial build_prime_window(const MultiplicativeFunction& f, std::uint64_t P,
                                       std::uint64_t Q) {
  if (P < 2 || P > Q) throw UsageError("build_prime_window: need 2 <= P <= Q");
  if (Q > (std::uint64_t{1} << 31)) throw CapacityError("build_prime_window: Q exceeds 2^31");
  std::vector<double> coeffs(static_cast<std::size_t>(Q - P + 1), 0.0);
  const auto primes = base_primes(Q);
  auto it = std::lower_bound(primes->begin(), primes->end(), P);
  for (; it != primes->end() && *it <= Q; ++it) {
    coeffs[static_cast<std::size_t>(*it - P)] = f.prime_power(*it, 1);
  }
  return DirichletPolynomial(P, std::move(coeffs));
}

std::complex<double> eval_at(const DirichletPolynomial& poly, double sigma, double t) {
  KahanSum re;
  KahanSum im;
  const auto coeffs = poly.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double a = coeffs[i];
    if (a == 0.0) continue;
    const double log_n = std::log(static_cast<double>(poly.n_start() + i));
    const double w = sigma == 0.0 ? a : a * std::exp(-sigma * log_n);
    const double phase = t * log_n;
    re.add(w * std::cos(phase));
    im.add(-w * std::sin(phase));
  }
  return {re.sum, im.sum};
}

std::complex<double> dyadic_sum(const MultiplicativeFunction& f, std::uint64_t x, double sigma,
                                double t, const ExecPolicy& policy) {
  if (x < 1) throw UsageError("dyadic_sum: x must be >= 1");
  if (x > kWindowCapacity / 2) throw CapacityError("dyadic_sum: 2x exceeds 2^62");
  std::vector<std::complex<double>> partial(segment_count(x, 2 * x));
  for_each_segment(x, 2 * x, policy, [&](std::size_t index, const FactorTable& table) {
    KahanSum re;
    KahanSum im;
    const std::uint64_t base = table.window().start;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double a = f(table[i]);
      if (a == 0.0) continue;
      const double log_n = std::log(static_cast<double>(base + i));
      const double w = sigma == 0.0 ? a : a * std::exp(-sigma * log_n);
      re.add(w * std::cos(t * log_n));
      im.add(-w * std::sin(t * log_n));
    }
    partial[index] = {re.sum, im.sum};
  });
  return tree_sum(partial);
}

MeanSquare mean_square(const DirichletPolynomial& poly, double T, double step,
                       const ExecPolicy& policy) {
  if (!(T > 0.0) || !(step > 0.0)) throw UsageError("mean_square: T and step must be positive");
  const double log_end = std::log(static_cast<double>(poly.n_end()));
  if (log_end > 0.0 && step > 1.0 / (4.0 * log_end)) {
    throw ResolutionError("mean_square: step " + std::to_string(step) +
                          " exceeds 1/(4 ln n_end) = " + std::to_string(1.0 / (4.0 * log_end)));
  }

  // Nonzero terms only, structure-of-arrays for the inner loop.
  std::vector<double> amp;
  std::vector<double> logs;
  const auto coeffs = poly.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    amp.push_back(coeffs[i]);
    logs.push_back(std::log(static_cast<double>(poly.n_start() + i)));
  }
  const std::size_t terms = amp.size();

  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * T / step));
  const double h = 2.0 * T / static_cast<double>(intervals);
  const std::size_t nodes = intervals + 1;
  const std::size_t panels = (nodes + kPanelNodes - 1) / kPanelNodes;

  std::vector<double> rot_re(terms);
  std::vector<double> rot_im(terms);
  for (std::size_t j = 0; j < terms; ++j) {
    rot_re[j] = std::cos(h * logs[j]);
    rot_im[j] = -std::sin(h * logs[j]);
  }

  std::vector<double> panel_sum(panels, 0.0);
  parallel_for(panels, policy, [&](std::size_t p) {
    const std::size_t k0 = p * kPanelNodes;
    const std::size_t k1 = std::min(nodes, k0 + kPanelNodes);
    std::vector<double> zr(terms);
    std::vector<double> zi(terms);
    const double t0 = -T + static_cast<double>(k0) * h;
    for (std::size_t j = 0; j < terms; ++j) {
      zr[j] = std::cos(t0 * logs[j]);
      zi[j] = -std::sin(t0 * logs[j]);
    }
    KahanSum acc;
    for (std::size_t k = k0; k < k1; ++k) {
      double sr = 0.0;
      double si = 0.0;
#pragma omp simd reduction(+ : sr, si)
      for (std::size_t j = 0; j < terms; ++j) {
        sr += amp[j] * zr[j];
        si += amp[j] * zi[j];
      }
#pragma omp simd
      for (std::size_t j = 0; j < terms; ++j) {
        const double r = zr[j] * rot_re[j] - zi[j] * rot_im[j];
        const double i = zr[j] * rot_im[j] + zi[j] * rot_re[j];
        zr[j] = r;
        zi[j] = i;
      }
      const double weight = (k == 0 || k == intervals) ? 0.5 : 1.0;
      acc.add(weight * (sr * sr + si * si));
    }
    panel_sum[p] = acc.sum;
  });

  MeanSquare out;
  out.integral = tree_sum(panel_sum) * h;
  out.law = 2.0 * T * poly.squared_norm();
  out.residual = out.integral - out.law;
  out.step = h;
  out.nodes = nodes;
  return out;
}

}  // namespace shortsum
