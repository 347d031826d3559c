#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "shortsum/mfunc.hpp"
#include "shortsum/parallel.hpp"
#include "shortsum/s_system.hpp"

namespace shortsum {

// ---------------------------------------------------------------------------
// Dirichlet polynomials
// ---------------------------------------------------------------------------

inline constexpr double kMaxCoefficient = 1e6;

// A(s) = sum_{n_start <= n <= n_end} a_n n^{-s} with dense coefficients.
class DirichletPolynomial {
 public:
  // Throws ValidationError for n_start < 1, an empty coefficient list, or
  // any |a_n| > 1e6 (including non-finite values).
  DirichletPolynomial(std::uint64_t n_start, std::vector<double> coefficients);

  std::uint64_t n_start() const noexcept { return n_start_; }
  std::uint64_t n_end() const noexcept { return n_start_ + coefficients_.size() - 1; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }

  // a_n, or 0 outside the support.
  double coefficient(std::uint64_t n) const noexcept;

  // sum |a_n|^2
  double squared_norm() const noexcept;

 private:
  std::uint64_t n_start_;
  std::vector<double> coefficients_;
};

// Coefficients f(n) on [X, 2X] (f(n)/n when normalize is set), zeroed outside
// the S-set when restricted.
DirichletPolynomial build_poly(const MultiplicativeFunction& f, std::uint64_t X,
                               const std::optional<Restriction>& restrict, bool normalize);

// a_p = f(p) on primes p in [P, Q]; zero elsewhere in that range.
DirichletPolynomial build_prime_window(const MultiplicativeFunction& f, std::uint64_t P,
                                       std::uint64_t Q);

// sum a_n n^{-sigma} (cos(t ln n) - i sin(t ln n)), Kahan-compensated.
std::complex<double> eval_at(const DirichletPolynomial& poly, double sigma, double t);

// F(sigma + it) = sum_{x <= n <= 2x} f(n) n^{-sigma - it}, streamed segment by
// segment (no dense coefficient vector) with a fixed reduction order.
std::complex<double> dyadic_sum(const MultiplicativeFunction& f, std::uint64_t x, double sigma,
                                double t, const ExecPolicy& policy = {});

struct MeanSquare {
  double integral = 0.0;  // composite trapezoid of |A(it)|^2 over [-T, T]
  double law = 0.0;       // 2T * sum |a_n|^2
  double residual = 0.0;  // integral - law
  double step = 0.0;      // node spacing actually used (divides 2T exactly)
  std::size_t nodes = 0;
};

// Throws ResolutionError when step > 1 / (4 ln n_end), UsageError for
// non-positive T or step. Panels are reduced in a fixed pairwise tree so the
// result does not depend on the thread count.
MeanSquare mean_square(const DirichletPolynomial& poly, double T, double step,
                       const ExecPolicy& policy = {});

// ---------------------------------------------------------------------------
// Pretentious distance
// ---------------------------------------------------------------------------

// g(p) = p^{i t0}.
struct Archimedean {
  double t0 = 0.0;
};

using DistanceTarget = std::variant<MultiplicativeFunction, Archimedean>;

struct DistanceResult {
  double value = 0.0;  // D(f, g; x), not squared
  std::uint64_t prime_cutoff = 0;
};

// D(f, g; x)^2 = sum_{p <= x} (1 - Re f(p) conj(g(p))) / p.
DistanceResult halasz_distance(const MultiplicativeFunction& f, const DistanceTarget& g,
                               std::uint64_t x);

struct MinDistance {
  double M = 0.0;       // min over |t0| <= T0 of D(f, p^{i(t + t0)}; x)^2
  double argmin = 0.0;  // minimizing t0
};

// Uniform grid of `grid` points on [-T0, T0] followed by one golden-section
// refinement around the best grid point. Approximates the minimum from above.
MinDistance min_distance(const MultiplicativeFunction& f, double t, double T0, std::uint64_t x,
                         unsigned grid);

// M e^{-M} + 1/T0 + log log x / log x  (implied constant 1).
double halasz_bound_shape(double M, double x, double T0);

struct HalaszShape {
  MinDistance minimum;
  double value = 0.0;
};

HalaszShape halasz_bound_shape(const MultiplicativeFunction& f, std::uint64_t x, double T0,
                               double t, unsigned grid = 2001);

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

// Dense row-major complex matrix (x_{mn}).
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::complex<double>& operator()(std::size_t m, std::size_t n) { return data_[m * cols_ + n]; }
  const std::complex<double>& operator()(std::size_t m, std::size_t n) const {
    return data_[m * cols_ + n];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::complex<double>> data_;
};

struct DualityResult {
  double forward = 0.0;   // max_{|a|=1} sum_m |sum_n a_n x_mn|^2
  double backward = 0.0;  // max_{|b|=1} sum_n |sum_m b_m x_mn|^2
};

// Both extremal constants by power iteration (at most `trials` iterations
// each, stopping once the Rayleigh quotient settles). Dimensions <= 64.
DualityResult duality_check(const ComplexMatrix& x, unsigned trials);

// ---------------------------------------------------------------------------
// Ramaré-type decomposition
// ---------------------------------------------------------------------------

// For a on [X, 2X] and primes in [P, Q], with w(m) = 1 / (omega(m; P, Q) + 1):
//   lhs        = sum_n a_n n^{-s}
//   main       = sum_{P<=p<=Q} sum_{X/p <= m <= 2X/p} a_{pm} (pm)^{-s} w(m)
//   coprime    = sum over n with no prime factor in [P, Q]
//   residual   = lhs - main - coprime
//   correction = per-n deficiency a_n n^{-s} (1 - sum_{p | n} w(n/p)) summed
//                over n divisible by p^2 for some p in [P, Q]
//   squarefree_residual = residual restricted to n not divisible by any p^2
// The identity makes squarefree_residual vanish and residual == correction.
struct RamareDecomposition {
  double lhs = 0.0;
  double main = 0.0;
  double correction = 0.0;
  double coprime = 0.0;
  double residual = 0.0;
  double squarefree_residual = 0.0;
};

// s must be 0 or 1. Requires 2 <= P <= Q <= 2X and a.size() == X + 1.
RamareDecomposition ramare_decompose(std::span<const double> a, std::uint64_t X,
                                     std::uint64_t P, std::uint64_t Q, int s = 0);

// Same at s = 0 in exact integer arithmetic: every field is a numerator over
// the shared denominator lcm(1, ..., K + 1), K = max possible omega.
struct ExactRamareDecomposition {
  std::int64_t denominator = 1;
  std::int64_t lhs = 0;
  std::int64_t main = 0;
  std::int64_t correction = 0;
  std::int64_t coprime = 0;
  std::int64_t residual = 0;
  std::int64_t squarefree_residual = 0;
};

ExactRamareDecomposition ramare_decompose_exact(std::span<const std::int64_t> a, std::uint64_t X,
                                                std::uint64_t P, std::uint64_t Q);

}  // namespace shortsum
