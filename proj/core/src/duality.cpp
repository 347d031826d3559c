#include <cmath>

#include "shortsum/analytic.hpp"
#include "shortsum/error.hpp"
#include "shortsum/rng.hpp"

namespace shortsum {

namespace {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

double norm_sq(const cvec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// Largest eigenvalue of op^* op where apply(v) = op v and adjoint(w) = op^* w.
template <typename Apply, typename Adjoint>
double top_gram_eigenvalue(std::size_t dim, unsigned max_iter, Apply apply, Adjoint adjoint) {
  SplitMix64 rng(0x5EED5EEDULL + dim);
  cvec v(dim);
  for (auto& z : v) z = cplx(1.0 + 0.25 * rng.unit(), 0.25 * rng.unit());
  double scale = std::sqrt(norm_sq(v));
  for (auto& z : v) z /= scale;

  double lambda = norm_sq(apply(v));
  for (unsigned iter = 0; iter < max_iter; ++iter) {
    cvec w = adjoint(apply(v));
    // Residual of the Rayleigh pair (lambda, v).
    double resid = 0.0;
    for (std::size_t i = 0; i < dim; ++i) resid += std::norm(w[i] - lambda * v[i]);
    const double wn = std::sqrt(norm_sq(w));
    if (wn == 0.0) return 0.0;
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / wn;
    lambda = norm_sq(apply(v));
    if (std::sqrt(resid) <= 1e-13 * lambda) break;
  }
  return lambda;
}

}  // namespace

DualityResult duality_check(const ComplexMatrix& x, unsigned trials) {
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  if (rows == 0 || cols == 0 || rows > 64 || cols > 64) {
    throw UsageError("duality_check: dimensions must lie in [1, 64]");
  }
  if (trials == 0) throw UsageError("duality_check: trials must be >= 1");

  // Forward operator a -> (sum_n a_n x_mn)_m, i.e. X a.
  auto forward = [&](const cvec& a) {
    cvec out(rows);
    for (std::size_t m = 0; m < rows; ++m) {
      for (std::size_t n = 0; n < cols; ++n) out[m] += x(m, n) * a[n];
    }
    return out;
  };
  auto forward_adj = [&](const cvec& b) {
    cvec out(cols);
    for (std::size_t n = 0; n < cols; ++n) {
      for (std::size_t m = 0; m < rows; ++m) out[n] += std::conj(x(m, n)) * b[m];
    }
    return out;
  };
  // Backward operator b -> (sum_m b_m x_mn)_n, i.e. X^T b (no conjugation).
  auto backward = [&](const cvec& b) {
    cvec out(cols);
    for (std::size_t n = 0; n < cols; ++n) {
      for (std::size_t m = 0; m < rows; ++m) out[n] += x(m, n) * b[m];
    }
    return out;
  };
  auto backward_adj = [&](const cvec& a) {
    cvec out(rows);
    for (std::size_t m = 0; m < rows; ++m) {
      for (std::size_t n = 0; n < cols; ++n) out[m] += std::conj(x(m, n)) * a[n];
    }
    return out;
  };

  DualityResult r;
  r.forward = top_gram_eigenvalue(cols, trials, forward, forward_adj);
  r.backward = top_gram_eigenvalue(rows, trials, backward, backward_adj);
  return r;
}

}  // namespace shortsum
