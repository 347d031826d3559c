#include "shortsum/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shortsum/error.hpp"
#include "shortsum/sieve.hpp"

namespace shortsum {

DickmanTable::DickmanTable(double u_max, double step) : u_max_(u_max), step_(step) {
  const double per_unit = 1.0 / step;
  if (!(step > 0.0) || per_unit != std::floor(per_unit) ||
      static_cast<std::uint64_t>(per_unit) % 2 != 0 || per_unit < 4) {
    throw ValidationError("DickmanTable: 1/step must be an even integer >= 4");
  }
  if (!(u_max >= 1.0) || u_max != std::floor(u_max) || u_max > 1000.0) {
    throw ValidationError("DickmanTable: u_max must be an integer in [1, 1000]");
  }
  per_unit_ = static_cast<std::size_t>(per_unit);
  const std::size_t units = static_cast<std::size_t>(u_max);
  const std::size_t total = units * per_unit_ + 1;
  values_.assign(total, 1.0);

  const double h = step;
  const std::size_t N = per_unit_;
  // u rho(u) = int_{u-1}^{u} rho(t) dt, split at the integer a inside the
  // window: piece A = [u - 1, a] lies in the previous panel (known), piece B =
  // [a, u] in the current one, with rho(u) entering B implicitly.
  std::vector<double> suffix(N + 1, 0.0);  // Simpson over [a - n h, a], n even
  std::vector<double> prefix(N + 1, 0.0);  // Simpson over [a, a + n h], n even
  for (std::size_t a = 1; a < units; ++a) {
    const double* p = &values_[(a - 1) * N];  // p[k] = rho(a - 1 + k h)
    double* cur = &values_[a * N];            // cur[k] = rho(a + k h)
    for (std::size_t n = 2; n <= N; n += 2) {
      suffix[n] = suffix[n - 2] + h / 3.0 * (p[N - n] + 4.0 * p[N - n + 1] + p[N - n + 2]);
    }
    auto piece_a = [&](std::size_t n) {
      if (n == 0) return 0.0;
      if (n % 2 == 0) return suffix[n];
      if (n == 1) return h / 24.0 * (p[N - 3] - 5.0 * p[N - 2] + 19.0 * p[N - 1] + 9.0 * p[N]);
      return suffix[n - 3] +
             3.0 * h / 8.0 * (p[N - n] + 3.0 * p[N - n + 1] + 3.0 * p[N - n + 2] + p[N - n + 3]);
    };
    auto solve = [&](std::size_t r) {
      const double u = static_cast<double>(a) + static_cast<double>(r) * h;
      double known, w;
      if (r % 2 == 0) {
        known = prefix[r - 2] + h / 3.0 * (cur[r - 2] + 4.0 * cur[r - 1]);
        w = h / 3.0;
      } else if (r == 1) {
        // Four-point start formula; cur[2], cur[3] come from the sweep below.
        known = h / 24.0 * (9.0 * cur[0] - 5.0 * cur[2] + cur[3]);
        w = 19.0 * h / 24.0;
      } else {
        known = prefix[r - 3] + 3.0 * h / 8.0 * (cur[r - 3] + 3.0 * cur[r - 2] + 3.0 * cur[r - 1]);
        w = 3.0 * h / 8.0;
      }
      cur[r] = (piece_a(N - r) + known) / (u - w);
      if (r % 2 == 0) prefix[r] = known + w * cur[r];
    };
    cur[2] = cur[3] = cur[0];
    for (int sweep = 0; sweep < 6; ++sweep) {
      for (std::size_t r = 1; r <= 3; ++r) solve(r);
    }
    for (std::size_t r = 4; r <= N; ++r) solve(r);
  }
  for (auto& v : values_) {
    if (v < kDickmanFloor) {
      v = 0.0;
      clamped_ = true;
    }
  }
}

double DickmanTable::rho(double u) const {
  if (!(u >= 0.0) || u > u_max_) {
    throw RangeError("rho: u=" + std::to_string(u) + " outside [0, " + std::to_string(u_max_) +
                     "]");
  }
  if (u <= 1.0) return 1.0;
  const double scaled = u * static_cast<double>(per_unit_);
  const auto idx = static_cast<std::size_t>(std::floor(scaled));
  if (static_cast<double>(idx) == scaled) return values_[idx];
  // Panel containing u and a four-node stencil that stays inside it.
  const std::size_t panel = idx / per_unit_;
  const std::size_t lo_node = panel * per_unit_;
  const std::size_t hi_node = lo_node + per_unit_;
  std::size_t k0 = idx >= lo_node + 1 ? idx - 1 : lo_node;
  k0 = std::min(k0, hi_node - 3);
  const double x = scaled - static_cast<double>(k0);  // in node units
  const double y0 = values_[k0], y1 = values_[k0 + 1], y2 = values_[k0 + 2], y3 = values_[k0 + 3];
  // Lagrange basis on nodes 0, 1, 2, 3.
  const double l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  return y0 * l0 + y1 * l1 + y2 * l2 + y3 * l3;
}

double rho(double u, const DickmanTable& table) { return table.rho(u); }

std::uint64_t smooth_count(std::uint64_t x, std::uint64_t y, const ExecPolicy& policy) {
  if (x == 0) return 0;
  if (y < 2) return 1;
  if (y >= x) return x;
  std::vector<std::uint64_t> partial(segment_count(1, x), 0);
  for_each_segment(1, x, policy, [&](std::size_t s, const FactorTable& table) {
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

double smooth_interval_constant(double eps, const DickmanTable& table) {
  if (!(eps > 0.0 && eps <= 1.0)) throw RangeError("smooth_interval_constant: eps in (0, 1]");
  const double r = table.rho(1.0 / eps);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(r, -13.0);
}

}  // namespace shortsum
