#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shortsum/parallel.hpp"

namespace shortsum {

inline constexpr double kDickmanDefaultStep = 0x1p-10;
inline constexpr double kDickmanDefaultUMax = 20.0;
// Grid values below this are stored as 0 and flagged.
inline constexpr double kDickmanFloor = 1e-30;

// Dickman-de Bruijn rho on a uniform grid over [0, u_max], from
//   rho(u) = 1 on [0, 1],   u rho(u) = int_{u-1}^{u} rho(t) dt.
// The averaged form has no cancellation, so relative accuracy holds even
// where rho is tiny. Integrals are split at the integer inside the window
// and use composite Simpson closed with the 3/8 rule or a four-point end
// formula, so no rule straddles an integer, where rho is not smooth.
class DickmanTable {
 public:
  // 1/step must be an even integer; u_max must be a positive integer
  // multiple of step. Throws ValidationError otherwise.
  explicit DickmanTable(double u_max = kDickmanDefaultUMax, double step = kDickmanDefaultStep);

  double u_max() const noexcept { return u_max_; }
  double step() const noexcept { return step_; }
  std::span<const double> values() const noexcept { return values_; }
  bool clamped() const noexcept { return clamped_; }

  // rho(u) by cubic interpolation inside the unit panel containing u.
  // Throws RangeError outside [0, u_max].
  double rho(double u) const;

 private:
  double u_max_;
  double step_;
  std::size_t per_unit_;
  std::vector<double> values_;
  bool clamped_ = false;
};

double rho(double u, const DickmanTable& table);

// Psi(x, y) = #{1 <= n <= x : every prime factor of n is <= y}. y < 2 counts
// only n = 1.
std::uint64_t smooth_count(std::uint64_t x, std::uint64_t y, const ExecPolicy& policy = {});

// rho(1/eps)^{-13}; +infinity once rho has been clamped to 0.
double smooth_interval_constant(double eps, const DickmanTable& table);

}  // namespace shortsum
