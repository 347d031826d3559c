#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shortsum/dickman.hpp"
#include "shortsum/error.hpp"

using namespace shortsum;

namespace {
const DickmanTable& table() {
  static const DickmanTable t;
  return t;
}
}  // namespace

TEST_CASE("rho on [0, 1] and at small integers") {
  CHECK(table().rho(0.0) == 1.0);
  CHECK(table().rho(0.7) == 1.0);
  CHECK(table().rho(1.0) == 1.0);
  CHECK(std::abs(table().rho(2.0) - (1.0 - std::log(2.0))) < 1e-12);
  CHECK(std::abs(table().rho(1.5) - (1.0 - std::log(1.5))) < 1e-12);
  CHECK(std::abs(table().rho(3.0) - oracle::rho3()) < 1e-10);
  CHECK(std::abs(oracle::rho3() - 0.0486083882911316) < 1e-15);
}

TEST_CASE("rho off the grid interpolates inside the panel") {
  // On [1, 2] rho = 1 - ln u exactly.
  for (double u : {1.0001, 1.2345678, 1.999999}) {
    CHECK(std::abs(table().rho(u) - (1.0 - std::log(u))) < 1e-12);
  }
}

TEST_CASE("rho is positive and decreasing") {
  const auto v = table().values();
  const std::size_t first = static_cast<std::size_t>(1.0 / table().step());
  for (std::size_t i = first + 1; i < v.size(); ++i) {
    REQUIRE(v[i] < v[i - 1]);
    REQUIRE(v[i] > 0.0);
  }
  CHECK_FALSE(table().clamped());
}

TEST_CASE("rho range and construction errors") {
  CHECK_THROWS_AS(table().rho(20.5), RangeError);
  CHECK_THROWS_AS(table().rho(-0.1), RangeError);
  CHECK_THROWS_AS(DickmanTable(20.0, 0.3), ValidationError);
  CHECK_THROWS_AS(DickmanTable(20.5, 0x1p-10), ValidationError);
}

TEST_CASE("deep tail clamps to zero with a flag") {
  const DickmanTable deep(30.0, 0x1p-8);
  CHECK(deep.clamped());
  CHECK(deep.rho(30.0) == 0.0);
  CHECK(std::isinf(smooth_interval_constant(1.0 / 29.0, deep)));
}

TEST_CASE("smooth counts") {
  CHECK(smooth_count(100, 10) == 46);
  CHECK(smooth_count(5000, 5000) == 5000);
  CHECK(smooth_count(10, 1) == 1);
  CHECK(smooth_count(0, 5) == 0);
}

TEST_CASE("smooth_count agrees with direct filtering up to 1e5") {
  const std::uint64_t N = 100000;
  std::vector<std::uint64_t> largest(N + 1, 1);
  for (auto p : oracle::simple_primes(N)) {
    for (std::uint64_t m = p; m <= N; m += p) largest[m] = p;
  }
  for (std::uint64_t y : std::initializer_list<std::uint64_t>{2, 7, 100, 316, 5000}) {
    for (std::uint64_t x : std::initializer_list<std::uint64_t>{1, 99, 1000, 65536, 65537, N}) {
      std::uint64_t c = 0;
      for (std::uint64_t n = 1; n <= x; ++n) c += largest[n] <= y;
      CHECK(smooth_count(x, y) == c);
    }
  }
}

TEST_CASE("smooth interval constant") {
  CHECK(smooth_interval_constant(1.0, table()) == 1.0);
  CHECK(smooth_interval_constant(0.5, table()) ==
        doctest::Approx(std::pow(1.0 - std::log(2.0), -13.0)).epsilon(1e-10));
  CHECK(smooth_interval_constant(1.0 / 3.0, table()) ==
        doctest::Approx(std::pow(oracle::rho3(), -13.0)).epsilon(1e-8));
  CHECK_THROWS_AS(smooth_interval_constant(0.0, table()), RangeError);
  CHECK_THROWS_AS(smooth_interval_constant(0.01, table()), RangeError);
}
