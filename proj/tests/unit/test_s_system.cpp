#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shortsum/error.hpp"
#include "shortsum/s_system.hpp"

using namespace shortsum;

TEST_CASE("canonical system with well separated intervals validates") {
  const auto sys = IntervalSystem::canonical(0.12, 5000, 1.3e6, 3);
  CHECK(sys.size() == 3);
  CHECK(validate(sys).empty());
  // log P_2 = 2^8 * logQ1 * logP1, log Q_2 = 2^10 * logQ1^2
  CHECK(sys[1].log_lo == doctest::Approx(256.0 * 1.3e6 * 5000));
  CHECK(sys[1].log_hi == doctest::Approx(1024.0 * 1.3e6 * 1.3e6));
}

TEST_CASE("crowded system reports exactly the far condition at j = 2") {
  const auto sys = IntervalSystem::canonical(0.12, 10, 20, 2);
  const auto v = validate(sys);
  REQUIRE(v.size() == 1);
  CHECK(v[0].j == 2);
  CHECK(v[0].condition == "not_too_far");
  CHECK(v[0].lhs == doctest::Approx(std::log(sys[1].log_hi) / (10.0 - 1.0)));
  CHECK(v[0].rhs == doctest::Approx(0.12 / 16.0));
}

TEST_CASE("parse forms") {
  const auto a = IntervalSystem::parse("auto:0.12,5000,1.3e6,3");
  CHECK(a == IntervalSystem::canonical(0.12, 5000, 1.3e6, 3));
  const auto e = IntervalSystem::parse("explicit:2-3,5-7", 0.1);
  CHECK(e.is_explicit());
  CHECK(e.to_string() == "explicit:2-3,5-7");
  CHECK(IntervalSystem::parse(e.to_string(), 0.1) == e);
  CHECK(e[1].int_lo == 5);
  CHECK(e[1].int_hi == 7);
  for (const char* bad : {"", "auto:", "auto:0.1,1,2", "explicit:3-2", "explicit:2-5,4-9",
                          "explicit:a-b", "weird:1"}) {
    CHECK_THROWS_AS(IntervalSystem::parse(bad), ValidationError);
  }
  CHECK_THROWS_AS(IntervalSystem::parse("explicit:2-3", 0.2), ValidationError);
  CHECK_THROWS_AS(IntervalSystem::canonical(0.1, 5, 6, 61), CapacityError);
}

TEST_CASE("bind_to_X") {
  const auto e = IntervalSystem::parse("explicit:2-3,5-7");
  CHECK(bind_to_X(e, 16) == 1);
  CHECK(bind_to_X(e, 100) == 2);
  CHECK(bind_to_X(IntervalSystem::canonical(0.12, 5000, 1.3e6, 3), 1'000'000'000) == 0);
  CHECK_THROWS_AS(bind_to_X(e, 15), UsageError);
}

TEST_CASE("membership and masks") {
  const auto e = IntervalSystem::parse("explicit:2-3,5-7");
  const FactorTable t = sieve_factorize({1, 100});
  CHECK(membership(t.of(10), e, 2));
  CHECK_FALSE(membership(t.of(25), e, 2));
  CHECK(membership(t.of(25), e, 0));
  CHECK(interval_mask(t.of(25), e, 2) == 0b10);
  CHECK(interval_mask(t.of(42), e, 2) == 0b11);
  CHECK(nonmember_density_bound(e, 2) == doctest::Approx(std::log(2.0) / std::log(3.0) +
                                                         std::log(5.0) / std::log(7.0)));
}

TEST_CASE("inclusion-exclusion is exact on integers") {
  const auto e = IntervalSystem::parse("explicit:2-3,5-7");
  const std::uint64_t X = 100;
  std::vector<std::int64_t> a(X + 1);
  for (std::size_t i = 0; i <= X; ++i) a[i] = static_cast<std::int64_t>((i * 7) % 11) - 5;
  const auto r = inclusion_exclusion_check(std::span<const std::int64_t>(a), X, e, 2);
  std::int64_t direct = 0;
  for (std::uint64_t n = X; n <= 2 * X; ++n) {
    bool hit1 = false, hit2 = false;
    for (const auto& [p, k] : oracle::trial_factor(n)) {
      hit1 = hit1 || (p >= 2 && p <= 3);
      hit2 = hit2 || (p >= 5 && p <= 7);
    }
    if (hit1 && hit2) direct += a[n - X];
  }
  CHECK(r.lhs == direct);
  CHECK(r.rhs == direct);
  CHECK(r.difference == 0);

  std::vector<double> ad(a.begin(), a.end());
  const auto rd = inclusion_exclusion_check(std::span<const double>(ad), X, e, 2);
  CHECK(rd.difference == 0.0);
  CHECK_THROWS_AS(inclusion_exclusion_check(std::span<const double>(ad), X + 1, e, 2), UsageError);
}
