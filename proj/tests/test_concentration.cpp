#include "tilted/concentration.hpp"

#include "tilted/chains.hpp"
#include "tilted/search.hpp"

#include "doctest.h"
#include "oracle.hpp"

#include <cmath>

using namespace tilted;

TEST_CASE("band membership") {
  SUBCASE("n=4: no subset ever leaves the band") {
    const auto spec = BandSpec::natural(4);
    for (std::uint64_t m = 0; m < 16; ++m)
      CHECK_FALSE(in_band_family(Subset(m, 4), spec));
  }
  SUBCASE("the full set leaves the band at n=50") {
    const auto spec = BandSpec::natural(50);
    CHECK(in_band_family(Subset(prefix_mask(50), 50), spec));
  }
  SUBCASE("alternating set stays inside for n <= 60") {
    for (int n : {10, 31, 60}) {
      std::uint64_t alternating = 0;
      for (int i = 1; i <= n; i += 2) alternating |= 1ull << (i - 1);
      CHECK_FALSE(in_band_family(Subset(alternating, n), BandSpec::natural(n)));
    }
  }
  CHECK_THROWS_AS(BandSpec::natural(1), std::invalid_argument);
  CHECK_THROWS_AS(BandSpec::with_threshold(5, 0.0), std::invalid_argument);
}

TEST_CASE("count_band_family: DP equals brute force, n <= 12") {
  for (int n = 2; n <= 12; ++n) {
    const auto spec = BandSpec::natural(n);
    const std::uint64_t dp = count_band_family(spec);
    const std::uint64_t brute = testoracle::band_count_brute(
        n, std::sqrt(static_cast<long double>(n) * std::log(static_cast<long double>(n))));
    CHECK(dp == brute);
  }
  // custom threshold exercises the non-natural comparison path
  const auto tight = BandSpec::with_threshold(9, 1.25);
  CHECK(count_band_family(tight) == testoracle::band_count_brute(9, 1.25L));
  CHECK(count_band_family(BandSpec::natural(4)) == 0);
}

TEST_CASE("per-x violator counts match enumeration, n <= 10") {
  for (int n : {6, 9, 10}) {
    const auto spec = BandSpec::with_threshold(n, 0.9);  // small T so counts are nonzero
    for (int x = 1; x <= n; ++x) {
      std::uint64_t brute = 0;
      for (std::uint64_t m = 0; m < (1ull << n); ++m) {
        const Subset g(m, n);
        if (std::fabs(g.count_in_prefix(x) - x / 2.0L) > 0.9L) ++brute;
      }
      CHECK(band_violators_at(spec, x) == brute);
    }
  }
}

TEST_CASE("chernoff_rhs closed forms") {
  const int n = 50;
  const double t = std::sqrt(n * std::log(static_cast<double>(n)));
  CHECK(chernoff_rhs(n, n, t) == doctest::Approx(2.0 / (n * static_cast<double>(n))).epsilon(1e-12));
  CHECK(chernoff_rhs(n, 17, 0.0) == 2.0);
  CHECK(chernoff_rhs(n, n / 2, t) ==
        doctest::Approx(2.0 * std::pow(static_cast<double>(n), -4)).epsilon(1e-12));
  CHECK_THROWS_AS(chernoff_rhs(10, 0, 1.0), std::invalid_argument);
}

TEST_CASE("band size stays under 2*2^n/n for n in [10,60]") {
  for (int n = 10; n <= 60; ++n) {
    const BigInt size = count_band_family(BandSpec::natural(n));
    CHECK(size * n <= BigInt(2) * (BigInt(1) << n));
  }
}

TEST_CASE("cut point window checks") {
  SUBCASE("small n: the window covers the whole range") {
    const int n = 30;
    const auto spec = BandSpec::natural(n);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const Subset f = sample_outside_band(rng, spec);
      const auto report = cut_point_window_check(f, 1, 1);
      CHECK(report.all_within);
      CHECK(report.radius > n);  // 8 sqrt(30 ln 30) ~ 80
    }
  }
  SUBCASE("the empty set is a band member at n=20 and gets rejected") {
    CHECK(in_band_family(Subset(0, 20), BandSpec::natural(20)));
    CHECK_THROWS_AS(cut_point_window_check(Subset(0, 20), 1, 1),
                    std::invalid_argument);
  }
  SUBCASE("p > q is rejected") {
    CHECK_THROWS_AS(cut_point_window_check(Subset(1, 12), 2, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("explicit upper bound") {
  SUBCASE("window saturation at small n: bound is |G| plus the full fx sum") {
    const int n = 6;
    BigInt manual = count_band_family(BandSpec::natural(n));
    for (int x = 0; x <= n; ++x) manual += fx_bound(x, n, 2);
    CHECK(explicit_upper_bound(n, 1, 2) == manual);
    const auto window = concentration_window(n, 1, 2);
    CHECK(window.lo == 0);
    CHECK(window.hi == n);
  }
  SUBCASE("p or q zero degenerates to the Sperner value") {
    CHECK(explicit_upper_bound(8, 1, 0) == binomial(8, 4));
    CHECK(explicit_upper_bound(8, 0, 1) == binomial(8, 4));
    CHECK(explicit_upper_bound(8, 0, 0) == binomial(8, 4));
  }
  SUBCASE("scaling invariance via normalization") {
    CHECK(explicit_upper_bound(7, 1, 2) == explicit_upper_bound(7, 2, 4));
  }
  SUBCASE("bound dominates the exact maximum at tiny n") {
    for (int n = 2; n <= 5; ++n) {
      const auto res = max_family_exact(n, TiltParams{1, 2, true},
                                        std::chrono::milliseconds(5000), 1);
      REQUIRE(res.optimal);
      CHECK(explicit_upper_bound(n, 1, 2) >= BigInt(res.size));
    }
  }
  CHECK_THROWS_AS(explicit_upper_bound(1, 1, 2), std::invalid_argument);
}
