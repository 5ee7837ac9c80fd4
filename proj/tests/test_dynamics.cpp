#include "doctest.h"

#include "sternlab/dynamics.hpp"
#include "sternlab/stern.hpp"

using namespace sternlab;

namespace {
BigRational frac(long num, long den) {
  BigRational r(num, den);
  r.canonicalize();
  return r;
}
}  // namespace

TEST_CASE("map evaluation on exact rationals") {
  CHECK(eval_map(MapTag::BinaryJump, frac(3, 8)) == frac(1, 2));
  CHECK(eval_map(MapTag::Gauss, frac(2, 5)) == frac(1, 2));
  CHECK(eval_map(MapTag::Farey, frac(2, 5)) == frac(2, 3));
  CHECK(eval_map(MapTag::Binary, frac(3, 4)) == frac(1, 2));
  for (const MapTag tag :
       {MapTag::BinaryJump, MapTag::Farey, MapTag::Gauss}) {
    CHECK(eval_map(tag, 0) == 0);
    CHECK(eval_map(tag, 1) == 0);
  }
}

TEST_CASE("conjugacy through the box function") {
  CHECK(conjugacy_check(1));
  CHECK(conjugacy_check(12));
  CHECK_FALSE(conjugacy_check(6, /*negative_control=*/true));
}

TEST_CASE("jump orbits") {
  SUBCASE("start at 1 has empty orbit") {
    const OrbitRecord rec = orbit({pow2(5), 5});
    CHECK(rec.K == 0);
    CHECK(rec.jump_orbit.size() == 1);
  }
  SUBCASE("slowest orbit: the alternating word attains K = N") {
    // 683 = 1010101011 in binary; its image under the box function is the
    // ratio of consecutive Fibonacci numbers (all partial quotients 1).
    CHECK(orbit({683, 10}).K == 10);
    for (unsigned long m = 1; m <= (1u << 10); ++m)
      CHECK(orbit({m, 10}).K <= 10);
  }
  SUBCASE("worked example at 3/8") {
    const OrbitRecord rec = orbit({3, 3});
    REQUIRE(rec.K == 2);
    CHECK(rec.gauss_orbit[0] == frac(2, 5));
    CHECK(rec.gauss_orbit[1] == frac(1, 2));
    CHECK(rec.jump_orbit.back().to_rational() == 1);
  }
  SUBCASE("m = 0 is rejected") {
    CHECK_THROWS_AS(orbit({0, 4}), std::domain_error);
  }
  SUBCASE("orbit values lie in (0, 1]") {
    for (unsigned long m = 1; m <= (1u << 8); ++m) {
      const OrbitRecord rec = orbit({m, 8});
      for (const BigRational& v : rec.gauss_orbit) {
        CHECK(v > 0);
        CHECK(v <= 1);
      }
    }
  }
}

TEST_CASE("jump map is the induced first-return composition") {
  // On each dyadic point: iterate the plain binary map until the value
  // enters [1/2, 1], apply it once more, and compare with the jump map.
  for (unsigned long m = 1; m < (1u << 10); ++m) {
    const BigRational x = DyadicPoint{m, 10}.to_rational();
    BigRational y = x;
    while (y < frac(1, 2) || y > 1) y = eval_map(MapTag::Binary, y);
    CHECK(eval_map(MapTag::Binary, y) == eval_map(MapTag::BinaryJump, x));
  }
}

TEST_CASE("K-counts are binomial") {
  CHECK(k_histogram(1) == std::vector<std::uint64_t>{1, 1});
  CHECK(k_histogram(3) == std::vector<std::uint64_t>{1, 3, 3, 1});
  const auto h16 = k_histogram(16);
  BigNat binom;
  for (unsigned r = 0; r <= 16; ++r) {
    mpz_bin_uiui(binom.get_mpz_t(), 16, r);
    CHECK(h16[r] == binom.get_ui());
  }
}

TEST_CASE("Gauss-product reconstruction of the sequence") {
  CHECK(stern_via_gauss_product({pow2(6), 6}) == 1);
  CHECK(stern_via_gauss_product({3, 3}) == 5);
  const auto row = row_values(12);
  for (unsigned long m = 1; m <= (1u << 12); ++m) {
    const BigNat expect =
        (m < row.size()) ? BigNat(row[m]) : BigNat(1);  // s(2^13) = 1
    CHECK(stern_via_gauss_product({m, 12}) == expect);
  }
}

TEST_CASE("derivative cocycle: squared value equals orbit derivative") {
  for (unsigned long m = 1; m <= (1u << 10); ++m) {
    const OrbitRecord rec = orbit({m, 10});
    BigRational deriv = 1;  // |(G^K)'| = prod 1/x_i^2 over the orbit
    for (const BigRational& v : rec.gauss_orbit) deriv /= v * v;
    const BigNat s = stern(pow2(10) + m);
    CHECK(deriv == BigRational(s * s));
  }
}
