#include <random>

#include "doctest.h"
#include "modelap/errors.hpp"
#include "modelap/quad.hpp"
#include "oracles.hpp"

using namespace modelap;

TEST_CASE("rational arithmetic reduces") {
  const QuadNumber a = QuadNumber::rational(6, 4);
  CHECK(a.p() == 3);
  CHECK(a.d() == 2);
  CHECK(a + QuadNumber::rational(1, 2) == QuadNumber(2));
  CHECK(a * 2 == QuadNumber(3));
  CHECK((a / 3) == QuadNumber::rational(1, 2));
}

TEST_CASE("sqrt5 products") {
  const QuadNumber s = QuadNumber::sqrt_disc(5);
  CHECK(s * s == QuadNumber(5));
  const QuadNumber tau = QuadRing::golden().omega();
  CHECK(tau * tau == tau + QuadNumber(1));
  CHECK(tau.to_double() == doctest::Approx(oracle::tau()));
}

TEST_CASE("exact comparison agrees with the integer oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> dist(-1'000'000, 1'000'000);
  const QuadRing g = QuadRing::golden();
  for (int i = 0; i < 5000; ++i) {
    const i64 m = dist(rng), n = dist(rng);
    CHECK(g.phys(QuadElem{m, n}).sign() == oracle::sign_phys(m, n));
    CHECK(g.star(QuadElem{m, n}).sign() == oracle::sign_star(m, n));
  }
}

TEST_CASE("comparison near zero") {
  // F_{k+1} - F_k tau is tiny and alternates in sign.
  const QuadRing g = QuadRing::golden();
  i64 a = 1, b = 1;
  for (int k = 0; k < 80; ++k) {
    const QuadElem x{b, -a};
    CHECK(g.phys(x).sign() == oracle::sign_phys(x.m, x.n));
    const i64 c = a + b;
    a = b;
    b = c;
    if (b > 2'000'000'000'000'000'000LL / 3) break;
  }
}

TEST_CASE("star map is additive and commutes with scaling") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<i64> dist(-10'000, 10'000);
  const QuadRing g = QuadRing::golden();
  for (int i = 0; i < 2000; ++i) {
    const QuadElem x{dist(rng), dist(rng)}, y{dist(rng), dist(rng)};
    const i64 k = dist(rng);
    CHECK(g.star(x + y) == g.star(x) + g.star(y));
    CHECK(g.star(k * x) == g.star(x) * k);
    CHECK(g.phys(x - y) == g.phys(x) - g.phys(y));
  }
}

TEST_CASE("star examples") {
  const QuadRing g = QuadRing::golden();
  CHECK(g.star(QuadElem{2, 3}) == QuadNumber(2) + g.omega_conj() * 3);
  CHECK(g.star(QuadElem{0, 0}) == QuadNumber(0));
  CHECK(g.star(QuadElem{2, 3}).to_double() == doctest::Approx(0.1459).epsilon(1e-3));
  CHECK(g.phys(QuadElem{2, 3}).to_double() == doctest::Approx(6.854).epsilon(1e-3));
}

TEST_CASE("floor and ceil are exact") {
  const QuadRing g = QuadRing::golden();
  CHECK(floor_to_int(g.omega()) == 1);
  CHECK(ceil_to_int(g.omega()) == 2);
  CHECK(floor_to_int(QuadNumber(-3)) == -3);
  CHECK(ceil_to_int(QuadNumber(-3)) == -3);
  CHECK(floor_to_int(QuadNumber::rational(-7, 2)) == -4);
  for (i64 n = 1; n < 3000; n += 7) {
    const QuadNumber v = g.omega() * n;
    const double f = std::floor(n * oracle::tau());
    CHECK(floor_to_int(v) == static_cast<i64>(f));
  }
}

TEST_CASE("decimal parsing") {
  CHECK(QuadNumber::parse_decimal("-0.3") == QuadNumber::rational(-3, 10));
  CHECK(QuadNumber::parse_decimal("12") == QuadNumber(12));
  CHECK(QuadNumber::parse_decimal("1.25e-2") == QuadNumber::rational(1, 80));
  CHECK_THROWS(QuadNumber::parse_decimal("abc"));
}

TEST_CASE("ring from_phys and other discriminants") {
  const QuadRing g = QuadRing::golden();
  CHECK(g.from_phys(g.phys(QuadElem{4, -7})) == QuadElem{4, -7});
  CHECK_THROWS(g.from_phys(QuadNumber::rational(1, 2)));
  const QuadRing silver{2, 1};  // w = 1 + sqrt2
  CHECK(silver.discriminant() == 8);
  CHECK(silver.omega().to_double() == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK_THROWS_AS(QuadRing({2, -1}).validate(), PreconditionError);
}

TEST_CASE("overflow is reported") {
  const QuadNumber big(std::numeric_limits<i64>::max() / 2);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}
