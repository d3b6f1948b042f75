#include <cmath>
#include <memory>

#include "doctest.h"
#include "modelap/errors.hpp"
#include "modelap/model_set.hpp"
#include "modelap/vdw.hpp"
#include "oracles.hpp"

using namespace modelap;

namespace {

std::shared_ptr<const Cps> golden() { return std::make_shared<const Cps>(Cps::golden()); }
Region iv(double lo, double hi) { return Region::interval(rational_lower(lo), rational_upper(hi)); }

PointSet integers(i64 lo, i64 hi) {
  std::vector<QuadElem> v;
  for (i64 m = lo; m <= hi; ++m) v.push_back({m, 0});
  return PointSet::from_ring(golden(), v, Region::interval(QuadNumber(lo), QuadNumber(hi)));
}

}  // namespace

TEST_CASE("small vdW numbers match exhaustive enumeration") {
  CHECK(oracle::brute_force_vdw(1, 3, 12) == 3);
  CHECK(oracle::brute_force_vdw(2, 3, 12) == 9);
  CHECK(oracle::brute_force_vdw(2, 2, 12) == 3);
  CHECK(oracle::brute_force_vdw(3, 2, 8) == 4);
  CHECK(*vdw_number_oracle(1, 3).value == 3);
  CHECK(*vdw_number_oracle(2, 3).value == 9);
  CHECK(*vdw_number_oracle(2, 2).value == 3);
  CHECK(*vdw_number_oracle(3, 2).value == 4);
}

TEST_CASE("vdW witness colouring") {
  const auto res = vdw_number_oracle(2, 3);
  REQUIRE(res.witness.size() == 8);
  CHECK_FALSE(oracle::colouring_has_mono_ap(res.witness, 3));
  for (int c : res.witness) CHECK((c == 1 || c == 2));
}

TEST_CASE("larger vdW numbers and the guard") {
  CHECK(*vdw_number_oracle(2, 4).value == 35);
  CHECK(*vdw_number_oracle(3, 3).value == 27);
  CHECK_FALSE(vdw_number_oracle(2, 5).value.has_value());
  CHECK_THROWS_AS(vdw_number_oracle(2, 3, 41), GuardExceeded);
  CHECK_THROWS_AS(vdw_number_oracle(0, 3), PreconditionError);
  CHECK_THROWS_AS(vdw_number_oracle(2, 1), PreconditionError);
}

TEST_CASE("vdW numbers are monotone") {
  int prev_k = 0;
  for (int k = 2; k <= 4; ++k) {
    const int w = *vdw_number_oracle(2, k).value;
    CHECK(w > prev_k);
    prev_k = w;
  }
  int prev_r = 0;
  for (int r = 1; r <= 3; ++r) {
    const int w = *vdw_number_oracle(r, 3).value;
    CHECK(w > prev_r);
    prev_r = w;
  }
}

TEST_CASE("colourings") {
  const PointSet z = integers(0, 9);
  const Coloring alt = color(z, ColoringScheme::periodic, 2);
  CHECK(alt.colors == std::vector<int>{1, 2, 1, 2, 1, 2, 1, 2, 1, 2});
  const Coloring one = color(z, ColoringScheme::random, 1, 5);
  for (int c : one.colors) CHECK(c == 1);
  const Coloring a = color(z, ColoringScheme::random, 3, 42);
  const Coloring b = color(z, ColoringScheme::random, 3, 42);
  CHECK(a.colors == b.colors);
  CHECK_THROWS_AS(color(z, ColoringScheme::internal_threshold, 2), PreconditionError);

  const PointSet fib = enumerate_model_set(golden(), fibonacci_window(), iv(0, 50));
  const Coloring th = color(fib, ColoringScheme::internal_threshold, 2);
  const double mid = (-1 + (oracle::tau() - 1)) / 2;
  for (std::size_t i = 0; i < fib.size(); ++i) CHECK(th.colors[i] == (fib[i].internal[0] < mid ? 1 : 2));
}

TEST_CASE("monochromatic APs") {
  const PointSet fib = enumerate_model_set(golden(), fibonacci_window(), iv(-40, 40));
  const double r = 2 * 10 * oracle::tau() * oracle::tau() / 2;  // 2(2^2+1)tau^2 / 2, inside the enumerated range
  const auto ap = find_monochromatic_ap(fib, color(fib, ColoringScheme::constant, 1), 3, Coord{0.0}, std::min(r, 39.0));
  REQUIRE(ap);
  CHECK(verify_ap(*ap, fib.cps()));

  const PointSet z = integers(0, 8);
  const auto alt = find_monochromatic_ap(z, color(z, ColoringScheme::periodic, 2), 3, Coord{4.0}, 4.0);
  REQUIRE(alt);
  CHECK(alt->length == 3);

  std::vector<QuadElem> powers;
  for (int n = 0; n <= 10; ++n) powers.push_back({i64(1) << n, 0});
  const PointSet p = PointSet::from_ring(golden(), powers, iv(0, 2048));
  CHECK_FALSE(find_monochromatic_ap(p, color(p, ColoringScheme::periodic, 2), 3, Coord{1024.0}, 1024.0));
  CHECK_THROWS_AS(find_monochromatic_ap(z, color(z, ColoringScheme::constant, 1), 3, Coord{4.0}, 10.0), PreconditionError);
}

TEST_CASE("model vdW radius") {
  const double t2 = oracle::tau() * oracle::tau();
  const auto a = model_vdw_radius(golden(), fibonacci_window(), 2, 3);
  CHECK(a.n == 9);
  CHECK(a.radius == doctest::Approx(130 * t2));
  CHECK(model_vdw_radius(golden(), fibonacci_window(), 1, 3).radius == doctest::Approx(10 * t2));
  CHECK(model_vdw_radius(golden(), fibonacci_window(), 2, 2).radius == doctest::Approx(10 * t2));
  CHECK_THROWS_AS(model_vdw_radius(golden(), fibonacci_window(), 4, 3), GuardExceeded);
}

TEST_CASE("certificates transfer integer colourings") {
  const auto rad = model_vdw_radius(golden(), fibonacci_window(), 2, 3);
  const double reach = 100 + rad.radius + 1;
  const PointSet fib = enumerate_model_set(golden(), fibonacci_window(), iv(-reach, reach));
  std::vector<Coloring> cols{color(fib, ColoringScheme::random, 2, 1), color(fib, ColoringScheme::internal_threshold, 2)};
  const auto cert = certify_vdw(fib, cols, {Coord{-100.0}, Coord{0.0}, Coord{100.0}}, 2, 3, rad.n, rad.radius);
  CHECK(cert.trace.size() == 6);
  CHECK(cert.all_ok());
  for (const auto& e : cert.trace) {
    REQUIRE(e.transferred);
    REQUIRE(e.integer_ap.size() == 3);
    CHECK(e.integer_ap[1] - e.integer_ap[0] == e.integer_ap[2] - e.integer_ap[1]);
  }
}

TEST_CASE("Meyer vdW radius") {
  auto cps = golden();
  const double t2 = oracle::tau() * oracle::tau();
  const PointSet fib = enumerate_model_set(cps, fibonacci_window(), iv(-300, 300));
  const Region cover = iv(-200, 200);
  const auto same = meyer_vdw_radius(fib, fib, {LatticeCoords{0, 0}}, 2, 3, cover);
  CHECK(same.radius == doctest::Approx(130 * t2));
  CHECK(same.route == MeyerRoute::cover_classes);

  const auto shifted = meyer_vdw_radius(fib, fib, {LatticeCoords{0, 0}, LatticeCoords{1, 0}}, 2, 3, cover);
  CHECK(shifted.radius == doctest::Approx(130 * t2 + 1));

  const QuadNumber half = (QuadRing::golden().omega() - QuadNumber(1)) / 2;
  const Window wl = Window::interval(Interval::half_open(QuadNumber(-1), half));
  const PointSet lam = enumerate_model_set(cps, wl, iv(-300, 300));
  CHECK_THROWS_AS(meyer_vdw_radius(lam, fib, {LatticeCoords{0, 0}}, 2, 3, cover), PreconditionError);
}
