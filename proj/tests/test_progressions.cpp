#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "doctest.h"
#include "modelap/errors.hpp"
#include "modelap/model_set.hpp"
#include "modelap/progressions.hpp"
#include "oracles.hpp"

using namespace modelap;

namespace {

std::shared_ptr<const Cps> golden() { return std::make_shared<const Cps>(Cps::golden()); }
Region iv(double lo, double hi) { return Region::interval(rational_lower(lo), rational_upper(hi)); }

std::vector<Point> ring_points(std::initializer_list<std::pair<i64, i64>> xs) {
  const Cps g = Cps::golden();
  std::vector<Point> out;
  for (auto [m, n] : xs) out.push_back(make_lattice_point(g, LatticeCoords{m, n}));
  return out;
}

}  // namespace

TEST_CASE("verify_ap") {
  CHECK(verify_ap(ring_points({{0, 0}, {0, 1}, {0, 2}})));
  CHECK_FALSE(verify_ap(ring_points({{0, 0}, {1, 0}, {3, 0}})));
  CHECK(verify_ap(ring_points({{0, 0}, {2, 3}, {4, 6}, {6, 9}, {8, 12}})));
  CHECK_FALSE(verify_ap(ring_points({{1, 1}, {1, 1}})));
  CHECK(verify_ap(ring_points({{0, 0}, {5, 1}})));
  CHECK_THROWS_AS(verify_ap(ring_points({{0, 0}})), PreconditionError);
  const std::vector<Point> floats{{{0.0}, {}, std::nullopt, false}, {{0.5}, {}, std::nullopt, false}, {{1.0 + 1e-12}, {}, std::nullopt, false}};
  CHECK(verify_ap(floats, 1e-9));
}

TEST_CASE("brute-force AP search") {
  std::vector<QuadElem> ints;
  for (i64 m = 0; m <= 4; ++m) ints.push_back({m, 0});
  const PointSet z = PointSet::from_ring(golden(), ints, iv(0, 4));
  const auto five = find_aps_bruteforce(z, 5);
  REQUIRE(five.size() == 1);
  CHECK(*five[0].start_coords == LatticeCoords{0, 0});
  CHECK(*five[0].diff_coords == LatticeCoords{1, 0});
  CHECK(five[0].length == 5);
  const auto three = find_aps_bruteforce(z, 3);
  bool has_even = false;
  for (const auto& ap : three) has_even |= *ap.start_coords == LatticeCoords{0, 0} && *ap.diff_coords == LatticeCoords{2, 0} && ap.length == 3;
  CHECK(has_even);
  // every reported AP is maximal
  for (const auto& ap : three) CHECK_FALSE(std::any_of(three.begin(), three.end(), [&](const Progression& o) {
    return &o != &ap && *o.diff_coords == *ap.diff_coords && *o.start_coords == *ap.start_coords - *ap.diff_coords;
  }));

  std::vector<QuadElem> powers;
  for (int n = 0; n <= 10; ++n) powers.push_back({i64(1) << n, 0});
  CHECK(find_aps_bruteforce(PointSet::from_ring(golden(), powers, iv(0, 1024)), 3).empty());

  const PointSet fib = enumerate_model_set(golden(), fibonacci_window(), iv(0, 100));
  const auto aps = find_aps_bruteforce(fib, 5);
  CHECK_FALSE(aps.empty());
  bool fig = false;
  for (const auto& ap : aps) fig |= *ap.start_coords == LatticeCoords{0, 0} && *ap.diff_coords == LatticeCoords{2, 3} && ap.length >= 5;
  CHECK(fig);
  for (const auto& ap : aps)
    for (int j = 0; j < ap.length; ++j) CHECK(is_member(Cps::golden(), fibonacci_window(), ap.term_coords(j)));
}

TEST_CASE("AP search guard") {
  std::vector<double> v(100001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK_THROWS_AS(find_aps_bruteforce(PointSet::from_values(v, iv(0, 100001)), 3), GuardExceeded);
}

TEST_CASE("difference window formulas") {
  const Cps g = Cps::golden();
  const QuadRing r = QuadRing::golden();
  const QuadNumber tm1 = r.omega() - QuadNumber(1);
  auto w5 = difference_window(g, fibonacci_window(), LatticeCoords{0, 0}, 5).window.interval_form();
  CHECK(w5.lo == QuadNumber::rational(-1, 5));
  CHECK(w5.hi == tm1 / 5);
  CHECK(w5.lo_closed);
  CHECK_FALSE(w5.hi_closed);
  auto w1 = difference_window(g, fibonacci_window(), LatticeCoords{0, 0}, 1).window.interval_form();
  CHECK(w1 == fibonacci_window().interval_form());
  auto w2 = difference_window(g, fibonacci_window(), LatticeCoords{0, 1}, 2).window.interval_form();
  CHECK(w2.lo == (QuadNumber(-1) - r.omega_conj()) / 2);
  CHECK(w2.hi == (tm1 - r.omega_conj()) / 2);
  CHECK_THROWS_AS(difference_window(g, fibonacci_window(), LatticeCoords{1, 0}, 2), PreconditionError);
}

// Difference windows against brute force on a small coordinate box; the acceptance binary runs |m|,|n| <= 200.
TEST_CASE("difference window equals the brute-force difference set") {
  const Cps g = Cps::golden();
  for (auto s : {LatticeCoords{0, 0}, LatticeCoords{0, 1}, LatticeCoords{1, 1}})
    for (int n = 2; n <= 6; ++n) {
      const Window dw = difference_window(g, fibonacci_window(), s, n).window;
      for (i64 m = -60; m <= 60; ++m)
        for (i64 k = -60; k <= 60; ++k) {
          bool all = true;
          for (int j = 0; j <= n && all; ++j) all = oracle::in_fibonacci_window(s[0] + j * m, s[1] + j * k);
          CHECK(all == is_member(g, dw, LatticeCoords{m, k}));
        }
    }
}

TEST_CASE("constructive progressions") {
  const Cps g = Cps::golden();
  const Progression ap = constructive_ap(golden(), fibonacci_window(), LatticeCoords{0, 0}, 4);
  CHECK(ap.length == 5);
  CHECK(verify_ap(ap, &g));
  for (int j = 0; j < 5; ++j) CHECK(is_member(g, fibonacci_window(), ap.term_coords(j)));
  REQUIRE(ap.witness);
  CHECK(is_member(g, *ap.witness, LatticeCoords{2, 3}));
  // smallest |t| with t* in [-1/4, (tau-1)/4): tau^3 = 2 tau + 1
  CHECK(*ap.diff_coords == LatticeCoords{1, 2});

  const Progression two = constructive_ap(golden(), fibonacci_window(), LatticeCoords{0, 0}, 1);
  CHECK(two.length == 2);
  CHECK(verify_ap(two, &g));

  const Progression p3 = constructive_ap(golden(), fibonacci_window(), LatticeCoords{0, 1}, 3, iv(-200, 200));
  for (int j = 0; j < 4; ++j) CHECK(is_member(g, fibonacci_window(), p3.term_coords(j)));
  // minimal |t| among valid differences in the box, by brute force
  double best = 1e300;
  for (i64 m = -50; m <= 50; ++m)
    for (i64 k = -50; k <= 50; ++k) {
      if (m == 0 && k == 0) continue;
      bool all = true;
      for (int j = 0; j <= 3 && all; ++j) all = oracle::in_fibonacci_window(j * m, 1 + j * k);
      if (all) best = std::min(best, std::fabs(m + k * oracle::tau()));
    }
  CHECK(std::fabs(p3.diff[0]) == doctest::Approx(best));
  CHECK_THROWS_AS(constructive_ap(golden(), fibonacci_window(), LatticeCoords{0, 0}, 4, iv(-1, 1)), PreconditionError);
}

TEST_CASE("punctured covering radius") {
  const QuadNumber tm1 = QuadRing::golden().omega() - QuadNumber(1);
  const Window u = Window::interval(Interval::open(-tm1, tm1));
  const double r = punctured_covering_radius(golden(), u, iv(-20, 20));
  CHECK(std::isfinite(r));
  CHECK(r > 0);
  const PointSet ps = enumerate_model_set(golden(), u, iv(-20, 20));
  CHECK(ps.size() > 1);
  const Window all = Window::interval(Interval::closed(QuadNumber(-10), QuadNumber(10)));
  CHECK(punctured_covering_radius(golden(), all, iv(-50, 50)) <= 1.0);
  const Window degenerate = Window::interval(Interval::closed(QuadNumber(0), QuadNumber(0)));
  CHECK_THROWS_AS(punctured_covering_radius(golden(), degenerate, iv(-5, 5)), PreconditionError);
}

TEST_CASE("bounded gap radius") {
  const double t2 = oracle::tau() * oracle::tau();
  CHECK(bounded_gap_radius(golden(), fibonacci_window(), 4) == doctest::Approx(34 * t2));
  CHECK(bounded_gap_radius(golden(), fibonacci_window(), 1) == doctest::Approx(4 * t2));
  CHECK(bounded_gap_radius(golden(), fibonacci_window(), 4) == doctest::Approx(88.99).epsilon(1e-3));
  CHECK(bounded_gap_radius(golden(), fibonacci_window(), 1) == doctest::Approx(10.47).epsilon(1e-3));

  const Window w = Window::interval(Interval::open(QuadNumber(0), QuadNumber::rational(1, 5)));
  const BoundedGap g = bounded_gap(golden(), w, 2);
  CHECK_FALSE(g.closed_form);
  CHECK(g.radius == doctest::Approx(g.r_prime + 2 * g.r_second));
  // sample 100 centres: each ball of radius R holds a 3-term AP of the model set
  const PointSet ps = enumerate_model_set(golden(), w, iv(-1000 - g.radius - 1, 1000 + g.radius + 1));
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    const double c = -1000 + 2000.0 * i / 99;
    const auto idx = indices_in_ball(ps, Coord{c}, g.radius);
    if (find_aps_bruteforce(subset(ps, idx), 3).empty()) ++failures;
  }
  CHECK(failures == 0);
  CHECK_THROWS_AS(bounded_gap(golden(), Window::interval(Interval::half_open(QuadNumber(0), QuadNumber(0))), 2), PreconditionError);
}

TEST_CASE("covering radius of short windows against tau^3 over the length") {
  const double t = oracle::tau();
  CHECK(fact_r1_radius(0, t - 1) == doctest::Approx(std::pow(t, 4)));
  CHECK(fact_r1_radius(-1, t - 1) == doctest::Approx(t * t));
  CHECK(fact_r1_radius(0, 0.1) == doctest::Approx(42.36).epsilon(1e-3));
  CHECK_THROWS_AS(fact_r1_radius(1, 1), PreconditionError);
}

TEST_CASE("constructive APs are found by the brute-force search") {
  const Cps g = Cps::golden();
  for (int n = 2; n <= 4; ++n) {
    const Progression ap = constructive_ap(golden(), fibonacci_window(), LatticeCoords{0, 0}, n);
    const double span = std::fabs(ap.diff[0]) * n;
    const PointSet ps = enumerate_model_set(golden(), fibonacci_window(), iv(-span - 1, span + 1));
    // brute-force APs run upwards, so flip a negative difference
    LatticeCoords t = *ap.diff_coords;
    LatticeCoords low = ap.term_coords(0);
    if (ap.diff[0] < 0) {
      t = LatticeCoords{-t[0], -t[1]};
      low = ap.term_coords(n);
    }
    bool found = false;
    for (const auto& b : find_aps_bruteforce(ps, n + 1)) {
      if (*b.diff_coords != t) continue;
      for (int j = 0; j + n < b.length && !found; ++j) found = b.term_coords(j) == low;
    }
    CHECK(found);
  }
}
