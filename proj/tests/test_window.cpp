#include "doctest.h"
#include "modelap/errors.hpp"
#include "modelap/region.hpp"
#include "modelap/window.hpp"

using namespace modelap;

TEST_CASE("half-open interval semantics") {
  const Interval w = Interval::half_open(QuadNumber(-1), QuadRing::golden().phys(QuadElem{-1, 1}));
  CHECK(w.contains(QuadNumber(-1)));
  CHECK_FALSE(w.contains(QuadRing::golden().phys(QuadElem{-1, 1})));
  CHECK(w.contains(QuadNumber(0)));
  CHECK_FALSE(w.contains(QuadNumber(1)));
}

TEST_CASE("window measure and interior") {
  const Window w = Window::interval(Interval::half_open(QuadNumber(-1), QuadRing::golden().phys(QuadElem{-1, 1})));
  CHECK(w.measure() == doctest::Approx(1.6180339887));
  CHECK(w.has_interior());
  const Window empty = Window::interval(Interval::half_open(QuadNumber(0), QuadNumber(0)));
  CHECK_FALSE(empty.has_interior());
  CHECK(empty.measure() == 0.0);
  CHECK_THROWS_AS(Window::interval(Interval::half_open(QuadNumber(1), QuadNumber(0))), PreconditionError);
}

TEST_CASE("ball and box windows") {
  const Window b = Window::ball({QuadNumber(0), QuadNumber(0)}, QuadNumber(1));
  CHECK(b.dim() == 2);
  CHECK(b.measure() == doctest::Approx(3.14159265));
  const double in[2] = {0.5, 0.5};
  const double out[2] = {0.8, 0.8};
  CHECK(b.classify(in, 1e-9).inside);
  CHECK_FALSE(b.classify(out, 1e-9).inside);
  const double edge[2] = {1.0, 0.0};
  CHECK(b.classify(edge, 1e-9).uncertain);
  const Window box = Window::box({Interval::half_open(QuadNumber(0), QuadNumber(2)), Interval::half_open(QuadNumber(0), QuadNumber(1))});
  CHECK(box.measure() == doctest::Approx(2.0));
  CHECK(box.inradius() == doctest::Approx(0.5));
  const Window mid = box.middle_half();
  CHECK(mid.factors()[0].lo == QuadNumber::rational(1, 2));
  CHECK(mid.factors()[0].hi == QuadNumber::rational(3, 2));
}

TEST_CASE("regions") {
  const Region r = Region::interval(QuadNumber(-2), QuadNumber(3));
  CHECK(r.volume() == doctest::Approx(5.0));
  CHECK(r.covers(Region::interval(QuadNumber(-1), QuadNumber(3))));
  CHECK_FALSE(r.covers(Region::interval(QuadNumber(-3), QuadNumber(0))));
  CHECK(r.expanded(QuadNumber(1)).covers(Region::interval(QuadNumber(-3), QuadNumber(4))));
  const QuadNumber x[1] = {QuadNumber(3)};
  CHECK(r.contains(std::span<const QuadNumber>(x)));
}
