#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "modelap/density.hpp"
#include "modelap/errors.hpp"
#include "modelap/model_set.hpp"
#include "modelap/progressions.hpp"
#include "oracles.hpp"

using namespace modelap;

namespace {

std::shared_ptr<const Cps> golden() { return std::make_shared<const Cps>(Cps::golden()); }
Region iv(double lo, double hi) { return Region::interval(rational_lower(lo), rational_upper(hi)); }
const double kSqrt5 = std::sqrt(5.0);

PointSet ints(i64 lo, i64 hi, i64 step = 1) {
  std::vector<QuadElem> v;
  for (i64 m = lo; m <= hi; ++m)
    if (((m % step) + step) % step == 0) v.push_back({m, 0});
  return PointSet::from_ring(golden(), v, Region::interval(QuadNumber(lo), QuadNumber(hi)));
}

// star of m + n tau is m + n (1 - tau)
double star_of(const LatticeCoords& t) { return double(t[0]) + double(t[1]) * (1 - oracle::tau()); }

PointSet perturbed(const PointSet& base, std::mt19937_64& rng) {
  std::vector<LatticeCoords> out;
  for (const auto& p : base.points())
    if (rng() % 10 != 0) out.push_back(*p.coords);
  for (int i = 0; i < 20; ++i) out.push_back({i64(rng() % 2001) - 1000, 0});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return PointSet::from_lattice(base.cps_ptr(), out, base.region());
}

}  // namespace

TEST_CASE("averaging sequences") {
  const auto g = AveragingSequence::geometric(1, 10, 1000, 3);
  CHECK(g.indices == std::vector<i64>{10, 100, 1000});
  CHECK(g.volume(10) == 20);
  CHECK(AveragingSequence::single(2, 5).volume(5) == 100);
  CHECK_THROWS_AS((AveragingSequence{1, {5, 5}}.validate()), PreconditionError);
  CHECK_THROWS_AS((AveragingSequence{1, {}}.validate()), PreconditionError);
  CHECK_THROWS_AS(AveragingSequence::geometric(1, 0, 10, 2), PreconditionError);
}

TEST_CASE("densities") {
  const PointSet z = ints(-1000, 1000);
  const auto dz = density(z, AveragingSequence::geometric(1, 10, 1000, 3));
  CHECK(dz.counts == std::vector<std::size_t>{21, 201, 2001});
  CHECK(dz.value == doctest::Approx(2001.0 / 2000));
  CHECK(density(ints(-1000, 1000, 2), AveragingSequence::single(1, 1000)).value == doctest::Approx(0.5).epsilon(1e-3));

  const PointSet fib = enumerate_model_set(golden(), fibonacci_window(), iv(-5000, 5000));
  const auto df = density(fib, AveragingSequence::geometric(1, 500, 5000, 4));
  CHECK(df.value == doctest::Approx(oracle::tau() / kSqrt5).epsilon(1e-3));
  CHECK(df.oscillation < 2e-3);
  CHECK_THROWS_AS(density(fib, AveragingSequence::single(1, 6000)), PreconditionError);

  const auto md = max_density_check(golden(), fibonacci_window(), AveragingSequence::single(1, 20000));
  CHECK(md.target == doctest::Approx(oracle::tau() / kSqrt5));
  CHECK(md.gap < 1e-3);
}

TEST_CASE("d_B on simple sets") {
  const auto avg = AveragingSequence::single(1, 1000);
  const PointSet z = ints(-1000, 1000);
  const PointSet ev = ints(-1000, 1000, 2);
  CHECK(d_B(z, z, avg).value == 0);
  CHECK(d_B(z, ev, avg).value == doctest::Approx(1000.0 / 2000));
  CHECK(symmetric_difference_count(z, ev, iv(-10, 10)) == 10);
}

TEST_CASE("d_B symmetry, triangle inequality and translation") {
  auto cps = golden();
  const PointSet base = enumerate_model_set(cps, fibonacci_window(), iv(-1100, 1100));
  const auto avg = AveragingSequence::single(1, 1000);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const PointSet a = perturbed(base, rng), b = perturbed(base, rng), c = perturbed(base, rng);
    const double ab = d_B(a, b, avg).value, ba = d_B(b, a, avg).value;
    CHECK(ab == ba);
    CHECK(d_B(a, c, avg).value <= ab + d_B(b, c, avg).value);
    const LatticeCoords t{3, 5};
    const double shifted = d_B(a.translated(t), b.translated(t), avg).value;
    // boundary slabs of width |t| on each side
    const double tp = std::abs(3 + 5 * oracle::tau());
    CHECK(std::abs(shifted - ab) <= 2 * (2 * tp + 2) / avg.volume(1000));
  }
}

TEST_CASE("almost periods of the Fibonacci set") {
  auto cps = golden();
  const PointSet fib = enumerate_model_set(cps, fibonacci_window(), iv(-2200, 2200));
  const auto avg = AveragingSequence::single(1, 2000);
  const auto aps = almost_periods(fib, 0.1, iv(0, 100), avg);
  CHECK(aps.size() > 5);
  for (const auto& a : aps) {
    CHECK(a.d_b < 0.1);
    CHECK(a.phys >= 0);
    CHECK(a.d_b == doctest::Approx(2 * std::abs(star_of(a.t)) / kSqrt5).epsilon(0.05));
  }
  // tau^3 has star -tau^-3 and d_B about 2 tau^-3 / sqrt5
  const auto all = almost_periods(fib, 1.0, iv(4, 4.5), avg);
  REQUIRE(all.size() == 1);
  CHECK(all[0].t == LatticeCoords{1, 2});
  CHECK(all[0].d_b == doctest::Approx(2 / std::pow(oracle::tau(), 3) / kSqrt5).epsilon(0.02));
  CHECK_THROWS_AS(almost_periods(fib, 0.1, iv(0, 500), avg), PreconditionError);
}

TEST_CASE("intersections of translates") {
  const PointSet z = ints(0, 20);
  const PointSet g = intersect_translates(z, LatticeCoords{2, 0}, 3);
  CHECK(g.size() == 15);
  CHECK(g.phys_values().front() == 6);
  CHECK(intersect_translates(z, LatticeCoords{2, 0}, 0).size() == z.size());
  std::vector<double> v{0, 1, 2, 3};
  const PointSet f = PointSet::from_values(v, iv(0, 3));
  CHECK(intersect_translates(f, Coord{1.0}, 2).size() == 2);
}

TEST_CASE("P6 verification") {
  auto cps = golden();
  const PointSet fib = enumerate_model_set(cps, fibonacci_window(), iv(-3000, 3000));
  const auto rep = verify_p6(fib, 0.25, 3, AveragingSequence::single(1, 2000), iv(0, 300));
  CHECK(rep.threshold == doctest::Approx(0.25 * rep.density / 3));
  CHECK(rep.nonzero_count() >= 10);
  CHECK(rep.all_ok());
  for (const auto& e : rep.entries) {
    CHECK(e.inclusion_ok);
    CHECK(e.chain_ok);
  }
  CHECK_THROWS_AS(verify_p6(fib, 1.5, 3, AveragingSequence::single(1, 2000), iv(0, 300)), PreconditionError);
}

TEST_CASE("autocorrelation") {
  const PointSet z = ints(-600, 600);
  const auto ez = autocorrelation_coeffs(z, 500, iv(-2, 2));
  REQUIRE(ez.size() == 5);
  for (const auto& e : ez) CHECK(e.eta == doctest::Approx(1.0).epsilon(0.01));

  const PointSet fib = enumerate_model_set(golden(), fibonacci_window(), iv(-5000, 5000));
  const auto ef = autocorrelation_coeffs(fib, 5000, iv(0, 3));
  REQUIRE(!ef.empty());
  for (const auto& e : ef) {
    const double s = std::abs(star_of(*e.z));
    CHECK(e.eta == doctest::Approx(std::max(0.0, oracle::tau() - s) / kSqrt5).epsilon(0.01));
  }
  CHECK(ef.front().phys == 0);
  CHECK(ef.front().eta == doctest::Approx(oracle::tau() / kSqrt5).epsilon(1e-3));

  const auto wide = autocorrelation_coeffs(fib, 5000, iv(0, 100));
  CHECK(wide.size() > 64);

  // non-FLC: the differences of {n + 1/(|n|+2)} pile up near each integer
  std::vector<double> v;
  for (int n = -400; n <= 400; ++n) v.push_back(n + 1.0 / (std::abs(n) + 2));
  CHECK_THROWS_AS(autocorrelation_coeffs(PointSet::from_values(v, iv(-400, 400)), 300, iv(0, 2)), PreconditionError);
}
