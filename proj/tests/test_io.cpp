#include <sstream>

#include "doctest.h"
#include "modelap/io.hpp"
#include "modelap/model_set.hpp"

using namespace modelap;
using io::json;

namespace {
Region iv(double lo, double hi) { return Region::interval(rational_lower(lo), rational_upper(hi)); }
}  // namespace

TEST_CASE("config with the documented window") {
  const auto c = io::parse_config(
      R"({"cps": "golden", "window": {"type": "interval", "lo": {"m": -1, "n": 0}, "hi": {"m": -1, "n": 1}}})");
  CHECK(c.cps->is_golden());
  CHECK(c.window.interval_form() == fibonacci_window().interval_form());
  CHECK_FALSE(c.region);
}

TEST_CASE("config fields") {
  const auto c = io::parse_config(R"({
    "cps": {"type": "quadratic", "b": 2, "c": 1},
    "window": {"lo": "-1/2", "hi": 0.75, "bounds": "[]"},
    "region": [-10, "25.5"],
    "averaging": [10, 100],
    "seed": 9, "precision": 80,
    "k": 4, "start": {"m": 1, "n": 2}, "search": [0, 100]
  })");
  CHECK(c.cps->ring() == QuadRing{2, 1});
  const Interval w = c.window.interval_form();
  CHECK(w.lo == QuadNumber::rational(-1, 2));
  CHECK(w.hi == QuadNumber::rational(3, 4));
  CHECK(w.hi_closed);
  CHECK(c.region->side(0).hi == QuadNumber::rational(51, 2));
  CHECK(c.averaging->indices == std::vector<i64>{10, 100});
  CHECK(c.seed == 9);
  CHECK(*c.precision == 80);
  CHECK(c.get_int("k", 3, 2, 40) == 4);
  CHECK(c.get_int("r", 2, 1, 10) == 2);
  CHECK(c.get_coords("start", {0, 0}) == LatticeCoords{1, 2});
  CHECK(c.get_region("search", iv(0, 1)).side(0).hi == QuadNumber(100));
  CHECK_THROWS_AS(c.get_int("k", 3, 5, 40), io::ConfigError);
}

TEST_CASE("numeric schemes") {
  const auto c = io::parse_config(R"({
    "cps": {"type": "numeric", "physical_dim": 1, "internal_dim": 1, "basis": [[1, "3/2"], [1, "-1/3"]]},
    "window": {"lo": -1, "hi": 1}
  })");
  CHECK_FALSE(c.cps->algebraic());
  CHECK(c.get_coords("start", {0, 0}) == LatticeCoords{0, 0});
}

TEST_CASE("malformed configs report where") {
  auto field_of = [](const char* text) {
    try {
      io::parse_config(text);
    } catch (const io::ConfigError& e) {
      return e.field();
    }
    return std::string("(none)");
  };
  CHECK(field_of("{\n  \"cps\": \"golden\",\n  \"window\": {\"lo\": 1,, }\n}") == "line 3, column 22");
  CHECK(field_of(R"({"cps": "silver"})") == "cps");
  CHECK(field_of(R"({"window": {"lo": 1}})") == "window.hi");
  CHECK(field_of(R"({"window": {"lo": 1, "hi": 0}})") == "window");
  CHECK(field_of(R"({"window": {"lo": {"m": 1.5}, "hi": 2}})") == "window.lo.m");
  CHECK(field_of(R"({"window": {"type": "blob"}})") == "window.type");
  CHECK(field_of(R"({"region": [3, 1]})") == "region");
  CHECK(field_of(R"({"averaging": [10, 5]})") == "averaging");
  CHECK(field_of(R"({"seed": -1})") == "seed");
  CHECK(field_of(R"({"cps": {"type": "quadratic", "b": 2, "c": 0}, "window": {"lo": 0, "hi": 1}})") == "cps");
  CHECK(field_of(R"([1, 2])") == "(root)");
}

TEST_CASE("CSV round trip") {
  auto cps = std::make_shared<const Cps>(Cps::golden());
  const PointSet fib = enumerate_model_set(cps, fibonacci_window(), iv(-50, 50));
  std::stringstream ss;
  io::write_points_csv(ss, fib);
  const std::string text = ss.str();
  CHECK(text.rfind("m,n,phys,star\n0,0,0,0\n", 0) != 0);  // sorted by phys, so the origin is not first
  CHECK(text.find("\n0,0,0,0\n") != std::string::npos);
  const PointSet back = io::read_points_csv(ss, cps, fib.region(), fib.window());
  REQUIRE(back.size() == fib.size());
  for (std::size_t i = 0; i < fib.size(); ++i) CHECK(*back[i].coords == *fib[i].coords);

  std::stringstream again;
  io::write_points_csv(again, back);
  CHECK(again.str() == text);

  std::stringstream bad("m,n,phys,star\n1,x,0,0\n");
  CHECK_THROWS_AS(io::read_points_csv(bad, cps, fib.region()), io::ConfigError);
}

TEST_CASE("CSV for numeric lattices and bare values") {
  auto cps = std::make_shared<const Cps>(
      Cps::numeric(1, 1, {{Rational(1), Rational(3, 2)}, {Rational(1), Rational(-1, 3)}}));
  const Window w = Window::interval(Interval::half_open(QuadNumber(-1), QuadNumber(1)));
  const PointSet ps = enumerate_model_set(cps, w, iv(-10, 10));
  std::stringstream ss;
  io::write_points_csv(ss, ps);
  CHECK(ss.str().rfind("z0,z1,x0,y0,uncertain\n", 0) == 0);
  const PointSet back = io::read_points_csv(ss, cps, ps.region());
  REQUIRE(back.size() == ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) CHECK(*back[i].coords == *ps[i].coords);

  std::vector<double> v{0.5, 0.1};
  std::stringstream fs;
  io::write_points_csv(fs, PointSet::from_values(v, iv(0, 1)));
  CHECK(fs.str() == "phys\n0.10000000000000001\n0.5\n");
}

TEST_CASE("progression records") {
  auto cps = std::make_shared<const Cps>(Cps::golden());
  const Progression ap = constructive_ap(cps, fibonacci_window(), {0, 0}, 4);
  const json j = io::to_json(ap, cps.get());
  CHECK(j["s"] == json{{"m", 0}, {"n", 0}});
  CHECK(j["t"] == json{{"m", 1}, {"n", 2}});  // tau^3, the shortest valid difference
  CHECK(j["k"] == 5);
  REQUIRE(j["phys_terms"].size() == 5);
  CHECK(j["phys_terms"][4].get<double>() == doctest::Approx(4 + 8 * 1.6180339887498949));
  const Progression back = io::progression_from_json(j);
  CHECK(*back.start_coords == *ap.start_coords);
  CHECK(*back.diff_coords == *ap.diff_coords);
  CHECK(back.length == 5);
  CHECK(verify_ap(back, cps.get()));
}

TEST_CASE("exact numbers in reports") {
  const json j = io::to_json(QuadRing::golden().omega());
  CHECK(j["value"].get<double>() == doctest::Approx(1.6180339887));
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}
