#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "modelap/io.hpp"
#include "modelap/model_set.hpp"

using namespace modelap;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("modelap_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("command names and exit codes") {
  CHECK(cli::commands().size() == 15);
  CHECK(run({}).code == cli::kExitUnknownCommand);
  const Run bad = run({"frobnicate"});
  CHECK(bad.code == cli::kExitUnknownCommand);
  CHECK(bad.err.find("unknown command") != std::string::npos);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"generate", "--region", "5", "1"}).code == cli::kExitPrecondition);
  CHECK(run({"generate", "--region", "1"}).code == cli::kExitPrecondition);
  CHECK(run({"generate", "--config", "/nonexistent/cfg.json"}).code == cli::kExitPrecondition);
  CHECK(run({"vdw-oracle", "--n-max", "41"}).code == cli::kExitGuard);
  CHECK(run({"vdw-experiment", "--r", "4", "--k", "3", "--centers", "1"}).code == cli::kExitGuard);
  CHECK(run({"vdw-oracle", "--k", "1"}).code == cli::kExitPrecondition);
  CHECK(run({"no3ap", "--precision", "10"}).code == cli::kExitPrecondition);
  CHECK(run({"find-cover"}).code == cli::kExitPrecondition);
  CHECK(run({"find-ap", "--start", "1"}).code == cli::kExitPrecondition);  // 1 is not a Fibonacci point
}

TEST_CASE("malformed config reports line and field") {
  const fs::path dir = scratch("badcfg");
  std::ofstream(dir / "a.json") << "{\n  \"window\": {\"lo\": -1\n  \"hi\": 0}\n}\n";
  const Run a = run({"generate", "--config", (dir / "a.json").string()});
  CHECK(a.code == cli::kExitPrecondition);
  CHECK(a.err.find("line 3") != std::string::npos);
  std::ofstream(dir / "b.json") << R"({"window": {"lo": -1, "hi": {"m": 0, "n": "x"}}})";
  const Run b = run({"generate", "--config", (dir / "b.json").string()});
  CHECK(b.code == cli::kExitPrecondition);
  CHECK(b.err.find("window.hi.n") != std::string::npos);
}

TEST_CASE("generate writes the Fibonacci points") {
  const Run r = run({"generate", "--region", "-50", "50"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls.front() == "m,n,phys,star");
  auto cps = std::make_shared<const Cps>(Cps::golden());
  const PointSet fib = enumerate_model_set(cps, fibonacci_window(), Region::interval(QuadNumber(-50), QuadNumber(50)));
  CHECK(ls.size() == fib.size() + 1);

  const fs::path dir = scratch("gen");
  const Run w = run({"generate", "--region", "-50", "50", "--out", dir.string()});
  REQUIRE(w.code == 0);
  CHECK(w.report()["count"] == fib.size());
  CHECK(slurp(dir / "points.csv") == r.out);
  std::ifstream in(dir / "points.csv");
  const PointSet back = io::read_points_csv(in, cps, fib.region());
  REQUIRE(back.size() == fib.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(*back[i].coords == *fib[i].coords);
}

TEST_CASE("find-ap lists 3 tau + 2 for five terms from the origin") {
  const Run r = run({"find-ap", "--k", "5", "--start", "0"});
  REQUIRE(r.code == 0);
  const json rep = r.report();
  bool found = false;
  for (const auto& d : rep["valid_differences"]) {
    CHECK(d["verified"] == true);
    found = found || d["coords"] == json{{"m", 2}, {"n", 3}};
  }
  CHECK(found);
  CHECK(rep["constructive"]["t"] == json{{"m", 1}, {"n", 2}});
}

TEST_CASE("parameters from a config file") {
  const fs::path dir = scratch("params");
  std::ofstream(dir / "c.json") << R"({"cps": "golden", "window": {"type": "interval", "lo": {"m": -1, "n": 0}, "hi": {"m": -1, "n": 1}},
                                       "k": 5, "start": {"m": 0, "n": 0}, "t": {"m": 2, "n": 3}})";
  const Run r = run({"certify-ap", "--config", (dir / "c.json").string()});
  REQUIRE(r.code == 0);
  const json rep = r.report();
  CHECK(rep["ok"] == true);
  CHECK(rep["terms"].size() == 5);
  CHECK(rep["terms"][4]["star_exact"] == (QuadNumber(8) + QuadNumber(12) * QuadRing::golden().omega_conj()).to_string());
  const Run bad = run({"certify-ap", "--config", (dir / "c.json").string(), "--t", "1,0"});
  CHECK(bad.report()["ok"] == false);
}

TEST_CASE("vdw commands") {
  const Run o = run({"vdw-oracle", "--r", "2", "--k", "3"});
  REQUIRE(o.code == 0);
  CHECK(o.report()["value"] == 9);
  CHECK(o.report()["witness"].size() == 8);

  const Run e = run({"vdw-experiment", "--r", "2", "--k", "3", "--centers", "50", "--seed", "7"});
  REQUIRE(e.code == 0);
  const json rep = e.report();
  CHECK(rep["ok"] == true);
  CHECK(rep["failures"] == 0);
  CHECK(rep["trace"].size() == 300);
  CHECK(rep["vdw_number"] == 9);
  const Run again = run({"vdw-experiment", "--r", "2", "--k", "3", "--centers", "50", "--seed", "7"});
  CHECK(again.out == e.out);
  const Run other = run({"vdw-experiment", "--r", "2", "--k", "3", "--centers", "50", "--seed", "8"});
  CHECK(other.out != e.out);
}

TEST_CASE("Meyer commands") {
  const Run m = run({"meyer-check"});
  REQUIRE(m.code == 0);
  CHECK(m.report()["meyer"] == true);
  const Run f = run({"find-cover", "--sub-window", "-1", R"({"p": -1, "q": 1, "d": 4})", "--r", "2", "--k", "3"});
  REQUIRE(f.code == 0);
  const json rep = f.report();
  CHECK(rep["cover_ok"] == true);
  CHECK(rep["size"].get<int>() <= 8);
  CHECK(rep["vdw"]["route"] == "cover_classes");
}

TEST_CASE("density commands") {
  const Run d = run({"density"});
  REQUIRE(d.code == 0);
  CHECK(d.report()["estimate"]["value"].get<double>() == doctest::Approx(0.7236).epsilon(1e-3));
  const Run a = run({"almost-periods", "--eps", "0.05"});
  REQUIRE(a.code == 0);
  for (const auto& e : a.report()["almost_periods"]) CHECK(e["d_b"].get<double>() < 0.05);
  const Run c = run({"autocorr", "--n", "500", "--z-cap", "0", "3"});
  REQUIRE(c.code == 0);
  CHECK(c.report()["coefficients"][0]["phys"] == 0.0);
  const Run p = run({"verify-p6", "--search", "0", "200", "--eps", "0.25", "--n", "3"});
  REQUIRE(p.code == 0);
  CHECK(p.report()["ok"] == true);
  CHECK(run({"verify-p6", "--eps", "2"}).code == cli::kExitPrecondition);
}

TEST_CASE("no3ap with its integer control") {
  const Run r = run({"no3ap", "--n", "20", "--precision", "60"});
  REQUIRE(r.code == 0);
  const json rep = r.report();
  CHECK(rep["counterexample"]["passes"] == true);
  CHECK(rep["integer_control"]["passes"] == false);
  CHECK(rep["integer_control"]["residual"] == 0.0);
}

TEST_CASE("reproduce-figures") {
  const fs::path dir = scratch("figs");
  const Run r = run({"reproduce-figures", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto fig2 = lines(slurp(dir / "fig2_progression.csv"));
  REQUIRE(fig2.size() == 6);
  for (int j = 0; j < 5; ++j) {
    const auto& row = fig2[static_cast<std::size_t>(j + 1)];
    CHECK(row.rfind(std::to_string(j) + "," + std::to_string(2 * j) + "," + std::to_string(3 * j) + ",", 0) == 0);
    const double ratio = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(ratio == doctest::Approx(j));
  }
  CHECK(r.report()["fig2"]["all_members"] == true);

  // model points are exactly the lattice points flagged inside the strip
  std::size_t inside = 0;
  for (const auto& l : lines(slurp(dir / "fig1_lattice.csv"))) inside += l.size() > 2 && l.substr(l.size() - 2) == ",1";
  CHECK(inside + 1 == lines(slurp(dir / "fig1_model.csv")).size());

  const fs::path again = scratch("figs2");
  REQUIRE(run({"reproduce-figures", "--out", again.string()}).code == 0);
  for (const char* f : {"fig1_lattice.csv", "fig1_strip.csv", "fig1_model.csv", "fig2_progression.csv", "reproduce-figures.json"})
    CHECK(slurp(dir / f) == slurp(again / f));

  const fs::path empty = scratch("figs0");
  REQUIRE(run({"reproduce-figures", "--region", "0", "0", "--out", empty.string()}).code == 0);
  for (const char* f : {"fig1_lattice.csv", "fig1_strip.csv", "fig1_model.csv", "fig2_progression.csv"})
    CHECK(lines(slurp(empty / f)).size() == 1);
}
