#include "modelap/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace modelap::io {

namespace {

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

[[noreturn]] void fail(const std::string& field, const std::string& msg) { throw ConfigError(field, msg); }

i64 to_i64(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<i64>();
}

QuadNumber parse_text(std::string_view s, const std::string& field) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return QuadNumber::parse_decimal(s);
    i64 num = 0, den = 0;
    const auto a = std::from_chars(s.data(), s.data() + slash, num);
    const auto b = std::from_chars(s.data() + slash + 1, s.data() + s.size(), den);
    if (a.ec != std::errc() || a.ptr != s.data() + slash || b.ec != std::errc() || b.ptr != s.data() + s.size() || den == 0)
      fail(field, "bad fraction '" + std::string(s) + "'");
    return QuadNumber::rational(num, den);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

Rational parse_rational(const json& j, const std::string& field) {
  const QuadNumber q = j.is_string() ? parse_text(j.get<std::string>(), field) : parse_text(j.dump(), field);
  if (!q.is_rational()) fail(field, "expected a rational number");
  return Rational(q.p(), q.d());
}

std::shared_ptr<const Cps> parse_cps(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "golden") return std::make_shared<const Cps>(Cps::golden());
    fail("cps", "unknown scheme '" + j.get<std::string>() + "'");
  }
  if (!j.is_object() || !j.contains("type")) fail("cps", "expected \"golden\" or an object with a type");
  const std::string type = j["type"].is_string() ? j["type"].get<std::string>() : "";
  try {
    if (type == "golden") return std::make_shared<const Cps>(Cps::golden());
    if (type == "quadratic") {
      QuadRing ring{to_i64(j.value("b", json(1)), "cps.b"), to_i64(j.value("c", json(1)), "cps.c")};
      return std::make_shared<const Cps>(Cps::quadratic(ring));
    }
    if (type == "numeric") {
      const int d = static_cast<int>(to_i64(j.value("physical_dim", json()), "cps.physical_dim"));
      const int m = static_cast<int>(to_i64(j.value("internal_dim", json()), "cps.internal_dim"));
      if (!j.contains("basis") || !j["basis"].is_array()) fail("cps.basis", "expected an array of rows");
      std::vector<std::vector<Rational>> rows;
      for (std::size_t i = 0; i < j["basis"].size(); ++i) {
        const auto& row = j["basis"][i];
        const std::string f = "cps.basis[" + std::to_string(i) + "]";
        if (!row.is_array()) fail(f, "expected an array");
        std::vector<Rational> r;
        for (std::size_t k = 0; k < row.size(); ++k) r.push_back(parse_rational(row[k], f + "[" + std::to_string(k) + "]"));
        rows.push_back(std::move(r));
      }
      return std::make_shared<const Cps>(Cps::numeric(d, m, std::move(rows)));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError& e) {
    fail("cps", e.what());
  }
  fail("cps.type", "unknown type '" + type + "'");
}

Interval parse_interval(const json& j, const Cps& cps, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object with lo and hi");
  if (!j.contains("lo")) fail(join(field, "lo"), "missing");
  if (!j.contains("hi")) fail(join(field, "hi"), "missing");
  Interval iv{parse_number(j["lo"], cps, join(field, "lo")), parse_number(j["hi"], cps, join(field, "hi")), true, false};
  if (j.contains("bounds")) {
    const std::string b = j["bounds"].is_string() ? j["bounds"].get<std::string>() : "";
    if (b.size() != 2 || (b[0] != '[' && b[0] != '(') || (b[1] != ']' && b[1] != ')'))
      fail(join(field, "bounds"), "expected one of \"[)\", \"[]\", \"()\", \"(]\"");
    iv.lo_closed = b[0] == '[';
    iv.hi_closed = b[1] == ']';
  }
  return iv;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : PreconditionError("config " + field + ": " + message), field_(std::move(field)) {}

QuadNumber parse_number(const json& j, const Cps& cps, const std::string& field) {
  if (j.is_number_integer()) return QuadNumber(j.get<i64>());
  if (j.is_number_float()) return parse_text(j.dump(), field);
  if (j.is_string()) return parse_text(j.get<std::string>(), field);
  if (j.is_object() && j.contains("m")) {
    if (!cps.algebraic()) fail(field, "{m, n} needs a quadratic scheme");
    const QuadElem x{to_i64(j["m"], join(field, "m")), to_i64(j.value("n", json(0)), join(field, "n"))};
    return cps.ring().phys(x);
  }
  if (j.is_object() && j.contains("p")) {
    const i64 disc = cps.algebraic() ? cps.ring().discriminant() : 0;
    const i64 q = to_i64(j.value("q", json(0)), join(field, "q"));
    if (q != 0 && disc == 0) fail(field, "irrational value needs a quadratic scheme");
    try {
      return QuadNumber::make(to_i64(j["p"], join(field, "p")), q, to_i64(j.value("d", json(1)), join(field, "d")), disc);
    } catch (const std::exception& e) {
      fail(field, e.what());
    }
  }
  fail(field, "expected a number, \"p/q\", {m, n} or {p, q, d}");
}

Window parse_window(const json& j, const Cps& cps, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  const std::string type = j.value("type", std::string("interval"));
  Window w;
  try {
    if (type == "interval") {
      w = Window::interval(parse_interval(j, cps, field));
    } else if (type == "box") {
      if (!j.contains("factors") || !j["factors"].is_array()) fail(join(field, "factors"), "expected an array");
      std::vector<Interval> f;
      for (std::size_t i = 0; i < j["factors"].size(); ++i)
        f.push_back(parse_interval(j["factors"][i], cps, join(field, "factors[" + std::to_string(i) + "]")));
      w = Window::box(std::move(f));
    } else if (type == "ball") {
      if (!j.contains("center") || !j["center"].is_array()) fail(join(field, "center"), "expected an array");
      std::vector<QuadNumber> c;
      for (std::size_t i = 0; i < j["center"].size(); ++i)
        c.push_back(parse_number(j["center"][i], cps, join(field, "center[" + std::to_string(i) + "]")));
      if (!j.contains("radius")) fail(join(field, "radius"), "missing");
      w = Window::ball(std::move(c), parse_number(j["radius"], cps, join(field, "radius")), j.value("closed", false));
    } else {
      fail(join(field, "type"), "unknown window type '" + type + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError& e) {
    fail(field, e.what());
  }
  if (!w.has_interior()) fail(field, "window has empty interior");
  if (w.dim() != cps.internal_dim()) fail(field, "window dimension does not match the internal space");
  return w;
}

Region parse_region(const json& j, const Cps& cps, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected [lo, hi] or [[lo, hi], ...]");
  std::vector<std::pair<QuadNumber, QuadNumber>> sides;
  if (!j[0].is_array()) {
    if (j.size() != 2) fail(field, "expected [lo, hi]");
    sides.emplace_back(parse_number(j[0], cps, field + "[0]"), parse_number(j[1], cps, field + "[1]"));
  } else {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string f = field + "[" + std::to_string(i) + "]";
      if (!j[i].is_array() || j[i].size() != 2) fail(f, "expected [lo, hi]");
      sides.emplace_back(parse_number(j[i][0], cps, f + "[0]"), parse_number(j[i][1], cps, f + "[1]"));
    }
  }
  for (std::size_t i = 0; i < sides.size(); ++i)
    if (sides[i].second < sides[i].first) fail(field, "lo exceeds hi");
  if (static_cast<int>(sides.size()) != cps.physical_dim()) fail(field, "region dimension does not match the physical space");
  return Region::box(sides);
}

i64 ExperimentConfig::get_int(const std::string& key, i64 fallback, i64 lo, i64 hi) const {
  const i64 v = params.contains(key) ? to_i64(params[key], key) : fallback;
  if (v < lo || v > hi) fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  if (!params.contains(key)) return fallback;
  const auto& j = params[key];
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_text(j.get<std::string>(), key).to_double();
  fail(key, "expected a number");
}

LatticeCoords ExperimentConfig::get_coords(const std::string& key, const LatticeCoords& fallback) const {
  if (!params.contains(key)) return fallback;
  const auto& j = params[key];
  LatticeCoords z;
  if (j.is_number_integer()) {
    z.push_back(j.get<i64>());
    z.resize(static_cast<std::size_t>(cps->algebraic() ? 2 : cps->rank()), 0);
  } else if (j.is_object() && j.contains("m")) {
    z = {to_i64(j["m"], join(key, "m")), to_i64(j.value("n", json(0)), join(key, "n"))};
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) z.push_back(to_i64(j[i], key + "[" + std::to_string(i) + "]"));
  } else {
    fail(key, "expected an integer, {m, n} or a coordinate array");
  }
  const std::size_t want = cps->algebraic() ? 2 : static_cast<std::size_t>(cps->rank());
  if (z.size() != want) fail(key, "expected " + std::to_string(want) + " coordinates");
  return z;
}

Region ExperimentConfig::get_region(const std::string& key, const Region& fallback) const {
  return params.contains(key) ? parse_region(params[key], *cps, key) : fallback;
}

Window ExperimentConfig::get_window(const std::string& key) const {
  if (!params.contains(key)) fail(key, "missing");
  return parse_window(params[key], *cps, key);
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.cps = std::make_shared<const Cps>(Cps::golden());
  c.window = fibonacci_window();
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed document");
  }
  if (!doc.is_object()) fail("(root)", "expected an object");

  ExperimentConfig c = default_config();
  if (doc.contains("cps")) c.cps = parse_cps(doc["cps"]);
  if (doc.contains("window")) {
    c.window = parse_window(doc["window"], *c.cps, "window");
  } else if (!c.cps->is_golden()) {
    fail("window", "missing (only the golden scheme has a default window)");
  }
  if (doc.contains("region")) c.region = parse_region(doc["region"], *c.cps, "region");
  if (doc.contains("averaging")) {
    const auto& a = doc["averaging"];
    AveragingSequence avg;
    avg.dim = c.cps->physical_dim();
    if (a.is_array()) {
      for (std::size_t i = 0; i < a.size(); ++i) avg.indices.push_back(to_i64(a[i], "averaging[" + std::to_string(i) + "]"));
    } else if (a.is_object()) {
      try {
        avg = AveragingSequence::geometric(avg.dim, to_i64(a.value("n_min", json()), "averaging.n_min"),
                                           to_i64(a.value("n_max", json()), "averaging.n_max"),
                                           static_cast<int>(to_i64(a.value("count", json(8)), "averaging.count")));
      } catch (const ConfigError&) {
        throw;
      } catch (const PreconditionError& e) {
        fail("averaging", e.what());
      }
    } else {
      fail("averaging", "expected an index list or {n_min, n_max, count}");
    }
    try {
      avg.validate();
    } catch (const PreconditionError& e) {
      fail("averaging", e.what());
    }
    c.averaging = avg;
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("precision")) {
    const i64 p = to_i64(doc["precision"], "precision");
    if (p < 17 || p > 100000) fail("precision", "must lie in [17, 100000]");
    c.precision = static_cast<int>(p);
  }
  for (const auto& [k, v] : doc.items())
    if (k != "cps" && k != "window" && k != "region" && k != "averaging" && k != "seed" && k != "precision")
      c.params[k] = v;
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json to_json(const QuadNumber& x) { return json{{"exact", x.to_string()}, {"value", x.to_double()}}; }

json to_json(const LatticeCoords& z) {
  if (z.size() == 2) return json{{"m", z[0]}, {"n", z[1]}};
  json a = json::array();
  for (i64 v : z) a.push_back(v);
  return a;
}

json to_json(const Coord& x) {
  json a = json::array();
  for (double v : x) a.push_back(v);
  return a;
}

json to_json(const Window& w) {
  json j{{"describe", w.describe()}, {"measure", w.measure()}};
  if (w.dim() == 1) {
    const Interval iv = w.interval_form();
    j["lo"] = to_json(iv.lo);
    j["hi"] = to_json(iv.hi);
    j["bounds"] = std::string(1, iv.lo_closed ? '[' : '(') + (iv.hi_closed ? ']' : ')');
  }
  return j;
}

json to_json(const Region& r) {
  json a = json::array();
  for (const auto& s : r.sides()) a.push_back(json::array({s.lo.to_double(), s.hi.to_double()}));
  return a;
}

json to_json(const Progression& ap, const Cps* cps) {
  json j;
  if (ap.exact()) {
    j["s"] = to_json(*ap.start_coords);
    j["t"] = to_json(*ap.diff_coords);
  } else {
    j["s"] = to_json(ap.start);
    j["t"] = to_json(ap.diff);
  }
  j["k"] = ap.length;
  json phys = json::array(), star = json::array();
  for (const auto& p : ap.terms(cps)) {
    phys.push_back(p.phys.size() == 1 ? json(p.phys[0]) : to_json(p.phys));
    if (!p.internal.empty()) star.push_back(p.internal.size() == 1 ? json(p.internal[0]) : to_json(p.internal));
  }
  j["phys_terms"] = phys;
  if (!star.empty()) j["star_terms"] = star;
  return j;
}

Progression progression_from_json(const json& j) {
  Progression ap;
  auto coords = [](const json& v, const std::string& f) {
    LatticeCoords z;
    if (v.is_object()) {
      z = {to_i64(v.at("m"), f + ".m"), to_i64(v.at("n"), f + ".n")};
    } else if (v.is_array()) {
      for (const auto& e : v) z.push_back(to_i64(e, f));
    } else {
      fail(f, "expected coordinates");
    }
    return z;
  };
  if (!j.contains("s") || !j.contains("t") || !j.contains("k")) fail("progression", "needs s, t and k");
  ap.start_coords = coords(j["s"], "s");
  ap.diff_coords = coords(j["t"], "t");
  ap.length = static_cast<int>(to_i64(j["k"], "k"));
  if (j.contains("phys_terms") && j["phys_terms"].size() >= 2) {
    const auto& t = j["phys_terms"];
    if (t[0].is_number()) {
      ap.start = {t[0].get<double>()};
      ap.diff = {t[1].get<double>() - t[0].get<double>()};
    }
  }
  return ap;
}

std::string format_double(double v) { return fmt17(v); }

void write_points_csv(std::ostream& os, const PointSet& ps) {
  const Cps* cps = ps.cps();
  if (ps.exact() && cps && cps->algebraic()) {
    os << "m,n,phys,star\n";
    for (const auto& p : ps.points())
      os << (*p.coords)[0] << ',' << (*p.coords)[1] << ',' << fmt17(p.phys[0]) << ',' << fmt17(p.internal[0]) << '\n';
    return;
  }
  if (ps.exact() && cps) {
    std::string head;
    for (int i = 0; i < cps->rank(); ++i) head += "z" + std::to_string(i) + ",";
    for (int i = 0; i < cps->physical_dim(); ++i) head += "x" + std::to_string(i) + ",";
    for (int i = 0; i < cps->internal_dim(); ++i) head += "y" + std::to_string(i) + ",";
    head += "uncertain";
    os << head << '\n';
    for (const auto& p : ps.points()) {
      for (i64 v : *p.coords) os << v << ',';
      for (double v : p.phys) os << fmt17(v) << ',';
      for (double v : p.internal) os << fmt17(v) << ',';
      os << (p.boundary_uncertain ? 1 : 0) << '\n';
    }
    return;
  }
  os << "phys\n";
  for (const auto& p : ps.points()) {
    for (std::size_t i = 0; i < p.phys.size(); ++i) os << (i ? "," : "") << fmt17(p.phys[i]);
    os << '\n';
  }
}

PointSet read_points_csv(std::istream& is, std::shared_ptr<const Cps> cps, Region region, std::optional<Window> window) {
  if (!cps) throw PreconditionError("read_points_csv needs a CPS");
  std::string line;
  if (!std::getline(is, line)) fail("csv", "empty input");
  const auto head = split_csv(line);
  const std::size_t ncoord = cps->algebraic() ? 2 : static_cast<std::size_t>(cps->rank());
  if (cps->algebraic() ? (head.size() < 2 || head[0] != "m" || head[1] != "n")
                       : (head.size() < ncoord || head[0] != "z0"))
    fail("csv line 1", "unexpected header '" + line + "'");
  std::vector<LatticeCoords> coords;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != head.size()) fail("csv line " + std::to_string(row), "wrong number of fields");
    LatticeCoords z;
    for (std::size_t i = 0; i < ncoord; ++i) {
      i64 v = 0;
      const auto& c = cells[i];
      const auto r = std::from_chars(c.data(), c.data() + c.size(), v);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size()) fail("csv line " + std::to_string(row), "bad integer '" + c + "'");
      z.push_back(v);
    }
    coords.push_back(std::move(z));
  }
  return PointSet::from_lattice(std::move(cps), coords, std::move(region), std::move(window));
}

}  // namespace modelap::io
