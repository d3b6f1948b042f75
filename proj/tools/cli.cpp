#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "modelap/counterexample.hpp"
#include "modelap/density.hpp"
#include "modelap/io.hpp"
#include "modelap/meyer.hpp"
#include "modelap/model_set.hpp"
#include "modelap/progressions.hpp"
#include "modelap/vdw.hpp"

namespace modelap::cli {

namespace fs = std::filesystem;
using io::json;
using io::to_json;

namespace {

struct Context {
  std::string command;
  io::ExperimentConfig cfg;
  std::optional<fs::path> out_dir;
  std::ostream* out = nullptr;
  bool report_to_stdout = true;

  Region region_or(double lo, double hi) const {
    if (cfg.region) return *cfg.region;
    std::vector<std::pair<QuadNumber, QuadNumber>> sides(static_cast<std::size_t>(cfg.cps->physical_dim()),
                                                         {rational_lower(lo), rational_upper(hi)});
    return Region::box(sides);
  }
  Region symmetric(double h) const { return region_or(-h, h); }
  std::mt19937_64 rng() const { return std::mt19937_64(cfg.seed); }

  void write_file(const std::string& name, const std::string& body) const {
    fs::create_directories(*out_dir);
    std::ofstream f(*out_dir / name, std::ios::binary);
    f << body;
    if (!f) throw PreconditionError("cannot write " + (*out_dir / name).string());
  }
};

using Handler = std::function<json(Context&)>;

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> flags;
  Handler run;
};

std::string csv_of(const PointSet& ps) {
  std::ostringstream ss;
  io::write_points_csv(ss, ps);
  return ss.str();
}

json header(const Context& c) {
  return json{{"command", c.command}, {"cps", c.cfg.cps->name()}, {"window", to_json(c.cfg.window)}, {"seed", c.cfg.seed}};
}

double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

std::vector<Coord> sample_centers(std::mt19937_64& g, const Region& r, std::size_t count) {
  std::vector<Coord> out;
  for (std::size_t i = 0; i < count; ++i) {
    Coord c;
    for (const auto& s : r.sides()) c.push_back(uniform(g, s.lo.to_double(), s.hi.to_double()));
    out.push_back(c);
  }
  return out;
}

Progression make_progression(const Cps& cps, const LatticeCoords& s, const LatticeCoords& t, int k) {
  Progression ap;
  ap.start = cps.physical(s);
  ap.diff = cps.physical(t);
  ap.start_coords = s;
  ap.diff_coords = t;
  ap.length = k;
  return ap;
}

LatticeCoords zero_coords(const Cps& cps) {
  return LatticeCoords(static_cast<std::size_t>(cps.algebraic() ? 2 : cps.rank()), 0);
}

json point_json(const Cps& cps, const LatticeCoords& z) {
  json j{{"coords", to_json(z)}, {"phys", cps.physical(z).size() == 1 ? json(cps.physical(z)[0]) : to_json(cps.physical(z))}};
  const Coord y = cps.internal(z);
  j["star"] = y.size() == 1 ? json(y[0]) : to_json(y);
  return j;
}

json estimate_json(const DensityEstimate& e) {
  json rows = json::array();
  for (std::size_t i = 0; i < e.n.size(); ++i) rows.push_back(json{{"n", e.n[i]}, {"count", e.counts[i]}, {"partial", e.partials[i]}});
  return json{{"table", rows}, {"value", e.value}, {"oscillation", e.oscillation}};
}

double window_scale(const Window& w) { return 8.0 / std::max(w.measure(), 1e-6) + 10.0; }

QuadNumber reach_of(const Region& r) {
  QuadNumber out(0);
  for (const auto& s : r.sides()) out = std::max({out, abs(s.lo), abs(s.hi)});
  return out;
}

// --- commands ---

json cmd_generate(Context& c) {
  const Region reg = c.region_or(-50, 50);
  const PointSet ps = enumerate_model_set(c.cfg.cps, c.cfg.window, reg);
  json rep = header(c);
  rep["region"] = to_json(reg);
  rep["count"] = ps.size();
  std::size_t uncertain = 0;
  for (const auto& p : ps.points()) uncertain += p.boundary_uncertain;
  rep["boundary_uncertain"] = uncertain;
  if (c.out_dir) {
    c.write_file("points.csv", csv_of(ps));
    rep["file"] = "points.csv";
  } else {
    *c.out << csv_of(ps);
    c.report_to_stdout = false;
  }
  return rep;
}

json cmd_find_ap(Context& c) {
  const Cps& cps = *c.cfg.cps;
  const int k = static_cast<int>(c.cfg.get_int("k", 3, 2, 64));
  const LatticeCoords s = c.cfg.get_coords("start", zero_coords(cps));
  if (!is_member(cps, c.cfg.window, s)) throw PreconditionError("start point is not in the model set");
  const auto dw = difference_window(cps, c.cfg.window, s, k - 1);
  const Region search = c.region_or(-30, 30);
  const PointSet ts = enumerate_model_set(c.cfg.cps, dw.window, search);
  json diffs = json::array(), aps = json::array();
  for (const auto& p : ts.points()) {
    if (is_zero(*p.coords)) continue;
    const Progression ap = make_progression(cps, s, *p.coords, k);
    bool ok = true;
    for (int j = 0; j < k; ++j) ok = ok && is_member(cps, c.cfg.window, ap.term_coords(j));
    json d = point_json(cps, *p.coords);
    d["verified"] = ok;
    diffs.push_back(d);
    aps.push_back(to_json(ap, &cps));
  }
  json rep = header(c);
  rep["start"] = to_json(s);
  rep["k"] = k;
  rep["difference_window"] = to_json(dw.window);
  rep["search"] = to_json(search);
  rep["valid_differences"] = diffs;
  rep["progressions"] = aps;
  rep["constructive"] = to_json(constructive_ap(c.cfg.cps, c.cfg.window, s, k - 1), &cps);
  return rep;
}

json cmd_certify_ap(Context& c) {
  const Cps& cps = *c.cfg.cps;
  if (!c.cfg.has("t")) throw io::ConfigError("t", "missing (the common difference)");
  const int k = static_cast<int>(c.cfg.get_int("k", 3, 2, 100000));
  const LatticeCoords s = c.cfg.get_coords("start", zero_coords(cps));
  const LatticeCoords t = c.cfg.get_coords("t", zero_coords(cps));
  const Progression ap = make_progression(cps, s, t, k);
  json terms = json::array();
  bool ok = !is_zero(t);
  for (int j = 0; j < k; ++j) {
    const LatticeCoords z = ap.term_coords(j);
    json e = point_json(cps, z);
    e["j"] = j;
    e["member"] = is_member(cps, c.cfg.window, z);
    if (cps.algebraic()) e["star_exact"] = cps.star_exact(z).to_string();
    ok = ok && e["member"].get<bool>();
    terms.push_back(e);
  }
  json rep = header(c);
  rep["progression"] = to_json(ap, &cps);
  rep["terms"] = terms;
  rep["nontrivial"] = !is_zero(t);
  rep["ok"] = ok && verify_ap(ap, &cps);
  return rep;
}

json cmd_diff_window(Context& c) {
  const Cps& cps = *c.cfg.cps;
  const int n = static_cast<int>(c.cfg.get_int("n", 2, 1, 100000));
  const LatticeCoords s = c.cfg.get_coords("start", zero_coords(cps));
  const auto dw = difference_window(cps, c.cfg.window, s, n);
  const Region reg = c.region_or(-30, 30);
  const PointSet ts = enumerate_model_set(c.cfg.cps, dw.window, reg);
  json pts = json::array();
  for (const auto& p : ts.points()) pts.push_back(point_json(cps, *p.coords));
  json rep = header(c);
  rep["start"] = to_json(s);
  rep["n"] = n;
  rep["difference_window"] = to_json(dw.window);
  rep["region"] = to_json(reg);
  rep["differences"] = pts;
  return rep;
}

json cmd_bounded_gap(Context& c) {
  const int n = static_cast<int>(c.cfg.get_int("n", 2, 1, 64));
  const auto centers_n = static_cast<std::size_t>(c.cfg.get_int("centers", 20, 0, 100000));
  const BoundedGap bg = bounded_gap(c.cfg.cps, c.cfg.window, n);
  const Region reg = c.symmetric(1000);
  auto g = c.rng();
  const auto centers = sample_centers(g, reg, centers_n);
  json checks = json::array();
  std::size_t failures = 0;
  if (!centers.empty()) {
    const PointSet ps = enumerate_model_set(c.cfg.cps, c.cfg.window, reg.expanded(rational_upper(bg.radius + 1)));
    const Coloring one = color(ps, ColoringScheme::constant, 1);
    for (const auto& x : centers) {
      const auto ap = find_monochromatic_ap(ps, one, n + 1, x, bg.radius);
      if (!ap) ++failures;
      checks.push_back(json{{"center", to_json(x)}, {"ap", ap ? to_json(*ap, c.cfg.cps.get()) : json()}});
    }
  }
  json rep = header(c);
  rep["n"] = n;
  rep["radius"] = bg.radius;
  rep["r_prime"] = bg.r_prime;
  rep["r_second"] = bg.r_second;
  rep["closed_form"] = bg.closed_form;
  if (bg.v) rep["v"] = to_json(*bg.v);
  if (bg.u) rep["u"] = to_json(*bg.u);
  rep["checks"] = checks;
  rep["failures"] = failures;
  return rep;
}

json cmd_vdw_oracle(Context& c) {
  const int r = static_cast<int>(c.cfg.get_int("r", 2, 1, 16));
  const int k = static_cast<int>(c.cfg.get_int("k", 3, 2, 64));
  const int n_max = static_cast<int>(c.cfg.get_int("n_max", kVdwGuard, 1, 1 << 20));
  const auto res = vdw_number_oracle(r, k, n_max);
  json rep{{"command", c.command}, {"r", r}, {"k", k}, {"n_max", n_max}};
  rep["value"] = res.value ? json(*res.value) : json();
  rep["witness"] = res.witness;
  rep["nodes"] = res.nodes;
  return rep;
}

json cmd_vdw_experiment(Context& c) {
  const int r = static_cast<int>(c.cfg.get_int("r", 2, 1, 16));
  const int k = static_cast<int>(c.cfg.get_int("k", 3, 2, 64));
  const auto centers_n = static_cast<std::size_t>(c.cfg.get_int("centers", 50, 1, 100000));
  const auto random_n = static_cast<std::size_t>(c.cfg.get_int("colorings", 5, 0, 1000));
  const auto rad = model_vdw_radius(c.cfg.cps, c.cfg.window, r, k);
  const Region reg = c.symmetric(1000);
  const PointSet ps = enumerate_model_set(c.cfg.cps, c.cfg.window, reg.expanded(rational_upper(rad.radius + 1)));
  auto g = c.rng();
  std::vector<Coloring> cols;
  for (std::size_t i = 0; i < random_n; ++i) cols.push_back(color(ps, ColoringScheme::random, r, g()));
  if (c.cfg.window.dim() == 1) cols.push_back(color(ps, ColoringScheme::internal_threshold, r));
  if (cols.empty()) throw PreconditionError("no colourings to test");
  const auto centers = sample_centers(g, reg, centers_n);
  const auto cert = certify_vdw(ps, cols, centers, r, k, rad.n, rad.radius);
  const Cps* cps = c.cfg.cps.get();
  json trace = json::array();
  std::size_t failures = 0;
  for (const auto& e : cert.trace) {
    failures += !e.ok;
    json t{{"center", to_json(e.center)}, {"coloring", e.coloring}, {"ok", e.ok}};
    t["ap"] = e.ap ? to_json(*e.ap, cps) : json();
    if (e.carrier) {
      t["carrier"] = to_json(*e.carrier, cps);
      t["integer_ap"] = e.integer_ap;
      t["transferred"] = e.transferred ? to_json(*e.transferred, cps) : json();
      t["transfer_ok"] = e.transfer_ok;
    }
    trace.push_back(t);
  }
  json seeds = json::array();
  for (const auto& col : cols) seeds.push_back(col.describe());
  json rep = header(c);
  rep["r"] = r;
  rep["k"] = k;
  rep["vdw_number"] = rad.n;
  rep["radius"] = rad.radius;
  rep["colorings"] = seeds;
  rep["failures"] = failures;
  rep["ok"] = cert.all_ok();
  rep["trace"] = trace;
  return rep;
}

json cmd_meyer_check(Context& c) {
  const Region reg = c.symmetric(100);
  const Window w = c.cfg.has("sub_window") ? c.cfg.get_window("sub_window") : c.cfg.window;
  const PointSet ps = enumerate_model_set(c.cfg.cps, w, reg.expanded(rational_upper(window_scale(w))));
  const double threshold = c.cfg.get_double("threshold", 1e-3);
  const auto m = check_meyer(ps, reg, threshold);
  json rep = header(c);
  rep["set_window"] = to_json(w);
  rep["region"] = to_json(reg);
  rep["covering_radius"] = m.covering_radius;
  rep["relatively_dense"] = m.relatively_dense;
  rep["difference_count"] = m.diff_size;
  rep["difference_min_gap"] = m.diff_min_gap;
  rep["threshold"] = m.threshold;
  rep["uniformly_discrete_differences"] = m.diff_uniformly_discrete;
  rep["meyer"] = m.relatively_dense && m.diff_uniformly_discrete;
  return rep;
}

json cmd_find_cover(Context& c) {
  const Window sw = c.cfg.get_window("sub_window");
  const Region reg = c.symmetric(200);
  const QuadNumber margin = rational_upper(2 * window_scale(sw));
  const PointSet full = enumerate_model_set(c.cfg.cps, c.cfg.window, reg.expanded(margin));
  const PointSet sub = enumerate_model_set(c.cfg.cps, sw, reg.expanded(margin));
  const auto guard = static_cast<std::size_t>(c.cfg.get_int("guard", static_cast<i64>(kCoverGuard), 1, 4096));
  const auto f = find_cover_F(sub, full, reg, guard);
  json fj = json::array();
  for (const auto& z : f) fj.push_back(point_json(*c.cfg.cps, z));
  json rep = header(c);
  rep["sub_window"] = to_json(sw);
  rep["region"] = to_json(reg);
  rep["F"] = fj;
  rep["size"] = f.size();
  rep["cover_ok"] = check_cover(sub, full, f, reg);
  if (c.cfg.has("r") || c.cfg.has("k")) {
    const int r = static_cast<int>(c.cfg.get_int("r", 2, 1, 16));
    const int k = static_cast<int>(c.cfg.get_int("k", 3, 2, 64));
    const auto mv = meyer_vdw_radius(sub, full, f, r, k, reg);
    rep["vdw"] = json{{"r", r},
                      {"k", k},
                      {"n", mv.n},
                      {"r_prime", mv.r_prime},
                      {"max_shift", mv.max_shift},
                      {"radius", mv.radius},
                      {"route", mv.route == MeyerRoute::cover_classes ? "cover_classes" : "product_coloring"}};
  }
  return rep;
}

AveragingSequence averaging_or(const Context& c, AveragingSequence fallback) {
  return c.cfg.averaging ? *c.cfg.averaging : fallback;
}

json cmd_density(Context& c) {
  const int d = c.cfg.cps->physical_dim();
  const auto avg = averaging_or(c, AveragingSequence::geometric(d, 10, 10000, 7));
  avg.validate();
  const PointSet ps = enumerate_model_set(c.cfg.cps, c.cfg.window, avg.region(avg.largest()));
  json rep = header(c);
  rep["estimate"] = estimate_json(density(ps, avg));
  rep["lattice_density"] = c.cfg.cps->density();
  rep["window_measure"] = c.cfg.window.measure();
  rep["target"] = c.cfg.cps->density() * c.cfg.window.measure();
  return rep;
}

json cmd_almost_periods(Context& c) {
  const double eps = c.cfg.get_double("eps", 0.1);
  if (!(eps > 0)) throw io::ConfigError("eps", "must be positive");
  const int d = c.cfg.cps->physical_dim();
  const auto avg = averaging_or(c, AveragingSequence::single(d, 1000));
  avg.validate();
  const Region search = c.cfg.get_region("search", c.region_or(0, 100));
  const Region box = avg.region(avg.largest()).expanded(reach_of(search) + QuadNumber(1));
  const PointSet ps = enumerate_model_set(c.cfg.cps, c.cfg.window, box);
  json list = json::array();
  for (const auto& a : almost_periods(ps, eps, search, avg))
    list.push_back(json{{"t", to_json(a.t)}, {"phys", a.phys}, {"d_b", a.d_b}});
  json rep = header(c);
  rep["eps"] = eps;
  rep["n"] = avg.largest();
  rep["search"] = to_json(search);
  rep["count"] = list.size();
  rep["almost_periods"] = list;
  return rep;
}

json cmd_verify_p6(Context& c) {
  const double eps = c.cfg.get_double("eps", 0.25);
  const int n = static_cast<int>(c.cfg.get_int("n", 3, 1, 64));
  const double tol = c.cfg.get_double("tol", 0.02);
  const int d = c.cfg.cps->physical_dim();
  const auto avg = averaging_or(c, AveragingSequence::single(d, 10000));
  avg.validate();
  const Region search = c.cfg.get_region("search", c.region_or(0, 1000));
  const Region box = avg.region(avg.largest()).expanded(reach_of(search) * n + QuadNumber(1));
  const PointSet ps = enumerate_model_set(c.cfg.cps, c.cfg.window, box);
  const auto p6 = verify_p6(ps, eps, n, avg, search, tol);
  json entries = json::array();
  for (const auto& e : p6.entries)
    entries.push_back(json{{"t", to_json(e.t)},
                           {"phys", e.phys},
                           {"d_b", e.d_b},
                           {"density_gamma", e.density_gamma},
                           {"density_ok", e.density_ok},
                           {"inclusion_ok", e.inclusion_ok},
                           {"inclusion_checked", e.inclusion_checked},
                           {"chain_lhs", e.chain_lhs},
                           {"chain_rhs", e.chain_rhs},
                           {"chain_ok", e.chain_ok}});
  json rep = header(c);
  rep["eps"] = eps;
  rep["n"] = n;
  rep["averaging_n"] = avg.largest();
  rep["density"] = p6.density;
  rep["threshold"] = p6.threshold;
  rep["tolerance"] = p6.tolerance;
  rep["nonzero_count"] = p6.nonzero_count();
  rep["ok"] = p6.all_ok();
  rep["entries"] = entries;
  return rep;
}

json cmd_autocorr(Context& c) {
  const i64 n = c.cfg.get_int("n", 1000, 1, i64(1) << 40);
  const Region cap = c.cfg.get_region("z_cap", c.region_or(0, 10));
  const PointSet ps =
      enumerate_model_set(c.cfg.cps, c.cfg.window, Region::symmetric(c.cfg.cps->physical_dim(), QuadNumber(n)));
  json list = json::array();
  for (const auto& e : autocorrelation_coeffs(ps, n, cap))
    list.push_back(json{{"z", e.z ? to_json(*e.z) : json()}, {"phys", e.phys}, {"pairs", e.pairs}, {"eta", e.eta}});
  json rep = header(c);
  rep["n"] = n;
  rep["z_cap"] = to_json(cap);
  rep["coefficients"] = list;
  return rep;
}

json no3ap_json(const No3apReport& r) {
  return json{{"size", r.size},
              {"min_residual", r.min_residual},
              {"residual", r.residual},
              {"triple", json::array({r.a, r.b, r.c})},
              {"tol", r.tol},
              {"passes", r.passes}};
}

json cmd_no3ap(Context& c) {
  const int n = static_cast<int>(c.cfg.get_int("n", 100, 0, 100000));
  const int digits = c.cfg.precision.value_or(60);
  const double tol = c.cfg.get_double("tol", 1e-9);
  const auto set = counterexample_set(n, digits);
  std::vector<QuadElem> ints;
  for (i64 m = -n; m <= n; ++m) ints.push_back({m, 0});
  const auto z = std::make_shared<const Cps>(Cps::golden());
  const PointSet control = PointSet::from_ring(z, ints, Region::interval(QuadNumber(-n), QuadNumber(n)));
  json rep{{"command", c.command}, {"n", n}, {"precision", digits}, {"required_digits", required_digits(n)}};
  rep["counterexample"] = no3ap_json(verify_no_3ap(set, tol));
  rep["integer_control"] = no3ap_json(verify_no_3ap(control, tol));
  return rep;
}

json cmd_reproduce_figures(Context& c) {
  const Cps& cps = *c.cfg.cps;
  if (cps.physical_dim() != 1 || cps.internal_dim() != 1) throw PreconditionError("figures need a one-dimensional scheme");
  if (!c.out_dir) c.out_dir = fs::path("figures");
  const Region reg = c.region_or(-10, 10);
  const Interval w = c.cfg.window.interval_form();
  const bool degenerate = !(reg.side(0).lo < reg.side(0).hi);

  std::ostringstream lattice, strip, fig2;
  lattice << "m,n,phys,star,in_window\n";
  strip << "phys_lo,phys_hi,star_lo,star_hi,lo_closed,hi_closed\n";
  fig2 << "j,m,n,phys,star,star_over_r\n";
  PointSet model(1, {}, reg, c.cfg.cps, c.cfg.window);
  json fig2_json;
  std::size_t lattice_count = 0;
  if (!degenerate) {
    const QuadNumber len = w.length();
    const Window wide = Window::interval(Interval::closed(w.lo - len, w.hi + len));
    const PointSet around = enumerate_model_set(c.cfg.cps, wide, reg);
    for (const auto& p : around.points()) {
      const bool in = is_member(cps, c.cfg.window, *p.coords);
      if (cps.algebraic()) {
        lattice << (*p.coords)[0] << ',' << (*p.coords)[1];
      } else {
        for (std::size_t i = 0; i < p.coords->size(); ++i) lattice << (i ? "," : "") << (*p.coords)[i];
      }
      lattice << ',' << io::format_double(p.phys[0]) << ',' << io::format_double(p.internal[0]) << ',' << (in ? 1 : 0) << '\n';
      ++lattice_count;
    }
    strip << io::format_double(reg.side(0).lo.to_double()) << ',' << io::format_double(reg.side(0).hi.to_double()) << ','
          << io::format_double(w.lo.to_double()) << ',' << io::format_double(w.hi.to_double()) << ',' << w.lo_closed << ','
          << w.hi_closed << '\n';
    model = enumerate_model_set(c.cfg.cps, c.cfg.window, reg);

    // the progression of length 5 from 0 with difference 3 tau + 2 in the golden case
    const LatticeCoords s = zero_coords(cps);
    const Progression ap = cps.is_golden() ? make_progression(cps, s, LatticeCoords{2, 3}, 5)
                                           : constructive_ap(c.cfg.cps, c.cfg.window, s, 4);
    const double rp = cps.internal(*ap.diff_coords)[0];
    for (int j = 0; j < ap.length; ++j) {
      const LatticeCoords z = ap.term_coords(j);
      fig2 << j << ',' << z[0] << ',' << z[1];
      const double st = cps.internal(z)[0];
      fig2 << ',' << io::format_double(cps.physical(z)[0]) << ',' << io::format_double(st) << ','
           << io::format_double(st / rp) << '\n';
    }
    fig2_json = to_json(ap, &cps);
    fig2_json["all_members"] = [&] {
      for (int j = 0; j < ap.length; ++j)
        if (!is_member(cps, c.cfg.window, ap.term_coords(j))) return false;
      return true;
    }();
  }
  c.write_file("fig1_lattice.csv", lattice.str());
  c.write_file("fig1_strip.csv", strip.str());
  c.write_file("fig1_model.csv", csv_of(model));
  c.write_file("fig2_progression.csv", fig2.str());

  json rep = header(c);
  rep["region"] = to_json(reg);
  rep["files"] = json::array({"fig1_lattice.csv", "fig1_strip.csv", "fig1_model.csv", "fig2_progression.csv"});
  rep["lattice_points"] = lattice_count;
  rep["model_points"] = model.size();
  rep["fig2"] = fig2_json;
  return rep;
}

const std::vector<Command>& table() {
  static const std::vector<Command> t = {
      {"generate", "Model-set points in a region as CSV", {}, cmd_generate},
      {"find-ap", "Valid differences and progressions from a start point", {"k", "start"}, cmd_find_ap},
      {"certify-ap", "Exact membership check of a progression s + jt", {"k", "start", "t"}, cmd_certify_ap},
      {"diff-window", "Window of valid differences for n steps from s", {"n", "start"}, cmd_diff_window},
      {"bounded-gap", "Radius containing (n+1)-term progressions, with sampled checks", {"n", "centers"}, cmd_bounded_gap},
      {"vdw-oracle", "Exact van der Waerden numbers by backtracking", {"r", "k", "n-max"}, cmd_vdw_oracle},
      {"vdw-experiment", "Monochromatic progressions in balls of the model-set vdW radius",
       {"r", "k", "centers", "colorings"}, cmd_vdw_experiment},
      {"meyer-check", "Relative denseness and uniform discreteness of differences", {"sub-window", "threshold"},
       cmd_meyer_check},
      {"find-cover", "Finite F with model set inside Meyer subset + F", {"sub-window", "r", "k", "guard"}, cmd_find_cover},
      {"density", "Density along the averaging sequence", {}, cmd_density},
      {"almost-periods", "Translations with small d_B", {"eps", "search"}, cmd_almost_periods},
      {"verify-p6", "Density of intersections of translates by almost periods", {"eps", "n", "search", "tol"},
       cmd_verify_p6},
      {"autocorr", "Finite-n autocorrelation coefficients", {"n", "z-cap"}, cmd_autocorr},
      {"no3ap", "3-AP residual scan of the perturbed integer set and of Z", {"n", "tol"}, cmd_no3ap},
      {"reproduce-figures", "Plot data for the model-set construction and a 5-term progression", {},
       cmd_reproduce_figures},
  };
  return t;
}

// flag text -> config value: integers, numbers and "a,b" integer pairs become
// JSON values; anything else stays a string for the config validator
json flag_value(const std::string& s) {
  if (s.find(',') != std::string::npos) {
    json arr = json::array();
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) arr.push_back(flag_value(part));
    return arr;
  }
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return json(static_cast<i64>(v));
  } catch (const std::exception&) {
  }
  return json(s);
}

std::string key_of(const std::string& flag) {
  std::string k = flag;
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

// a number as text, or a JSON object such as {"m": -1, "n": 1}
json cell(const std::string& s, const std::string& field) {
  if (s.empty() || s[0] != '{') return json(s);
  try {
    return json::parse(s);
  } catch (const json::parse_error&) {
    throw io::ConfigError(field, "malformed value '" + s + "'");
  }
}

bool pair_flag(const std::string& f) { return f == "search" || f == "z-cap" || f == "sub-window"; }

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : table()) v.push_back(c.name);
    return v;
  }();
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model sets, arithmetic progressions and density experiments", "modelap"};
  app.require_subcommand(1);

  if (args.empty() || (args[0] != "-h" && args[0] != "--help" && !std::count(commands().begin(), commands().end(), args[0]))) {
    err << "unknown command" << (args.empty() ? "" : " '" + args[0] + "'") << "; expected one of:";
    for (const auto& n : commands()) err << ' ' << n;
    err << '\n';
    return kExitUnknownCommand;
  }

  std::string config_path, out_dir;
  std::vector<std::string> region;
  std::optional<std::uint64_t> seed;
  std::optional<int> precision;
  std::map<std::string, std::vector<std::string>> extra;
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : table()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "Experiment config (JSON)");
    sub->add_option("--region", region, "Physical region A B")->expected(2)->allow_extra_args(false);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed of the run's generator");
    sub->add_option("--precision", precision, "Significant digits for extended precision");
    for (const auto& f : c.flags) {
      auto* opt = sub->add_option("--" + f, extra[f]);
      opt->expected(pair_flag(f) ? 2 : 1)->allow_extra_args(false);
    }
    subs[c.name] = sub;
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  const Command* cmd = nullptr;
  for (const auto& c : table())
    if (subs[c.name]->parsed()) cmd = &c;

  try {
    Context ctx;
    ctx.command = cmd->name;
    ctx.out = &out;
    ctx.cfg = config_path.empty() ? io::default_config() : io::load_config(config_path);
    if (!region.empty()) {
      json r = json::array();
      for (int i = 0; i < ctx.cfg.cps->physical_dim(); ++i) r.push_back(json::array({cell(region[0], "--region"), cell(region[1], "--region")}));
      ctx.cfg.region = io::parse_region(ctx.cfg.cps->physical_dim() == 1 ? r[0] : r, *ctx.cfg.cps, "--region");
    }
    if (seed) ctx.cfg.seed = *seed;
    if (precision) {
      if (*precision < 17) throw io::ConfigError("--precision", "must be at least 17");
      ctx.cfg.precision = *precision;
    }
    for (const auto& [f, v] : extra) {
      if (v.empty()) continue;
      if (f == "sub-window") {
        ctx.cfg.params["sub_window"] = json{{"lo", cell(v[0], "--sub-window")}, {"hi", cell(v[1], "--sub-window")}};
      } else if (pair_flag(f)) {
        ctx.cfg.params[key_of(f)] = json::array({cell(v[0], "--" + f), cell(v[1], "--" + f)});
      } else {
        ctx.cfg.params[key_of(f)] = flag_value(v[0]);
      }
    }
    if (!out_dir.empty()) ctx.out_dir = fs::path(out_dir);

    const json rep = cmd->run(ctx);
    const std::string body = rep.dump(2) + "\n";
    if (ctx.report_to_stdout) out << body;
    if (ctx.out_dir) ctx.write_file(cmd->name + ".json", body);
    return kExitOk;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::overflow_error& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const fs::filesystem_error& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  }
}

}  // namespace modelap::cli
