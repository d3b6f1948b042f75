#include "modelap/progressions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modelap/errors.hpp"
#include "modelap/kernels.hpp"
#include "modelap/model_set.hpp"

namespace modelap {

namespace {

constexpr double kTau = std::numbers::phi;

Coord difference(const Coord& a, const Coord& b) {
  Coord d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// |phys(a)| < |phys(b)|, exactly in algebraic mode; ties broken lexicographically on coords.
bool smaller_difference(const Cps& cps, const LatticeCoords& a, const LatticeCoords& b) {
  if (cps.algebraic()) {
    const auto c = abs(cps.phys_exact(a)) <=> abs(cps.phys_exact(b));
    if (c != 0) return c < 0;
  } else {
    const double na = norm(cps.physical(a));
    const double nb = norm(cps.physical(b));
    if (na != nb) return na < nb;
  }
  return a < b;
}

std::optional<LatticeCoords> nearest_nonzero(const PointSet& ps) {
  std::optional<LatticeCoords> best;
  for (const auto& p : ps.points()) {
    if (!p.coords || is_zero(*p.coords)) continue;
    if (!best || smaller_difference(*ps.cps(), *p.coords, *best)) best = *p.coords;
  }
  return best;
}

// Doubles a symmetric search box until the model set of `w` has a nonzero point.
LatticeCoords nearest_nonzero_in(const std::shared_ptr<const Cps>& cps, const Window& w) {
  for (double half = 8; half < 1e9; half *= 2) {
    const PointSet ps = enumerate_model_set(cps, w, Region::symmetric(cps->physical_dim(), rational_upper(half)));
    if (auto y = nearest_nonzero(ps)) return *y;
  }
  throw GuardExceeded("no nonzero element found in the window's model set within the search budget");
}

Window centered_ball(int dim, const QuadNumber& radius) {
  if (dim == 1) return Window::interval(Interval::open(-radius, radius));
  return Window::ball(std::vector<QuadNumber>(static_cast<std::size_t>(dim), QuadNumber(0)), radius, false);
}

}  // namespace

Coord Progression::term(int j) const {
  Coord x(start);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += j * diff[i];
  return x;
}

LatticeCoords Progression::term_coords(int j) const {
  if (!exact()) throw PreconditionError("progression has no lattice coordinates");
  return *start_coords + static_cast<i64>(j) * *diff_coords;
}

std::vector<Point> Progression::terms(const Cps* cps) const {
  std::vector<Point> out;
  for (int j = 0; j < length; ++j) {
    if (exact() && cps) {
      out.push_back(make_lattice_point(*cps, term_coords(j)));
    } else {
      out.push_back(Point{term(j), {}, std::nullopt, false});
    }
  }
  return out;
}

bool verify_ap(std::span<const Point> seq, double tol) {
  if (seq.size() < 2) throw PreconditionError("verify_ap needs at least two points");
  const bool exact = std::all_of(seq.begin(), seq.end(), [](const Point& p) { return p.coords.has_value(); });
  if (exact) {
    const LatticeCoords t = *seq[1].coords - *seq[0].coords;
    if (is_zero(t)) return false;
    for (std::size_t j = 2; j < seq.size(); ++j)
      if (*seq[j].coords - *seq[j - 1].coords != t) return false;
    return true;
  }
  const Coord t = difference(seq[1].phys, seq[0].phys);
  if (norm(t) <= tol) return false;
  for (std::size_t j = 2; j < seq.size(); ++j)
    if (distance(difference(seq[j].phys, seq[j - 1].phys), t) > tol) return false;
  return true;
}

bool verify_ap(const Progression& ap, const Cps* cps, double tol) {
  const auto pts = ap.terms(cps);
  return verify_ap(std::span<const Point>(pts), tol);
}

std::vector<Progression> find_aps_bruteforce(const PointSet& ps, int k) {
  const auto records = kernels::parallel::find_aps(ps, k);
  std::vector<Progression> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const Point& a = ps[r.first];
    const Point& b = ps[r.second];
    Progression ap;
    ap.start = a.phys;
    ap.diff = difference(b.phys, a.phys);
    if (a.coords && b.coords) {
      ap.start_coords = *a.coords;
      ap.diff_coords = *b.coords - *a.coords;
    }
    ap.length = r.length;
    out.push_back(std::move(ap));
  }
  return out;
}

DifferenceWindow difference_window(const Cps& cps, const Window& w, const LatticeCoords& s, int n) {
  if (n < 1) throw PreconditionError("difference_window needs n >= 1");
  if (!is_member(cps, w, s)) throw PreconditionError("anchor is not a point of the model set");
  if (cps.algebraic()) {
    const Interval iv = w.interval_form();
    const QuadNumber ss = cps.star_exact(s);
    const Interval out{(iv.lo - ss) / n, (iv.hi - ss) / n, iv.lo_closed, iv.hi_closed};
    return {Window::interval(out), s, n};
  }
  const Coord y = cps.internal(s);
  const double slack = w.signed_boundary_distance(std::span<const double>(y.data(), y.size()));
  if (!(slack > 0)) throw PreconditionError("anchor lies on the window boundary");
  return {centered_ball(cps.internal_dim(), rational_lower(slack / n)), s, n};
}

Progression constructive_ap(std::shared_ptr<const Cps> cps, const Window& w, const LatticeCoords& s, int n,
                            std::optional<Region> region) {
  if (!cps) throw PreconditionError("constructive_ap needs a CPS");
  const DifferenceWindow dw = difference_window(*cps, w, s, n);
  LatticeCoords t;
  if (region) {
    const PointSet cand = enumerate_model_set(cps, dw.window, *region);
    auto y = nearest_nonzero(cand);
    if (!y) throw PreconditionError("search region holds no nonzero difference; widen it");
    t = *y;
  } else {
    t = nearest_nonzero_in(cps, dw.window);
  }
  Progression ap;
  ap.start_coords = s;
  ap.diff_coords = t;
  ap.start = cps->physical(s);
  ap.diff = cps->physical(t);
  ap.length = n + 1;
  ap.witness = dw.window;
  return ap;
}

double punctured_covering_radius(std::shared_ptr<const Cps> cps, const Window& u, const Region& sample,
                                 std::optional<double> pitch) {
  if (!cps) throw PreconditionError("punctured_covering_radius needs a CPS");
  if (!u.has_interior()) throw PreconditionError("window has empty interior");
  const Coord origin(static_cast<std::size_t>(u.dim()), 0.0);
  const MembershipResult m = u.classify(std::span<const double>(origin.data(), origin.size()), 0.0);
  if (!m.inside || u.signed_boundary_distance(std::span<const double>(origin.data(), origin.size())) <= 0)
    throw PreconditionError("window must contain the origin in its interior");
  return empirical_covering_radius(std::move(cps), u, sample, pitch, true);
}

double fact_r1_radius(double a, double b) {
  if (!(a < b)) throw PreconditionError("fact_r1_radius needs a < b");
  return kTau * kTau * kTau / (b - a);
}

Window fibonacci_window() {
  return Window::interval(Interval::half_open(QuadNumber(-1), QuadRing::golden().phys(QuadElem{-1, 1})));
}

bool is_fibonacci_window(const Cps& cps, const Window& w) {
  if (!cps.is_golden() || w.dim() != 1) return false;
  const Interval iv = w.interval_form();
  const Interval ref = fibonacci_window().interval_form();
  return iv.lo == ref.lo && iv.hi == ref.hi && iv.lo_closed && !iv.hi_closed;
}

BoundedGap bounded_gap(std::shared_ptr<const Cps> cps, const Window& w, int n) {
  if (!cps) throw PreconditionError("bounded_gap needs a CPS");
  if (n < 1) throw PreconditionError("bounded_gap needs n >= 1");
  if (!w.has_interior()) throw PreconditionError("window has empty interior");
  BoundedGap g;
  const double tau2 = kTau * kTau;
  if (is_fibonacci_window(*cps, w)) {
    g.closed_form = true;
    g.r_prime = 2 * tau2;
    g.r_second = 2 * n * tau2;
    g.radius = 2.0 * (static_cast<double>(n) * n + 1) * tau2;
    return g;
  }
  g.v = w.middle_half();
  if (cps->algebraic()) {
    const Interval iv = w.interval_form();
    g.u = centered_ball(1, iv.length() / (4 * n));
  } else {
    g.u = centered_ball(cps->internal_dim(), rational_lower(w.inradius() / (2 * n)));
  }
  const LatticeCoords y = nearest_nonzero_in(cps, *g.u);
  const double y_norm = norm(cps->physical(y));
  if (cps->is_golden()) {
    g.r_prime = fact_r1_radius(0, g.v->measure());
    g.r_second = fact_r1_radius(0, g.u->measure()) + y_norm;
  } else {
    const Region sample = Region::symmetric(cps->physical_dim(), QuadNumber(200));
    g.r_prime = empirical_covering_radius(cps, *g.v, sample);
    g.r_second = empirical_covering_radius(cps, *g.u, sample) + y_norm;
  }
  g.radius = g.r_prime + n * g.r_second;
  return g;
}

double bounded_gap_radius(std::shared_ptr<const Cps> cps, const Window& w, int n) {
  return bounded_gap(std::move(cps), w, n).radius;
}

}  // namespace modelap
