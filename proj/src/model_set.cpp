#include "modelap/model_set.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "modelap/errors.hpp"
#include "modelap/kernels.hpp"

namespace modelap {

QuadNumber star(const QuadRing& ring, QuadElem x) { return ring.star(x); }

namespace {

void check_numeric_injective(const Cps& cps, const std::vector<LatticeCoords>& coords) {
  struct Key {
    std::vector<QuadNumber> v;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 0;
      for (const auto& x : k.v) h = h * 1000003u ^ std::hash<i64>{}(x.p()) ^ (std::hash<i64>{}(x.d()) << 1);
      return h;
    }
  };
  std::unordered_set<Key, KeyHash> seen;
  for (const auto& z : coords)
    if (!seen.insert(Key{cps.physical_exact(z)}).second)
      throw PreconditionError("numeric CPS: two lattice points share a physical projection");
}

}  // namespace

PointSet enumerate_model_set(std::shared_ptr<const Cps> cps, const Window& window, const Region& region, double guard) {
  if (!cps) throw PreconditionError("enumerate_model_set needs a CPS");
  if (region.dim() != cps->physical_dim()) throw PreconditionError("region dimension does not match the CPS");
  if (window.dim() != cps->internal_dim()) throw PreconditionError("window dimension does not match the CPS");
  if (cps->algebraic()) {
    const auto elems = kernels::parallel::enumerate_ring(cps->ring(), region.side(0), window.interval_form());
    std::vector<Point> pts;
    pts.reserve(elems.size());
    for (const auto& e : elems) pts.push_back(make_lattice_point(*cps, Cps::coords(e)));
    return PointSet(1, std::move(pts), region, cps, window);
  }
  const auto found = kernels::parallel::enumerate_numeric(*cps, region, window, guard);
  std::vector<LatticeCoords> coords;
  coords.reserve(found.size());
  for (const auto& c : found) coords.push_back(c.coords);
  check_numeric_injective(*cps, coords);
  std::vector<Point> pts;
  pts.reserve(found.size());
  for (const auto& c : found) {
    Point p = make_lattice_point(*cps, c.coords);
    p.boundary_uncertain = c.boundary_uncertain;
    pts.push_back(std::move(p));
  }
  return PointSet(cps->physical_dim(), std::move(pts), region, cps, window);
}

bool is_member(const Cps& cps, const Window& window, const LatticeCoords& z) {
  if (cps.algebraic()) return window.contains(cps.star_exact(z));
  const Coord y = cps.internal(z);
  return window.classify(std::span<const double>(y.data(), y.size()), 0.0).inside;
}

bool is_member(const Cps& cps, const Window& window, QuadElem x) { return is_member(cps, window, Cps::coords(x)); }

double covering_radius_estimate(const PointSet& ps, const Region& region, std::optional<double> pitch) {
  if (ps.empty()) throw PreconditionError("covering radius of an empty point set");
  if (region.dim() != ps.dim()) throw PreconditionError("region dimension mismatch");
  double step = 0;
  if (pitch) {
    step = *pitch;
  } else {
    if (ps.size() < 2) throw PreconditionError("default sampling pitch needs at least two points");
    step = min_gap(ps) / 4;
  }
  if (!(step > 0)) throw PreconditionError("sampling pitch must be positive");
  const double r = kernels::parallel::covering_radius(ps, region, step);
  if (!ps.region().covers(region.expanded(rational_upper(r))))
    throw PreconditionError("enumeration margin around the sample region is smaller than the covering radius");
  return r;
}

double min_gap(const PointSet& ps) {
  if (ps.size() < 2) throw PreconditionError("min_gap needs at least two points");
  return kernels::parallel::min_gap(ps);
}

double empirical_covering_radius(std::shared_ptr<const Cps> cps, const Window& window, const Region& sample,
                                 std::optional<double> pitch, bool drop_origin) {
  if (!window.has_interior()) throw PreconditionError("window has empty interior");
  double margin = std::max(1.0, sample.min_width() / 8);
  for (int attempt = 0; attempt < 40; ++attempt, margin *= 2) {
    PointSet ps = enumerate_model_set(cps, window, sample.expanded(rational_upper(margin)));
    if (drop_origin) {
      std::vector<Point> kept;
      for (const auto& p : ps.points())
        if (!(p.coords && is_zero(*p.coords))) kept.push_back(p);
      ps = PointSet(ps.dim(), std::move(kept), ps.region(), ps.cps_ptr(), ps.window());
    }
    if (ps.size() < 2) continue;
    const double step = pitch ? *pitch : std::min(min_gap(ps) / 4, sample.min_width() / 2 + 1e-12);
    const double r = kernels::parallel::covering_radius(ps, sample, step);
    if (r < margin) return r;
  }
  throw GuardExceeded("covering radius did not stabilise within the enumeration budget");
}

}  // namespace modelap
