#include "modelap/meyer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "modelap/errors.hpp"
#include "modelap/kernels.hpp"
#include "modelap/model_set.hpp"

namespace modelap {

namespace {

Region difference_cap(const Region& r) {
  std::vector<std::pair<QuadNumber, QuadNumber>> sides;
  for (const auto& s : r.sides()) sides.emplace_back(s.lo - s.hi, s.hi - s.lo);
  return Region::box(sides);
}

double max_norm(const Cps& cps, const std::vector<LatticeCoords>& f) {
  double m = 0;
  for (const auto& t : f) m = std::max(m, norm(cps.physical(t)));
  return m;
}

void require_exact_pair(const PointSet& a, const PointSet& b) {
  if (!a.exact() || !b.exact()) throw PreconditionError("cover computations need lattice point sets");
  if (!(*a.cps() == *b.cps())) throw PreconditionError("point sets come from different schemes");
}

void require_margin(const PointSet& sub, const Region& region, double shift) {
  if (!sub.region().covers(region.expanded(rational_upper(shift))))
    throw PreconditionError("enumerated region does not cover the cover region plus the shifts in F");
}

// -1 when |phys(a)| < |phys(b)|, exact in algebraic mode.
int compare_norm(const Cps& cps, const LatticeCoords& a, const LatticeCoords& b) {
  if (cps.algebraic()) {
    const auto c = abs(cps.phys_exact(a)) <=> abs(cps.phys_exact(b));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  const double na = norm(cps.physical(a));
  const double nb = norm(cps.physical(b));
  return na < nb ? -1 : (na > nb ? 1 : 0);
}

// Index of the point of ps nearest to x; ties go to the smaller point.
std::size_t nearest_index(const PointSet& ps, const LatticeCoords& x) {
  const Cps& cps = *ps.cps();
  std::vector<std::size_t> cand;
  if (ps.exact_1d()) {
    const QuadElem xe = Cps::elem(x);
    const auto& pts = ps.points();
    const auto it = std::partition_point(pts.begin(), pts.end(), [&](const Point& p) {
      return cps.ring().compare_phys(Cps::elem(*p.coords), xe) < 0;
    });
    const auto pos = static_cast<std::size_t>(it - pts.begin());
    if (pos > 0) cand.push_back(pos - 1);
    if (pos < ps.size()) cand.push_back(pos);
  } else {
    for (std::size_t i = 0; i < ps.size(); ++i) cand.push_back(i);
  }
  std::size_t best = cand.front();
  for (std::size_t i : cand) {
    const int c = compare_norm(cps, *ps[i].coords - x, *ps[best].coords - x);
    if (c < 0 || (c == 0 && ps.compare(ps[i], ps[best]) < 0)) best = i;
  }
  return best;
}

bool covered(const PointLookup& lookup, const LatticeCoords& x, const std::vector<LatticeCoords>& f) {
  return std::any_of(f.begin(), f.end(), [&](const LatticeCoords& t) { return lookup.find(x - t).has_value(); });
}

}  // namespace

PointSet difference_set(const PointSet& ps, const Region& cap) {
  if (cap.dim() != ps.dim()) throw PreconditionError("cap dimension mismatch");
  double lo = 0, hi = 0;
  for (const auto& s : cap.sides()) {
    lo = std::min(lo, s.lo.to_double());
    hi = std::max(hi, s.hi.to_double());
  }
  if (ps.exact_1d()) {
    // stream the pairs row by row; only the distinct differences are kept
    const std::vector<double> x = ps.phys_values();
    std::unordered_set<QuadElem, QuadElemHash> all;
    const auto rows = static_cast<long long>(ps.size());
#pragma omp parallel
    {
      std::unordered_set<QuadElem, QuadElemHash> local;
#pragma omp for schedule(dynamic, 256) nowait
      for (long long i = 0; i < rows; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        const QuadElem a = Cps::elem(*ps[static_cast<std::size_t>(i)].coords);
        auto j = std::lower_bound(x.begin(), x.end(), xi - hi - 1e-6);
        const auto j_end = std::upper_bound(x.begin(), x.end(), xi - lo + 1e-6);
        for (; j < j_end; ++j) local.insert(a - Cps::elem(*ps[static_cast<std::size_t>(j - x.begin())].coords));
      }
#pragma omp critical
      all.insert(local.begin(), local.end());
    }
    std::vector<QuadElem> diffs(all.begin(), all.end());
    std::sort(diffs.begin(), diffs.end());
    return PointSet::from_ring(ps.cps_ptr(), diffs, cap).restricted(cap);
  }
  const auto pairs = kernels::parallel::difference_pairs(ps, lo - 1e-6, hi + 1e-6);
  if (ps.exact()) {
    std::unordered_set<LatticeCoords, LatticeCoordsHash> seen;
    std::vector<LatticeCoords> diffs;
    for (const auto& [i, j] : pairs) {
      LatticeCoords d = *ps[i].coords - *ps[j].coords;
      if (seen.insert(d).second) diffs.push_back(std::move(d));
    }
    return PointSet::from_lattice(ps.cps_ptr(), diffs, cap).restricted(cap);
  }
  std::vector<Point> pts;
  for (const auto& [i, j] : pairs) {
    Coord d(ps[i].phys);
    for (std::size_t c = 0; c < d.size(); ++c) d[c] -= ps[j].phys[c];
    if (cap.contains(std::span<const double>(d.data(), d.size()))) pts.push_back(Point{d, {}, std::nullopt, false});
  }
  return PointSet(ps.dim(), std::move(pts), cap);
}

MeyerReport check_meyer(const PointSet& ps, const Region& region, double threshold) {
  MeyerReport rep;
  rep.region = region;
  rep.threshold = threshold;
  rep.covering_radius = covering_radius_estimate(ps, region);
  rep.relatively_dense = std::isfinite(rep.covering_radius);
  const PointSet diffs = difference_set(ps.restricted(region), difference_cap(region));
  rep.diff_size = diffs.size();
  rep.diff_min_gap = diffs.size() >= 2 ? min_gap(diffs) : std::numeric_limits<double>::infinity();
  rep.diff_uniformly_discrete = rep.diff_min_gap >= threshold;
  return rep;
}

std::vector<LatticeCoords> find_cover_F(const PointSet& sub, const PointSet& full, const Region& region,
                                        std::size_t guard) {
  require_exact_pair(sub, full);
  if (sub.empty()) throw PreconditionError("cover needs a non-empty subset");
  require_margin(sub, region, 0);
  const Cps& cps = *full.cps();
  const PointSet target = full.restricted(region);
  std::vector<std::size_t> order(target.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int c = compare_norm(cps, *target[a].coords, *target[b].coords);
    return c != 0 ? c < 0 : target.compare(target[a], target[b]) < 0;
  });
  const PointLookup lookup(sub);
  std::vector<LatticeCoords> f;
  for (std::size_t i : order) {
    const LatticeCoords& x = *target[i].coords;
    if (covered(lookup, x, f)) continue;
    f.push_back(x - *sub[nearest_index(sub, x)].coords);
    if (f.size() > guard) throw GuardExceeded("cover set F grew beyond the guard");
    require_margin(sub, region, max_norm(cps, f));
  }
  return f;
}

bool check_cover(const PointSet& sub, const PointSet& full, const std::vector<LatticeCoords>& f, const Region& region) {
  require_exact_pair(sub, full);
  require_margin(sub, region, max_norm(*full.cps(), f));
  const PointLookup lookup(sub);
  const PointSet target = full.restricted(region);
  return std::all_of(target.points().begin(), target.points().end(),
                     [&](const Point& p) { return covered(lookup, *p.coords, f); });
}

bool check_diff_cover(const PointSet& ps, const std::vector<LatticeCoords>& f, const Region& region) {
  if (!ps.exact()) throw PreconditionError("check_diff_cover needs lattice coordinates");
  require_margin(ps, region, max_norm(*ps.cps(), f));
  const PointSet diffs = difference_set(ps, region);
  const PointLookup lookup(ps);
  return std::all_of(diffs.points().begin(), diffs.points().end(),
                     [&](const Point& p) { return covered(lookup, *p.coords, f); });
}

}  // namespace modelap
