#include "modelap/point_set.hpp"

#include <algorithm>
#include <cmath>

#include "modelap/errors.hpp"

namespace modelap {

Point make_lattice_point(const Cps& cps, const LatticeCoords& z) {
  if (static_cast<int>(z.size()) != (cps.algebraic() ? 2 : cps.rank()))
    throw PreconditionError("lattice coordinates have the wrong length");
  Point p;
  p.phys = cps.physical(z);
  p.internal = cps.internal(z);
  p.coords = z;
  return p;
}

PointSet::PointSet(int dim, std::vector<Point> points, Region region, std::shared_ptr<const Cps> cps,
                   std::optional<Window> window)
    : dim_(dim), points_(std::move(points)), region_(std::move(region)), cps_(std::move(cps)), window_(std::move(window)) {
  if (region_.dim() != dim_) throw PreconditionError("point set region dimension mismatch");
  if (cps_ && cps_->physical_dim() != dim_) throw PreconditionError("point set CPS dimension mismatch");
  for (const auto& p : points_)
    if (static_cast<int>(p.phys.size()) != dim_) throw PreconditionError("point dimension mismatch");
  normalize();
}

void PointSet::normalize() {
  exact_ = cps_ != nullptr && std::all_of(points_.begin(), points_.end(), [](const Point& p) { return p.coords.has_value(); });
  const auto less = [this](const Point& a, const Point& b) { return compare(a, b) < 0; };
  // translates and restrictions arrive sorted and duplicate-free
  if (std::adjacent_find(points_.begin(), points_.end(), [this](const Point& a, const Point& b) {
        return compare(a, b) >= 0;
      }) == points_.end())
    return;
  std::sort(points_.begin(), points_.end(), less);
  auto same = [this](const Point& a, const Point& b) {
    if (a.coords && b.coords && cps_) return *a.coords == *b.coords;
    return distance(a.phys, b.phys) <= 1e-12;
  };
  points_.erase(std::unique(points_.begin(), points_.end(), same), points_.end());
}

int PointSet::compare(const Point& a, const Point& b) const {
  if (cps_ && cps_->algebraic() && a.coords && b.coords) {
    const int c = cps_->ring().compare_phys(Cps::elem(*a.coords), Cps::elem(*b.coords));
    if (c != 0) return c;
  } else {
    for (std::size_t i = 0; i < a.phys.size(); ++i) {
      if (a.phys[i] < b.phys[i]) return -1;
      if (a.phys[i] > b.phys[i]) return 1;
    }
  }
  if (a.coords && b.coords) {
    if (*a.coords < *b.coords) return -1;
    if (*b.coords < *a.coords) return 1;
  }
  return 0;
}

PointSet PointSet::from_lattice(std::shared_ptr<const Cps> cps, std::span<const LatticeCoords> coords, Region region,
                                std::optional<Window> window) {
  if (!cps) throw PreconditionError("from_lattice needs a CPS");
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (const auto& z : coords) pts.push_back(make_lattice_point(*cps, z));
  const int d = cps->physical_dim();
  return PointSet(d, std::move(pts), std::move(region), std::move(cps), std::move(window));
}

PointSet PointSet::from_ring(std::shared_ptr<const Cps> cps, std::span<const QuadElem> elems, Region region) {
  std::vector<LatticeCoords> z;
  z.reserve(elems.size());
  for (const auto& e : elems) z.push_back(Cps::coords(e));
  return from_lattice(std::move(cps), z, std::move(region));
}

PointSet PointSet::from_values(std::span<const double> values, Region region) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (double v : values) pts.push_back(Point{{v}, {}, std::nullopt, false});
  return PointSet(1, std::move(pts), std::move(region));
}

PointSet PointSet::restricted(const Region& r) const {
  std::vector<Point> pts;
  for (const auto& p : points_) {
    const bool inside = exact_ ? r.contains(cps_->physical_exact(*p.coords)) : r.contains(std::span<const double>(p.phys.data(), p.phys.size()));
    if (inside) pts.push_back(p);
  }
  return PointSet(dim_, std::move(pts), region_.intersect(r), cps_, window_);
}

PointSet PointSet::translated(const LatticeCoords& t) const {
  if (!exact_) throw PreconditionError("exact translation needs lattice coordinates");
  std::vector<Point> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) {
    Point q = make_lattice_point(*cps_, *p.coords + t);
    q.boundary_uncertain = p.boundary_uncertain;
    pts.push_back(std::move(q));
  }
  const auto shift = cps_->physical_exact(t);
  std::optional<Window> w;
  if (window_ && cps_->algebraic()) w = Window::interval(window_->interval_form().translated(cps_->star_exact(t)));
  return PointSet(dim_, std::move(pts), region_.translated(shift), cps_, w);
}

PointSet PointSet::translated(const Coord& v) const {
  std::vector<Point> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) {
    Point q{p.phys, {}, std::nullopt, false};
    for (std::size_t i = 0; i < q.phys.size(); ++i) q.phys[i] += v[i];
    pts.push_back(std::move(q));
  }
  std::vector<QuadNumber> shift;
  for (double x : v) shift.push_back(QuadNumber::rational(static_cast<i64>(std::llround(x * 1e9)), 1'000'000'000));
  return PointSet(dim_, std::move(pts), region_.translated(shift));
}

PointSet PointSet::with_region(Region r) const {
  PointSet out = *this;
  out.region_ = std::move(r);
  return out;
}

std::vector<double> PointSet::phys_values() const {
  if (dim_ != 1) throw PreconditionError("phys_values needs a one-dimensional set");
  std::vector<double> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.phys[0]);
  return v;
}

PointLookup::PointLookup(const PointSet& ps, double tol) : ps_(&ps), tol_(tol) {
  if (ps.exact()) {
    index_.reserve(ps.size() * 2);
    for (std::size_t i = 0; i < ps.size(); ++i) index_.emplace(*ps[i].coords, i);
  } else if (ps.dim() == 1) {
    sorted_phys_ = ps.phys_values();
  }
}

std::optional<std::size_t> PointLookup::find(const LatticeCoords& z) const {
  if (!ps_->exact()) return find(ps_->cps() ? ps_->cps()->physical(z) : Coord{});
  auto it = index_.find(z);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PointLookup::find(const Coord& x) const {
  if (ps_->dim() == 1 && !sorted_phys_.empty()) {
    auto it = std::lower_bound(sorted_phys_.begin(), sorted_phys_.end(), x[0] - tol_);
    if (it != sorted_phys_.end() && std::fabs(*it - x[0]) <= tol_) return static_cast<std::size_t>(it - sorted_phys_.begin());
    return std::nullopt;
  }
  for (std::size_t i = 0; i < ps_->size(); ++i)
    if (distance((*ps_)[i].phys, x) <= tol_) return i;
  return std::nullopt;
}

bool PointLookup::contains(const Point& p) const {
  if (ps_->exact() && p.coords) return find(*p.coords).has_value();
  return find(p.phys).has_value();
}

std::vector<std::size_t> indices_in_ball(const PointSet& ps, const Coord& center, double radius) {
  std::vector<std::size_t> out;
  if (ps.dim() == 1) {
    const auto& pts = ps.points();
    auto lo = std::lower_bound(pts.begin(), pts.end(), center[0] - radius,
                               [](const Point& p, double v) { return p.phys[0] < v; });
    for (auto it = lo; it != pts.end() && it->phys[0] <= center[0] + radius; ++it)
      out.push_back(static_cast<std::size_t>(it - pts.begin()));
    return out;
  }
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (distance(ps[i].phys, center) <= radius) out.push_back(i);
  return out;
}

PointSet subset(const PointSet& ps, std::span<const std::size_t> indices) {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (auto i : indices) pts.push_back(ps[i]);
  return PointSet(ps.dim(), std::move(pts), ps.region(), ps.cps_ptr(), ps.window());
}

}  // namespace modelap
