#pragma once

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "modelap/cps.hpp"
#include "modelap/region.hpp"
#include "modelap/window.hpp"

namespace modelap {

struct Point {
  Coord phys;
  Coord internal;  // empty when the point has no internal partner
  std::optional<LatticeCoords> coords;
  bool boundary_uncertain = false;
};

/// Finite fragment of a Delone set: points sorted by physical coordinate
/// (exactly, for algebraic lattice points), free of duplicates, together with
/// the physical region that was enumerated and the CPS/window it came from.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<Point> points, Region region, std::shared_ptr<const Cps> cps = nullptr,
           std::optional<Window> window = std::nullopt);

  /// Lattice points given by coordinates; phys/internal are computed by the CPS.
  static PointSet from_lattice(std::shared_ptr<const Cps> cps, std::span<const LatticeCoords> coords, Region region,
                               std::optional<Window> window = std::nullopt);
  static PointSet from_ring(std::shared_ptr<const Cps> cps, std::span<const QuadElem> elems, Region region);
  /// One-dimensional floating-point set without lattice structure.
  static PointSet from_values(std::span<const double> values, Region region);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  const Region& region() const { return region_; }
  const Cps* cps() const { return cps_.get(); }
  const std::shared_ptr<const Cps>& cps_ptr() const { return cps_; }
  const std::optional<Window>& window() const { return window_; }

  /// Every point carries lattice coordinates of a known CPS.
  bool exact() const { return exact_; }
  /// exact() and the CPS is algebraic of physical dimension 1.
  bool exact_1d() const { return exact_ && cps_ && cps_->algebraic(); }

  /// Order used for storage: -1, 0, 1.
  int compare(const Point& a, const Point& b) const;

  PointSet restricted(const Region& r) const;
  PointSet translated(const LatticeCoords& t) const;
  PointSet translated(const Coord& v) const;
  PointSet with_region(Region r) const;

  std::vector<double> phys_values() const;

 private:
  void normalize();

  int dim_ = 1;
  std::vector<Point> points_;
  Region region_;
  std::shared_ptr<const Cps> cps_;
  std::optional<Window> window_;
  bool exact_ = false;
};

/// Membership index over a PointSet: hash on lattice coordinates for exact
/// sets, tolerance search on the sorted physical axis for 1-D float sets.
class PointLookup {
 public:
  explicit PointLookup(const PointSet& ps, double tol = 1e-9);
  std::optional<std::size_t> find(const LatticeCoords& z) const;
  std::optional<std::size_t> find(const Coord& x) const;
  bool contains(const Point& p) const;

 private:
  const PointSet* ps_;
  double tol_;
  std::unordered_map<LatticeCoords, std::size_t, LatticeCoordsHash> index_;
  std::vector<double> sorted_phys_;
};

/// Indices of points with |p - center| <= radius, ascending.
std::vector<std::size_t> indices_in_ball(const PointSet& ps, const Coord& center, double radius);

/// Subset of ps at the given indices (region and provenance kept).
PointSet subset(const PointSet& ps, std::span<const std::size_t> indices);

Point make_lattice_point(const Cps& cps, const LatticeCoords& z);

}  // namespace modelap
