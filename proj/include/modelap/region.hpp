#pragma once

#include <span>
#include <string>
#include <vector>

#include "modelap/window.hpp"

namespace modelap {

/// Rational upper bound of a non-negative double, on a 1e-9 grid.
QuadNumber rational_upper(double v);
QuadNumber rational_lower(double v);

/// Closed axis-aligned box in physical space with exact endpoints.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Interval> sides);

  static Region interval(QuadNumber lo, QuadNumber hi);
  static Region symmetric(int dim, const QuadNumber& half_width);
  static Region box(const std::vector<std::pair<QuadNumber, QuadNumber>>& sides);

  int dim() const { return static_cast<int>(sides_.size()); }
  const std::vector<Interval>& sides() const { return sides_; }
  const Interval& side(int i) const { return sides_[static_cast<std::size_t>(i)]; }
  bool empty() const;

  bool contains(std::span<const double> x) const;
  bool contains(std::span<const QuadNumber> x) const;
  /// other is a subset of *this.
  bool covers(const Region& other) const;

  Region expanded(const QuadNumber& margin) const;
  Region shrunk(const QuadNumber& margin) const;
  Region translated(std::span<const QuadNumber> v) const;
  Region intersect(const Region& other) const;

  double volume() const;
  double min_width() const;
  std::string describe() const;

 private:
  std::vector<Interval> sides_;
};

}  // namespace modelap
