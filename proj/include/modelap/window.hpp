#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modelap/quad.hpp"

namespace modelap {

/// Interval of the real line with exact endpoints. Default semantics are
/// half-open [lo, hi), matching the Fibonacci window [-1, tau-1).
struct Interval {
  QuadNumber lo;
  QuadNumber hi;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval half_open(QuadNumber lo, QuadNumber hi) { return {std::move(lo), std::move(hi), true, false}; }
  static Interval open(QuadNumber lo, QuadNumber hi) { return {std::move(lo), std::move(hi), false, false}; }
  static Interval closed(QuadNumber lo, QuadNumber hi) { return {std::move(lo), std::move(hi), true, true}; }

  bool contains(const QuadNumber& y) const;
  bool contains(long double y) const;
  bool has_interior() const { return lo < hi; }
  bool empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }
  QuadNumber length() const { return hi - lo; }
  QuadNumber midpoint() const { return (lo + hi) / 2; }
  Interval translated(const QuadNumber& v) const { return {lo + v, hi + v, lo_closed, hi_closed}; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct MembershipResult {
  bool inside = false;
  /// Within the guard band of the window boundary; the decision is floating-point only.
  bool uncertain = false;
};

/// Acceptance region in internal space: an interval, a box (product of
/// intervals) or a Euclidean ball. Geometry is stored exactly; the 1-D
/// case is decided exactly, higher dimensions in floating point with a guard band.
class Window {
 public:
  enum class Kind { interval, box, ball };

  static Window interval(Interval iv);
  static Window box(std::vector<Interval> factors);
  static Window ball(std::vector<QuadNumber> center, QuadNumber radius, bool closed = false);

  Kind kind() const { return kind_; }
  int dim() const;

  const std::vector<Interval>& factors() const { return factors_; }
  const std::vector<QuadNumber>& center() const { return center_; }
  const QuadNumber& radius() const { return radius_; }
  bool closed_ball() const { return closed_ball_; }

  /// 1-D windows of any kind as an exact interval.
  Interval interval_form() const;

  bool has_interior() const;
  double measure() const;
  double inradius() const;

  bool contains(const QuadNumber& y) const;
  MembershipResult classify(std::span<const double> y, double guard) const;
  /// Distance from y to the boundary, positive inside and negative outside.
  double signed_boundary_distance(std::span<const double> y) const;

  /// Same centre, half the extent in every direction.
  Window middle_half() const;
  std::vector<std::pair<double, double>> bounding_box() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::interval;
  std::vector<Interval> factors_;
  std::vector<QuadNumber> center_;
  QuadNumber radius_;
  bool closed_ball_ = false;
};

}  // namespace modelap
