#include "modelap/window.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "modelap/errors.hpp"

namespace modelap {

bool Interval::contains(const QuadNumber& y) const {
  const bool above = lo_closed ? lo <= y : lo < y;
  const bool below = hi_closed ? y <= hi : y < hi;
  return above && below;
}

bool Interval::contains(long double y) const {
  const long double l = lo.to_long_double();
  const long double h = hi.to_long_double();
  const bool above = lo_closed ? l <= y : l < y;
  const bool below = hi_closed ? y <= h : y < h;
  return above && below;
}

Window Window::interval(Interval iv) {
  if (iv.hi < iv.lo) throw PreconditionError("window interval has lo > hi");
  Window w;
  w.kind_ = Kind::interval;
  w.factors_.push_back(std::move(iv));
  return w;
}

Window Window::box(std::vector<Interval> factors) {
  if (factors.empty()) throw PreconditionError("box window needs at least one factor");
  for (const auto& f : factors)
    if (f.hi < f.lo) throw PreconditionError("box window factor has lo > hi");
  Window w;
  w.kind_ = Kind::box;
  w.factors_ = std::move(factors);
  return w;
}

Window Window::ball(std::vector<QuadNumber> center, QuadNumber radius, bool closed) {
  if (center.empty()) throw PreconditionError("ball window needs a centre");
  if (radius.sign() < 0) throw PreconditionError("ball window radius is negative");
  Window w;
  w.kind_ = Kind::ball;
  w.center_ = std::move(center);
  w.radius_ = std::move(radius);
  w.closed_ball_ = closed;
  return w;
}

int Window::dim() const {
  return kind_ == Kind::ball ? static_cast<int>(center_.size()) : static_cast<int>(factors_.size());
}

Interval Window::interval_form() const {
  if (dim() != 1) throw PreconditionError("interval_form needs a one-dimensional window");
  if (kind_ == Kind::ball)
    return {center_[0] - radius_, center_[0] + radius_, closed_ball_, closed_ball_};
  return factors_[0];
}

bool Window::has_interior() const {
  if (kind_ == Kind::ball) return radius_.sign() > 0;
  return std::all_of(factors_.begin(), factors_.end(), [](const Interval& f) { return f.has_interior(); });
}

double Window::measure() const {
  if (!has_interior()) return 0.0;
  if (kind_ == Kind::ball) {
    const double m = dim();
    const double r = radius_.to_double();
    return std::pow(std::numbers::pi, m / 2) / std::tgamma(m / 2 + 1) * std::pow(r, m);
  }
  double v = 1.0;
  for (const auto& f : factors_) v *= f.length().to_double();
  return v;
}

double Window::inradius() const {
  if (kind_ == Kind::ball) return radius_.to_double();
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : factors_) r = std::min(r, f.length().to_double() / 2);
  return r;
}

bool Window::contains(const QuadNumber& y) const { return interval_form().contains(y); }

double Window::signed_boundary_distance(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != dim()) throw PreconditionError("window dimension mismatch");
  if (kind_ == Kind::ball) {
    double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - center_[i].to_double();
      s += d * d;
    }
    return radius_.to_double() - std::sqrt(s);
  }
  double inside = std::numeric_limits<double>::infinity();
  double outside = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double lo = factors_[i].lo.to_double();
    const double hi = factors_[i].hi.to_double();
    inside = std::min({inside, y[i] - lo, hi - y[i]});
    const double out = std::max({lo - y[i], y[i] - hi, 0.0});
    outside += out * out;
  }
  return outside > 0 ? -std::sqrt(outside) : inside;
}

MembershipResult Window::classify(std::span<const double> y, double guard) const {
  if (static_cast<int>(y.size()) != dim()) throw PreconditionError("window dimension mismatch");
  MembershipResult r;
  if (kind_ == Kind::ball) {
    long double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const long double d = y[i] - center_[i].to_long_double();
      s += d * d;
    }
    const long double dist = std::sqrt(s);
    const long double rad = radius_.to_long_double();
    r.inside = closed_ball_ ? dist <= rad : dist < rad;
    r.uncertain = std::fabs(dist - rad) < guard;
    return r;
  }
  r.inside = true;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& f = factors_[i];
    r.inside = r.inside && f.contains(static_cast<long double>(y[i]));
    if (std::fabs(y[i] - f.lo.to_double()) < guard || std::fabs(y[i] - f.hi.to_double()) < guard) r.uncertain = true;
  }
  return r;
}

Window Window::middle_half() const {
  if (kind_ == Kind::ball) return ball(center_, radius_ / 2, closed_ball_);
  std::vector<Interval> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) {
    const QuadNumber quarter = f.length() / 4;
    out.push_back({f.lo + quarter, f.hi - quarter, f.lo_closed, f.hi_closed});
  }
  if (kind_ == Kind::interval) return interval(out.front());
  return box(std::move(out));
}

std::vector<std::pair<double, double>> Window::bounding_box() const {
  std::vector<std::pair<double, double>> bb;
  if (kind_ == Kind::ball) {
    const double r = radius_.to_double();
    for (const auto& c : center_) bb.emplace_back(c.to_double() - r, c.to_double() + r);
  } else {
    for (const auto& f : factors_) bb.emplace_back(f.lo.to_double(), f.hi.to_double());
  }
  return bb;
}

std::string Window::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::ball) {
    os << "ball(center=[";
    for (std::size_t i = 0; i < center_.size(); ++i) os << (i ? "," : "") << center_[i];
    os << "], r=" << radius_ << (closed_ball_ ? ", closed)" : ", open)");
    return os.str();
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    os << (i ? " x " : "") << (f.lo_closed ? "[" : "(") << f.lo << ", " << f.hi << (f.hi_closed ? "]" : ")");
  }
  return os.str();
}

}  // namespace modelap
