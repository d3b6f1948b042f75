#include "modelap/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modelap/errors.hpp"

namespace modelap {

namespace {
constexpr i64 kGrid = 1'000'000'000;
}

QuadNumber rational_upper(double v) {
  if (!std::isfinite(v)) throw PreconditionError("rational_upper: non-finite value");
  return QuadNumber::rational(static_cast<i64>(std::ceil(v * kGrid)), kGrid);
}

QuadNumber rational_lower(double v) {
  if (!std::isfinite(v)) throw PreconditionError("rational_lower: non-finite value");
  return QuadNumber::rational(static_cast<i64>(std::floor(v * kGrid)), kGrid);
}

Region::Region(std::vector<Interval> sides) : sides_(std::move(sides)) {
  for (auto& s : sides_) {
    s.lo_closed = true;
    s.hi_closed = true;
  }
}

Region Region::interval(QuadNumber lo, QuadNumber hi) {
  return Region({Interval::closed(std::move(lo), std::move(hi))});
}

Region Region::symmetric(int dim, const QuadNumber& half_width) {
  return Region(std::vector<Interval>(static_cast<std::size_t>(dim), Interval::closed(-half_width, half_width)));
}

Region Region::box(const std::vector<std::pair<QuadNumber, QuadNumber>>& sides) {
  std::vector<Interval> iv;
  for (const auto& [lo, hi] : sides) iv.push_back(Interval::closed(lo, hi));
  return Region(std::move(iv));
}

bool Region::empty() const {
  return sides_.empty() || std::any_of(sides_.begin(), sides_.end(), [](const Interval& s) { return s.hi < s.lo; });
}

bool Region::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) throw PreconditionError("region dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!sides_[i].contains(static_cast<long double>(x[i]))) return false;
  return true;
}

bool Region::contains(std::span<const QuadNumber> x) const {
  if (static_cast<int>(x.size()) != dim()) throw PreconditionError("region dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!sides_[i].contains(x[i])) return false;
  return true;
}

bool Region::covers(const Region& other) const {
  if (other.dim() != dim()) return false;
  if (other.empty()) return true;
  for (std::size_t i = 0; i < sides_.size(); ++i)
    if (other.sides_[i].lo < sides_[i].lo || sides_[i].hi < other.sides_[i].hi) return false;
  return true;
}

Region Region::expanded(const QuadNumber& margin) const {
  std::vector<Interval> out = sides_;
  for (auto& s : out) {
    s.lo -= margin;
    s.hi += margin;
  }
  return Region(std::move(out));
}

Region Region::shrunk(const QuadNumber& margin) const { return expanded(-margin); }

Region Region::translated(std::span<const QuadNumber> v) const {
  if (static_cast<int>(v.size()) != dim()) throw PreconditionError("region dimension mismatch");
  std::vector<Interval> out = sides_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i].translated(v[i]);
  return Region(std::move(out));
}

Region Region::intersect(const Region& other) const {
  if (other.dim() != dim()) throw PreconditionError("region dimension mismatch");
  std::vector<Interval> out = sides_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].lo = std::max(out[i].lo, other.sides_[i].lo);
    out[i].hi = std::min(out[i].hi, other.sides_[i].hi);
  }
  return Region(std::move(out));
}

double Region::volume() const {
  if (empty()) return 0.0;
  double v = 1.0;
  for (const auto& s : sides_) v *= s.length().to_double();
  return v;
}

double Region::min_width() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& s : sides_) w = std::min(w, s.length().to_double());
  return w;
}

std::string Region::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sides_.size(); ++i)
    os << (i ? " x " : "") << "[" << sides_[i].lo.to_double() << ", " << sides_[i].hi.to_double() << "]";
  return os.str();
}

}  // namespace modelap
