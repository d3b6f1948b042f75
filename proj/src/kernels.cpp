#include "modelap/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "modelap/errors.hpp"

namespace modelap::kernels {

namespace {

// Integer range of m admissible for a fixed n, or empty.
struct MRange {
  i64 lo = 0;
  i64 hi = -1;
};

MRange m_range(const QuadRing& ring, i64 n, const Interval& region, const Interval& window) {
  const QuadNumber n_omega = ring.phys(QuadElem{0, n});
  const QuadNumber n_conj = ring.star(QuadElem{0, n});
  // Region is closed: x1 <= m + n w <= x2.
  i64 lo = ceil_to_int(region.lo - n_omega);
  i64 hi = floor_to_int(region.hi - n_omega);
  const QuadNumber wlo = window.lo - n_conj;
  const QuadNumber whi = window.hi - n_conj;
  lo = std::max(lo, window.lo_closed ? ceil_to_int(wlo) : floor_to_int(wlo) + 1);
  hi = std::min(hi, window.hi_closed ? floor_to_int(whi) : ceil_to_int(whi) - 1);
  return {lo, hi};
}

// Lattice-coordinate bounding box of the preimage of region x window-bbox.
std::vector<std::pair<i64, i64>> numeric_coordinate_box(const Cps& cps, const Region& region, const Window& window) {
  const int d = cps.physical_dim();
  const int n = cps.rank();
  std::vector<double> center(static_cast<std::size_t>(n)), half(static_cast<std::size_t>(n));
  for (int i = 0; i < d; ++i) {
    const double lo = region.side(i).lo.to_double();
    const double hi = region.side(i).hi.to_double();
    center[static_cast<std::size_t>(i)] = (lo + hi) / 2;
    half[static_cast<std::size_t>(i)] = (hi - lo) / 2;
  }
  const auto bb = window.bounding_box();
  for (int i = 0; i < cps.internal_dim(); ++i) {
    center[static_cast<std::size_t>(d + i)] = (bb[static_cast<std::size_t>(i)].first + bb[static_cast<std::size_t>(i)].second) / 2;
    half[static_cast<std::size_t>(d + i)] = (bb[static_cast<std::size_t>(i)].second - bb[static_cast<std::size_t>(i)].first) / 2;
  }
  const auto& inv = cps.inverse_basis();
  std::vector<std::pair<i64, i64>> box;
  for (int i = 0; i < n; ++i) {
    double c = 0;
    double r = 0;
    for (int j = 0; j < n; ++j) {
      const double a = inv[static_cast<std::size_t>(i * n + j)];
      c += a * center[static_cast<std::size_t>(j)];
      r += std::fabs(a) * half[static_cast<std::size_t>(j)];
    }
    const double slack = 1e-9 * (1 + std::fabs(c) + r);
    box.emplace_back(static_cast<i64>(std::floor(c - r - slack)), static_cast<i64>(std::ceil(c + r + slack)));
  }
  return box;
}

void visit_numeric_slab(const Cps& cps, const Region& region, const Window& window, double guard,
                        const std::vector<std::pair<i64, i64>>& box, i64 first, std::vector<NumericCandidate>& out) {
  const int n = cps.rank();
  LatticeCoords z(static_cast<std::size_t>(n));
  z[0] = first;
  for (int i = 1; i < n; ++i) z[static_cast<std::size_t>(i)] = box[static_cast<std::size_t>(i)].first;
  while (true) {
    const Coord x = cps.physical(z);
    bool near_region = true;
    for (int i = 0; i < cps.physical_dim() && near_region; ++i) {
      const double lo = region.side(i).lo.to_double();
      const double hi = region.side(i).hi.to_double();
      const double eps = 1e-9 * (1 + std::fabs(lo) + std::fabs(hi));
      near_region = x[static_cast<std::size_t>(i)] >= lo - eps && x[static_cast<std::size_t>(i)] <= hi + eps;
    }
    if (near_region && region.contains(cps.physical_exact(z))) {
      const Coord y = cps.internal(z);
      const MembershipResult m = window.classify(std::span<const double>(y.data(), y.size()), guard);
      if (m.inside) out.push_back({z, m.uncertain});
    }
    int k = n - 1;
    while (k >= 1) {
      if (++z[static_cast<std::size_t>(k)] <= box[static_cast<std::size_t>(k)].second) break;
      z[static_cast<std::size_t>(k)] = box[static_cast<std::size_t>(k)].first;
      --k;
    }
    if (k < 1) break;
  }
}

std::size_t numeric_cell_count(const std::vector<std::pair<i64, i64>>& box) {
  long double cells = 1;
  for (const auto& [lo, hi] : box) cells *= static_cast<long double>(hi - lo + 1);
  if (cells > static_cast<long double>(kNumericCellGuard))
    throw GuardExceeded("numeric enumeration would visit more than 5e7 lattice cells");
  return static_cast<std::size_t>(cells);
}

// Extends the progression (first, second) maximally; returns 0 when first - t is present.
int maximal_length(const PointSet& ps, const PointLookup& lookup, std::size_t i, std::size_t j) {
  const Point& a = ps[i];
  const Point& b = ps[j];
  if (ps.exact()) {
    const LatticeCoords t = *b.coords - *a.coords;
    if (lookup.find(*a.coords - t)) return 0;
    int len = 2;
    LatticeCoords next = *b.coords + t;
    while (lookup.find(next)) {
      ++len;
      next = next + t;
    }
    return len;
  }
  Coord t(a.phys.size());
  for (std::size_t c = 0; c < t.size(); ++c) t[c] = b.phys[c] - a.phys[c];
  auto shifted = [&](const Coord& base, double k) {
    Coord r(base);
    for (std::size_t c = 0; c < r.size(); ++c) r[c] += k * t[c];
    return r;
  };
  if (lookup.find(shifted(a.phys, -1))) return 0;
  int len = 2;
  while (lookup.find(shifted(a.phys, len))) ++len;
  return len;
}

void aps_from(const PointSet& ps, const PointLookup& lookup, std::size_t i, int k, std::vector<ApRecord>& out) {
  for (std::size_t j = i + 1; j < ps.size(); ++j) {
    const int len = maximal_length(ps, lookup, i, j);
    if (len >= k) out.push_back({i, j, len});
  }
}

void check_ap_guard(const PointSet& ps, int k) {
  if (k < 2) throw PreconditionError("find_aps: k must be at least 2");
  if (ps.size() > 100'000) throw GuardExceeded("find_aps: more than 1e5 points");
}

double nearest_1d(const std::vector<double>& v, double x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != v.end()) best = *it - x;
  if (it != v.begin()) best = std::min(best, x - *std::prev(it));
  return best;
}

// Uniform bucket grid for nearest-point queries in d > 1.
class CellGrid {
 public:
  CellGrid(const PointSet& ps, double cell) : ps_(ps), cell_(cell) {
    for (std::size_t i = 0; i < ps.size(); ++i) cells_[key(ps[i].phys)].push_back(i);
  }

  double nearest(const Coord& x) const {
    const LatticeCoords k0 = key(x);
    double best = std::numeric_limits<double>::infinity();
    for (i64 ring = 0;; ++ring) {
      visit_shell(k0, ring, 0, LatticeCoords(k0.size()), [&](const LatticeCoords& k) {
        auto it = cells_.find(k);
        if (it == cells_.end()) return;
        for (auto idx : it->second) best = std::min(best, distance(ps_[idx].phys, x));
      });
      if (best <= static_cast<double>(ring) * cell_) return best;
      if (ring > 1'000'000) return best;
    }
  }

 private:
  LatticeCoords key(const Coord& x) const {
    LatticeCoords k(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) k[i] = static_cast<i64>(std::floor(x[i] / cell_));
    return k;
  }

  template <class F>
  void visit_shell(const LatticeCoords& center, i64 ring, std::size_t dim, LatticeCoords cur, F&& f,
                   bool on_shell = false) const {
    if (dim == center.size()) {
      if (on_shell || ring == 0) f(cur);
      return;
    }
    for (i64 o = -ring; o <= ring; ++o) {
      cur[dim] = center[dim] + o;
      visit_shell(center, ring, dim + 1, cur, f, on_shell || o == -ring || o == ring);
    }
  }

  const PointSet& ps_;
  double cell_;
  std::unordered_map<LatticeCoords, std::vector<std::size_t>, LatticeCoordsHash> cells_;
};

// Sample grid over a region: per-dimension sample counts.
std::vector<std::vector<double>> sample_axes(const Region& r, double pitch) {
  if (!(pitch > 0)) throw PreconditionError("sampling pitch must be positive");
  std::vector<std::vector<double>> axes;
  for (const auto& s : r.sides()) {
    const double lo = s.lo.to_double();
    const double hi = s.hi.to_double();
    std::vector<double> ax;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / pitch + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) ax.push_back(lo + static_cast<double>(k) * pitch);
    if (ax.empty() || ax.back() < hi) ax.push_back(hi);
    axes.push_back(std::move(ax));
  }
  return axes;
}

Coord sample_point(const std::vector<std::vector<double>>& axes, std::size_t flat) {
  Coord x(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    x[i] = axes[i][flat % axes[i].size()];
    flat /= axes[i].size();
  }
  return x;
}

std::size_t sample_count(const std::vector<std::vector<double>>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

double min_gap_sweep_from(const PointSet& ps, std::size_t i, double best) {
  for (std::size_t j = i + 1; j < ps.size(); ++j) {
    if (ps[j].phys[0] - ps[i].phys[0] >= best) break;
    best = std::min(best, distance(ps[i].phys, ps[j].phys));
  }
  return best;
}

void pairs_from(const PointSet& ps, const std::vector<double>& v, std::size_t i, double lo, double hi,
                std::vector<std::pair<std::size_t, std::size_t>>& out) {
  // phys_i - phys_j in [lo, hi]  <=>  phys_j in [phys_i - hi, phys_i - lo]
  const double slack = 1e-9 * (1 + std::fabs(v[i]));
  auto first = std::lower_bound(v.begin(), v.end(), v[i] - hi - slack);
  for (auto it = first; it != v.end() && *it <= v[i] - lo + slack; ++it)
    out.emplace_back(i, static_cast<std::size_t>(it - v.begin()));
  (void)ps;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_generic_from(const PointSet& ps, std::size_t i, double lo, double hi) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    bool ok = true;
    for (int c = 0; c < ps.dim() && ok; ++c) {
      const double diff = ps[i].phys[static_cast<std::size_t>(c)] - ps[j].phys[static_cast<std::size_t>(c)];
      ok = diff >= lo - 1e-9 && diff <= hi + 1e-9;
    }
    if (ok) out.emplace_back(i, j);
  }
  return out;
}

// Count of points of (Lambda Delta (t + Lambda)) inside [-h, h], for a sorted
// exact 1-D Lambda, by merging Lambda cap A with (Lambda cap (A - t)) + t.
std::size_t shift_mismatch(const PointSet& ps, const QuadRing& ring, QuadElem t, i64 h) {
  const auto& pts = ps.points();
  auto elem = [&](std::size_t i) { return Cps::elem(*pts[i].coords); };
  const QuadElem lo{-h, 0};
  const QuadElem hi{h, 0};
  auto lower = [&](QuadElem bound) {
    return static_cast<std::size_t>(std::partition_point(pts.begin(), pts.end(), [&](const Point& p) {
                                      return ring.compare_phys(Cps::elem(*p.coords), bound) < 0;
                                    }) - pts.begin());
  };
  auto upper = [&](QuadElem bound) {
    return static_cast<std::size_t>(std::partition_point(pts.begin(), pts.end(), [&](const Point& p) {
                                      return ring.compare_phys(Cps::elem(*p.coords), bound) <= 0;
                                    }) - pts.begin());
  };
  std::size_t a = lower(lo), a_end = upper(hi);
  std::size_t b = lower(lo - t), b_end = upper(hi - t);
  std::size_t mismatch = 0;
  while (a < a_end && b < b_end) {
    const int c = ring.compare_phys(elem(a), elem(b) + t);
    if (c == 0) {
      ++a;
      ++b;
    } else if (c < 0) {
      ++a;
      ++mismatch;
    } else {
      ++b;
      ++mismatch;
    }
  }
  return mismatch + (a_end - a) + (b_end - b);
}

void check_shift_input(const PointSet& ps) {
  if (!ps.exact_1d()) throw PreconditionError("shift_mismatch_counts needs an exact 1-D point set");
}

}  // namespace

RingWalk ring_walk_bounds(const QuadRing& ring, const Interval& region, const Interval& window) {
  const i64 D = ring.discriminant();
  if (window.empty() || region.hi < region.lo) return {};
  // phys - star = n sqrt(D)
  return {ceil_to_int((region.lo - window.hi).div_sqrt_disc(D)), floor_to_int((region.hi - window.lo).div_sqrt_disc(D))};
}

namespace serial {

std::vector<QuadElem> enumerate_ring(const QuadRing& ring, const Interval& region, const Interval& window) {
  std::vector<QuadElem> out;
  const RingWalk walk = ring_walk_bounds(ring, region, window);
  for (i64 n = walk.n_lo; n <= walk.n_hi; ++n) {
    const MRange r = m_range(ring, n, region, window);
    for (i64 m = r.lo; m <= r.hi; ++m) out.push_back({m, n});
  }
  return out;
}

std::vector<NumericCandidate> enumerate_numeric(const Cps& cps, const Region& region, const Window& window, double guard) {
  const auto box = numeric_coordinate_box(cps, region, window);
  numeric_cell_count(box);
  std::vector<NumericCandidate> out;
  for (i64 first = box[0].first; first <= box[0].second; ++first)
    visit_numeric_slab(cps, region, window, guard, box, first, out);
  return out;
}

std::vector<ApRecord> find_aps(const PointSet& ps, int k) {
  check_ap_guard(ps, k);
  const PointLookup lookup(ps);
  std::vector<ApRecord> out;
  for (std::size_t i = 0; i < ps.size(); ++i) aps_from(ps, lookup, i, k, out);
  return out;
}

double covering_radius(const PointSet& ps, const Region& sample_region, double pitch) {
  const auto axes = sample_axes(sample_region, pitch);
  const std::size_t total = sample_count(axes);
  double worst = 0;
  if (ps.dim() == 1) {
    const auto v = ps.phys_values();
    for (std::size_t s = 0; s < total; ++s) worst = std::max(worst, nearest_1d(v, axes[0][s]));
    return worst;
  }
  const CellGrid grid(ps, std::max(pitch * 4, 1e-6));
  for (std::size_t s = 0; s < total; ++s) worst = std::max(worst, grid.nearest(sample_point(axes, s)));
  return worst;
}

double min_gap(const PointSet& ps) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) best = min_gap_sweep_from(ps, i, best);
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> difference_pairs(const PointSet& ps, double lo, double hi) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (ps.dim() == 1) {
    const auto v = ps.phys_values();
    for (std::size_t i = 0; i < v.size(); ++i) pairs_from(ps, v, i, lo, hi, out);
    return out;
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto part = pairs_generic_from(ps, i, lo, hi);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<std::size_t> shift_mismatch_counts(const PointSet& ps, std::span<const QuadElem> shifts, i64 half_width) {
  check_shift_input(ps);
  std::vector<std::size_t> out;
  out.reserve(shifts.size());
  for (const auto& t : shifts) out.push_back(shift_mismatch(ps, ps.cps()->ring(), t, half_width));
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<QuadElem> enumerate_ring(const QuadRing& ring, const Interval& region, const Interval& window) {
  const RingWalk walk = ring_walk_bounds(ring, region, window);
  if (walk.n_hi < walk.n_lo) return {};
  const i64 span = walk.n_hi - walk.n_lo + 1;
  const int chunks = std::max(1, std::min<int>(omp_get_max_threads() * 4, static_cast<int>(span)));
  std::vector<std::vector<QuadElem>> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    const i64 from = walk.n_lo + span * c / chunks;
    const i64 to = walk.n_lo + span * (c + 1) / chunks;
    auto& part = parts[static_cast<std::size_t>(c)];
    for (i64 n = from; n < to; ++n) {
      const MRange r = m_range(ring, n, region, window);
      for (i64 m = r.lo; m <= r.hi; ++m) part.push_back({m, n});
    }
  }
  std::vector<QuadElem> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<NumericCandidate> enumerate_numeric(const Cps& cps, const Region& region, const Window& window, double guard) {
  const auto box = numeric_coordinate_box(cps, region, window);
  numeric_cell_count(box);
  const i64 span = box[0].second - box[0].first + 1;
  std::vector<std::vector<NumericCandidate>> parts(static_cast<std::size_t>(span));
#pragma omp parallel for schedule(dynamic)
  for (i64 s = 0; s < span; ++s)
    visit_numeric_slab(cps, region, window, guard, box, box[0].first + s, parts[static_cast<std::size_t>(s)]);
  std::vector<NumericCandidate> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<ApRecord> find_aps(const PointSet& ps, int k) {
  check_ap_guard(ps, k);
  const PointLookup lookup(ps);
  std::vector<std::vector<ApRecord>> per_start(ps.size());
  const auto count = static_cast<long long>(ps.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < count; ++i) aps_from(ps, lookup, static_cast<std::size_t>(i), k, per_start[static_cast<std::size_t>(i)]);
  std::vector<ApRecord> out;
  for (auto& v : per_start) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double covering_radius(const PointSet& ps, const Region& sample_region, double pitch) {
  const auto axes = sample_axes(sample_region, pitch);
  const auto total = static_cast<long long>(sample_count(axes));
  double worst = 0;
  if (ps.dim() == 1) {
    const auto v = ps.phys_values();
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (long long s = 0; s < total; ++s) worst = std::max(worst, nearest_1d(v, axes[0][static_cast<std::size_t>(s)]));
    return worst;
  }
  const CellGrid grid(ps, std::max(pitch * 4, 1e-6));
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long long s = 0; s < total; ++s) worst = std::max(worst, grid.nearest(sample_point(axes, static_cast<std::size_t>(s))));
  return worst;
}

double min_gap(const PointSet& ps) {
  double best = std::numeric_limits<double>::infinity();
  const auto count = static_cast<long long>(ps.size());
#pragma omp parallel
  {
    double local = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic, 64)
    for (long long i = 0; i < count - 1; ++i) local = min_gap_sweep_from(ps, static_cast<std::size_t>(i), local);
#pragma omp critical(modelap_min_gap)
    best = std::min(best, local);
  }
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> difference_pairs(const PointSet& ps, double lo, double hi) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parts(ps.size());
  const auto count = static_cast<long long>(ps.size());
  if (ps.dim() == 1) {
    const auto v = ps.phys_values();
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) pairs_from(ps, v, static_cast<std::size_t>(i), lo, hi, parts[static_cast<std::size_t>(i)]);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) parts[static_cast<std::size_t>(i)] = pairs_generic_from(ps, static_cast<std::size_t>(i), lo, hi);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<std::size_t> shift_mismatch_counts(const PointSet& ps, std::span<const QuadElem> shifts, i64 half_width) {
  check_shift_input(ps);
  std::vector<std::size_t> out(shifts.size());
  const auto count = static_cast<long long>(shifts.size());
  const QuadRing ring = ps.cps()->ring();
#pragma omp parallel for schedule(dynamic)
  for (long long s = 0; s < count; ++s)
    out[static_cast<std::size_t>(s)] = shift_mismatch(ps, ring, shifts[static_cast<std::size_t>(s)], half_width);
  return out;
}

}  // namespace parallel

}  // namespace modelap::kernels
