#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel with an
// identical result (the tests compare them bit for bit; bench_kernels times them).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "modelap/cps.hpp"
#include "modelap/point_set.hpp"
#include "modelap/window.hpp"

namespace modelap::kernels {

/// A maximal progression inside a point set: indices of its first two terms
/// (in storage order) and its length.
struct ApRecord {
  std::size_t first = 0;
  std::size_t second = 0;
  int length = 0;
  friend bool operator==(const ApRecord&, const ApRecord&) = default;
};

struct NumericCandidate {
  LatticeCoords coords;
  bool boundary_uncertain = false;
};

/// 1-D (2m + n b)-style bounds for the ring walk; exposed for tests.
struct RingWalk {
  i64 n_lo = 0;
  i64 n_hi = -1;
};
RingWalk ring_walk_bounds(const QuadRing& ring, const Interval& region, const Interval& window);

namespace serial {

std::vector<QuadElem> enumerate_ring(const QuadRing& ring, const Interval& region, const Interval& window);
std::vector<NumericCandidate> enumerate_numeric(const Cps& cps, const Region& region, const Window& window, double guard);
std::vector<ApRecord> find_aps(const PointSet& ps, int k);
double covering_radius(const PointSet& ps, const Region& sample_region, double pitch);
double min_gap(const PointSet& ps);
std::vector<std::pair<std::size_t, std::size_t>> difference_pairs(const PointSet& ps, double lo, double hi);
std::vector<std::size_t> shift_mismatch_counts(const PointSet& ps, std::span<const QuadElem> shifts, i64 half_width);

}  // namespace serial

namespace parallel {

std::vector<QuadElem> enumerate_ring(const QuadRing& ring, const Interval& region, const Interval& window);
std::vector<NumericCandidate> enumerate_numeric(const Cps& cps, const Region& region, const Window& window, double guard);
std::vector<ApRecord> find_aps(const PointSet& ps, int k);
double covering_radius(const PointSet& ps, const Region& sample_region, double pitch);
double min_gap(const PointSet& ps);
std::vector<std::pair<std::size_t, std::size_t>> difference_pairs(const PointSet& ps, double lo, double hi);
std::vector<std::size_t> shift_mismatch_counts(const PointSet& ps, std::span<const QuadElem> shifts, i64 half_width);

}  // namespace parallel

/// Smallest 3-AP residual |2b - a - c| over index triples a < b < c of a
/// sorted sequence, with the minimising triple.
template <class Real>
struct ResidualScan {
  Real residual{};
  std::size_t a = 0, b = 0, c = 0;
};

namespace detail {

// Closest-sum walk for a fixed middle element: the left index only moves
// down and the right index only moves up, so each middle costs O(size).
template <class Real>
void scan_middle(std::span<const Real> v, std::size_t mid, ResidualScan<Real>& best, bool& have) {
  using std::abs;
  if (mid == 0 || mid + 1 >= v.size()) return;
  const Real twice = v[mid] + v[mid];
  std::size_t i = mid - 1;
  std::size_t j = mid + 1;
  while (true) {
    const Real s = v[i] + v[j] - twice;
    const Real r = abs(s);
    if (!have || r < best.residual) {
      best = {r, i, mid, j};
      have = true;
    }
    if (s < Real(0)) {
      if (++j == v.size()) break;
    } else {
      if (i == 0) break;
      --i;
    }
  }
}

}  // namespace detail

namespace serial {
template <class Real>
ResidualScan<Real> no3ap_min_residual(std::span<const Real> v) {
  ResidualScan<Real> best;
  bool have = false;
  for (std::size_t mid = 1; mid + 1 < v.size(); ++mid) detail::scan_middle(v, mid, best, have);
  return best;
}
}  // namespace serial

namespace parallel {
// Real must be safe to copy across threads (double, long double, QuadNumber).
template <class Real>
ResidualScan<Real> no3ap_min_residual(std::span<const Real> v) {
  ResidualScan<Real> best;
  bool have = false;
  const auto count = static_cast<long long>(v.size());
#pragma omp parallel
  {
    ResidualScan<Real> local;
    bool local_have = false;
#pragma omp for schedule(static)
    for (long long mid = 1; mid < count - 1; ++mid)
      detail::scan_middle(v, static_cast<std::size_t>(mid), local, local_have);
#pragma omp critical(modelap_no3ap)
    {
      if (local_have && (!have || local.residual < best.residual ||
                         (!(best.residual < local.residual) && local.b < best.b))) {
        best = local;
        have = true;
      }
    }
  }
  return best;
}
}  // namespace parallel

/// Maximum number of lattice-coordinate cells the numeric enumerator visits.
inline constexpr std::size_t kNumericCellGuard = 50'000'000;

}  // namespace modelap::kernels
