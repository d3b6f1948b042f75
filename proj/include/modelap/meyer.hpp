#pragma once

#include <vector>

#include "modelap/point_set.hpp"

namespace modelap {

/// {x - y : x, y in ps} intersected with cap, deduplicated.
PointSet difference_set(const PointSet& ps, const Region& cap);

struct MeyerReport {
  Region region;
  double covering_radius = 0;
  bool relatively_dense = false;
  double diff_min_gap = 0;
  double threshold = 0;
  bool diff_uniformly_discrete = false;
  std::size_t diff_size = 0;
};

/// Covering radius on `region` and the minimum gap of the differences of
/// points in `region`; uniform discreteness means gap >= threshold.
MeyerReport check_meyer(const PointSet& ps, const Region& region, double threshold = 1e-3);

inline constexpr std::size_t kCoverGuard = 64;

/// Greedy finite F with full cap region contained in sub + F.
std::vector<LatticeCoords> find_cover_F(const PointSet& sub, const PointSet& full, const Region& region,
                                        std::size_t guard = kCoverGuard);

/// Every x in full cap region lies in sub + F.
bool check_cover(const PointSet& sub, const PointSet& full, const std::vector<LatticeCoords>& f, const Region& region);

/// Every difference x - y (x, y in ps) inside region lies in ps + F.
bool check_diff_cover(const PointSet& ps, const std::vector<LatticeCoords>& f, const Region& region);

}  // namespace modelap
