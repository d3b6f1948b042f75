#pragma once

#include <memory>
#include <optional>

#include "modelap/cps.hpp"
#include "modelap/point_set.hpp"
#include "modelap/region.hpp"
#include "modelap/window.hpp"

namespace modelap {

/// Star image m + n w' of a ring element.
QuadNumber star(const QuadRing& ring, QuadElem x);

/// All x in L with phys(x) in region and x* in window. Algebraic mode is exact;
/// numeric mode flags points within `guard` of the window boundary.
PointSet enumerate_model_set(std::shared_ptr<const Cps> cps, const Window& window, const Region& region,
                             double guard = 1e-9);

bool is_member(const Cps& cps, const Window& window, const LatticeCoords& z);
bool is_member(const Cps& cps, const Window& window, QuadElem x);

/// Largest distance from a grid sample of `region` to the set. The default
/// pitch is a quarter of the minimum gap. The set must have been enumerated
/// on `region` expanded by at least the returned radius.
double covering_radius_estimate(const PointSet& ps, const Region& region, std::optional<double> pitch = std::nullopt);

double min_gap(const PointSet& ps);

/// Covering radius of the model set of `window` on `sample`, enumerating with a
/// margin that grows until it exceeds the estimate.
double empirical_covering_radius(std::shared_ptr<const Cps> cps, const Window& window, const Region& sample,
                                 std::optional<double> pitch = std::nullopt, bool drop_origin = false);

}  // namespace modelap
