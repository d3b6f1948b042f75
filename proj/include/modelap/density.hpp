#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "modelap/point_set.hpp"

namespace modelap {

/// A_n = [-n, n]^d for an increasing list of n, volume (2n)^d.
struct AveragingSequence {
  int dim = 1;
  std::vector<i64> indices;

  static AveragingSequence single(int dim, i64 n) { return {dim, {n}}; }
  /// count values spread geometrically up to n_max.
  static AveragingSequence geometric(int dim, i64 n_min, i64 n_max, int count);

  void validate() const;
  i64 largest() const { return indices.back(); }
  Region region(i64 n) const { return Region::symmetric(dim, QuadNumber(n)); }
  double volume(i64 n) const;
};

struct DensityEstimate {
  std::vector<i64> n;
  std::vector<std::size_t> counts;
  std::vector<double> partials;
  /// Partial value at the largest n.
  double value = 0;
  /// max - min of the partials over the tail half.
  double oscillation = 0;
};

std::size_t count_in(const PointSet& ps, const Region& box);

DensityEstimate density(const PointSet& ps, const AveragingSequence& avg);

/// Points of lam not in gam plus points of gam not in lam, inside box.
std::size_t symmetric_difference_count(const PointSet& lam, const PointSet& gam, const Region& box);

DensityEstimate d_B(const PointSet& lam, const PointSet& gam, const AveragingSequence& avg);

struct AlmostPeriod {
  LatticeCoords t;
  double phys = 0;
  double d_b = 0;
};

/// Differences t in Lambda - Lambda inside `search` with d_B(Lambda, t + Lambda) < eps at the largest n.
std::vector<AlmostPeriod> almost_periods(const PointSet& lam, double eps, const Region& search,
                                         const AveragingSequence& avg);

/// Lambda cap (t + Lambda) cap ... cap (n t + Lambda).
PointSet intersect_translates(const PointSet& lam, const LatticeCoords& t, int n);
PointSet intersect_translates(const PointSet& lam, const Coord& t, int n);

struct P6Entry {
  LatticeCoords t;
  double phys = 0;
  double d_b = 0;
  double density_gamma = 0;
  bool density_ok = false;
  bool inclusion_ok = false;
  std::size_t inclusion_checked = 0;
  std::size_t chain_lhs = 0;
  std::size_t chain_rhs = 0;
  bool chain_ok = false;
};

struct P6Report {
  double eps = 0;
  int n = 0;
  double density = 0;
  double threshold = 0;
  double tolerance = 0;
  std::vector<P6Entry> entries;

  std::size_t nonzero_count() const;
  bool all_ok() const;
};

P6Report verify_p6(const PointSet& lam, double eps, int n, const AveragingSequence& avg, const Region& search,
                   double tolerance = 0.02);

struct AutocorrEntry {
  std::optional<LatticeCoords> z;
  double phys = 0;
  std::size_t pairs = 0;
  double eta = 0;
};

/// Finite-n autocorrelation coefficients for z in z_cap, sorted by z.
std::vector<AutocorrEntry> autocorrelation_coeffs(const PointSet& lam, i64 n, const Region& z_cap);

struct MaxDensityReport {
  double target = 0;
  DensityEstimate empirical;
  double gap = 0;
};

/// Empirical density of the model set of W against dens(lattice) * measure(W).
MaxDensityReport max_density_check(std::shared_ptr<const Cps> cps, const Window& w, const AveragingSequence& avg);

}  // namespace modelap
