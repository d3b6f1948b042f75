#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "modelap/point_set.hpp"

namespace modelap {

using BigFloat = boost::multiprecision::mpfr_float;

/// {0} together with n + (e/3)^(2n+2) and -n + (e/3)^(2n+1) for n = 1..N,
/// sorted increasingly and evaluated with `digits` significant digits.
struct CounterexampleSet {
  int n = 0;
  int digits = 0;
  std::vector<BigFloat> values;
  /// The integer each value perturbs.
  std::vector<i64> index;
};

inline constexpr int kCounterexampleMaxN = 400;
inline constexpr std::size_t kNo3apGuard = 5000;

/// Digits needed to resolve the smallest perturbation for this N.
int required_digits(int n);

CounterexampleSet counterexample_set(int n, int digits = 60);

struct No3apReport {
  std::size_t size = 0;
  /// Decimal rendering of the minimal |2b - a - c|.
  std::string min_residual;
  double residual = 0;
  std::size_t a = 0, b = 0, c = 0;
  double tol = 0;
  bool passes = false;
};

No3apReport verify_no_3ap(const CounterexampleSet& set, double tol = 1e-9);
/// Exact residuals for lattice sets, doubles otherwise (1-D only).
No3apReport verify_no_3ap(const PointSet& ps, double tol = 1e-9);

}  // namespace modelap
