#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "modelap/cps.hpp"
#include "modelap/point_set.hpp"
#include "modelap/window.hpp"

namespace modelap {

/// s, s+t, ..., s+(length-1)t. Exact coordinates are present whenever the
/// progression lives in a lattice.
struct Progression {
  Coord start;
  Coord diff;
  std::optional<LatticeCoords> start_coords;
  std::optional<LatticeCoords> diff_coords;
  int length = 0;
  std::optional<Window> witness;

  bool exact() const { return start_coords.has_value() && diff_coords.has_value(); }
  Coord term(int j) const;
  LatticeCoords term_coords(int j) const;
  std::vector<Point> terms(const Cps* cps) const;
};

/// Equal, nonzero consecutive differences; exact when every point has coordinates.
bool verify_ap(std::span<const Point> seq, double tol = 1e-9);
bool verify_ap(const Progression& ap, const Cps* cps, double tol = 1e-9);

/// Every maximal progression of length >= k, ordered by start then difference.
std::vector<Progression> find_aps_bruteforce(const PointSet& ps, int k);

struct DifferenceWindow {
  Window window;
  LatticeCoords anchor;
  int n = 0;
};

/// Window of differences t with s, s+t, ..., s+nt all in the model set.
DifferenceWindow difference_window(const Cps& cps, const Window& w, const LatticeCoords& s, int n);

/// (n+1)-term progression from s whose difference is the nonzero element of
/// the difference window with the smallest |phys|. Without a region the
/// search radius doubles until a difference turns up.
Progression constructive_ap(std::shared_ptr<const Cps> cps, const Window& w, const LatticeCoords& s, int n,
                            std::optional<Region> region = std::nullopt);

/// Empirical covering radius of the model set of U with the origin removed.
double punctured_covering_radius(std::shared_ptr<const Cps> cps, const Window& u, const Region& sample,
                                 std::optional<double> pitch = std::nullopt);

struct BoundedGap {
  double radius = 0;
  double r_prime = 0;
  double r_second = 0;
  bool closed_form = false;
  std::optional<Window> v;
  std::optional<Window> u;
};

/// Radius R such that every ball of radius R contains an (n+1)-term
/// progression of the model set.
BoundedGap bounded_gap(std::shared_ptr<const Cps> cps, const Window& w, int n);
double bounded_gap_radius(std::shared_ptr<const Cps> cps, const Window& w, int n);

/// tau^3 / (b - a).
double fact_r1_radius(double a, double b);

/// The window [-1, tau-1) of the Fibonacci model set.
Window fibonacci_window();
bool is_fibonacci_window(const Cps& cps, const Window& w);

}  // namespace modelap
