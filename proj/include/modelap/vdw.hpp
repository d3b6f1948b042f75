#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modelap/point_set.hpp"
#include "modelap/progressions.hpp"

namespace modelap {

inline constexpr int kVdwGuard = 40;

struct VdwOracleResult {
  /// W(r, k), or empty when a good colouring of {1..n_max} exists.
  std::optional<int> value;
  /// A colouring of {1..W-1} (or {1..n_max}) with no monochromatic k-AP; colours 1..r.
  std::vector<int> witness;
  std::uint64_t nodes = 0;
};

VdwOracleResult vdw_number_oracle(int r, int k, int n_max = kVdwGuard);

/// Monochromatic k-AP l_1 < ... < l_k inside a colouring of {0..N-1}, if any.
std::optional<std::vector<int>> find_monochromatic_integer_ap(const std::vector<int>& colours, int k);
bool has_monochromatic_ap(const std::vector<int>& colours, int k);

enum class ColoringScheme { random, periodic, internal_threshold, constant, explicit_list };

/// Colour of ps[i] in {1..r}.
struct Coloring {
  ColoringScheme scheme = ColoringScheme::constant;
  int r = 1;
  std::uint64_t seed = 0;
  std::vector<int> colors;

  std::string describe() const;
};

Coloring color(const PointSet& ps, ColoringScheme scheme, int r, std::uint64_t seed = 0);
Coloring explicit_coloring(const PointSet& ps, std::vector<int> colors, int r);

/// A monochromatic nontrivial k-AP of ps inside the closed ball, searched colour by colour.
std::optional<Progression> find_monochromatic_ap(const PointSet& ps, const Coloring& coloring, int k,
                                                 const Coord& center, double radius);

struct VdwRadius {
  int r = 0;
  int k = 0;
  int n = 0;
  double radius = 0;
};

/// N = W(r,k) and R = bounded_gap_radius(N - 1).
VdwRadius model_vdw_radius(std::shared_ptr<const Cps> cps, const Window& w, int r, int k);

struct CertificateEntry {
  Coord center;
  std::string coloring;
  std::optional<Progression> ap;
  /// Long progression found in the ball, the induced integer AP and its image.
  std::optional<Progression> carrier;
  std::vector<int> integer_ap;
  std::optional<Progression> transferred;
  bool transfer_ok = false;
  bool ok = false;
};

struct VdwCertificate {
  int r = 0;
  int k = 0;
  int n = 0;
  double radius = 0;
  std::vector<CertificateEntry> trace;

  bool all_ok() const;
};

/// Runs every colouring at every centre: direct search plus the transfer of
/// an N-term progression through the integer colouring j -> colour(s + j t).
VdwCertificate certify_vdw(const PointSet& ps, const std::vector<Coloring>& colorings, const std::vector<Coord>& centers,
                           int r, int k, int n, double radius);

enum class MeyerRoute { cover_classes, product_coloring };

struct MeyerVdwRadius {
  int n = 0;
  double r_prime = 0;
  double max_shift = 0;
  double radius = 0;
  MeyerRoute route = MeyerRoute::cover_classes;
  /// Internal-space pieces of the cover classes (cover-class route).
  std::vector<Interval> pieces;
};

/// R = R' + max |t_j| for a Meyer set covered by a model set through F.
MeyerVdwRadius meyer_vdw_radius(const PointSet& meyer, const PointSet& model, const std::vector<LatticeCoords>& f, int r,
                                int k, const Region& cover_region);

}  // namespace modelap
