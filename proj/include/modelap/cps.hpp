#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/rational.hpp>

#include <functional>
#include <string>
#include <vector>

#include "modelap/quad.hpp"

namespace modelap {

/// Integer coordinates of a lattice point: (m, n) in algebraic mode, the
/// basis coefficients z in numeric mode.
using LatticeCoords = boost::container::small_vector<i64, 4>;
/// Floating coordinates (physical or internal), display and geometry only.
using Coord = boost::container::small_vector<double, 3>;
using Rational = boost::rational<i64>;

struct LatticeCoordsHash {
  std::size_t operator()(const LatticeCoords& c) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (i64 v : c) h = (h ^ std::hash<i64>{}(v)) * 0x100000001b3ULL + (h >> 17);
    return h;
  }
};

LatticeCoords operator+(const LatticeCoords& a, const LatticeCoords& b);
LatticeCoords operator-(const LatticeCoords& a, const LatticeCoords& b);
LatticeCoords operator*(i64 k, const LatticeCoords& a);
bool is_zero(const LatticeCoords& c);
double norm(const Coord& x);
double distance(const Coord& a, const Coord& b);

/// A cut-and-project scheme. Algebraic mode is the quadratic-ring CPS
/// L = Z[w] embedded as {(x, x*)}; numeric mode is a lattice of full rank in
/// R^(d+m) given by an exact rational basis (columns are basis vectors, the
/// first d rows physical).
class Cps {
 public:
  enum class Mode { algebraic, numeric };

  static Cps golden();
  static Cps quadratic(QuadRing ring);
  static Cps numeric(int physical_dim, int internal_dim, std::vector<std::vector<Rational>> basis);

  Mode mode() const { return mode_; }
  bool algebraic() const { return mode_ == Mode::algebraic; }
  bool is_golden() const { return algebraic() && ring_.is_golden(); }
  const QuadRing& ring() const;

  int physical_dim() const { return physical_dim_; }
  int internal_dim() const { return internal_dim_; }
  int rank() const { return physical_dim_ + internal_dim_; }

  /// Volume of a fundamental domain of the lattice in R^d x R^m.
  double covolume() const { return covolume_; }
  /// dens(lattice) := 1 / covolume.
  double density() const { return 1.0 / covolume_; }

  Coord physical(const LatticeCoords& z) const;
  Coord internal(const LatticeCoords& z) const;
  /// Exact physical coordinates (quadratic in algebraic mode, rational in numeric mode).
  std::vector<QuadNumber> physical_exact(const LatticeCoords& z) const;
  /// Exact star image; algebraic mode only.
  QuadNumber star_exact(const LatticeCoords& z) const;
  QuadNumber phys_exact(const LatticeCoords& z) const;

  /// Inverse basis (row-major, rank x rank), numeric mode only.
  const std::vector<double>& inverse_basis() const { return inverse_; }
  const std::vector<std::vector<Rational>>& basis() const { return basis_; }

  std::string name() const;

  friend bool operator==(const Cps& a, const Cps& b);

  static QuadElem elem(const LatticeCoords& z) { return {z[0], z[1]}; }
  static LatticeCoords coords(QuadElem x) { return {x.m, x.n}; }

 private:
  Mode mode_ = Mode::algebraic;
  QuadRing ring_;
  int physical_dim_ = 1;
  int internal_dim_ = 1;
  double covolume_ = 0.0;
  std::vector<std::vector<Rational>> basis_;
  std::vector<double> basis_double_;
  std::vector<double> inverse_;
};

}  // namespace modelap
