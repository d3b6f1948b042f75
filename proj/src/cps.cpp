#include "modelap/cps.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "modelap/errors.hpp"

namespace modelap {

LatticeCoords operator+(const LatticeCoords& a, const LatticeCoords& b) {
  LatticeCoords r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

LatticeCoords operator-(const LatticeCoords& a, const LatticeCoords& b) {
  LatticeCoords r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

LatticeCoords operator*(i64 k, const LatticeCoords& a) {
  LatticeCoords r(a);
  for (auto& v : r) v *= k;
  return r;
}

bool is_zero(const LatticeCoords& c) {
  for (i64 v : c)
    if (v != 0) return false;
  return true;
}

double norm(const Coord& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(const Coord& a, const Coord& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Cps Cps::golden() { return quadratic(QuadRing::golden()); }

Cps Cps::quadratic(QuadRing ring) {
  ring.validate();
  Cps c;
  c.mode_ = Mode::algebraic;
  c.ring_ = ring;
  // Basis {(1,1), (w,w')}: determinant w' - w = -sqrt(D).
  c.covolume_ = std::sqrt(static_cast<double>(ring.discriminant()));
  return c;
}

Cps Cps::numeric(int physical_dim, int internal_dim, std::vector<std::vector<Rational>> basis) {
  if (physical_dim < 1 || internal_dim < 1) throw PreconditionError("numeric CPS needs positive dimensions");
  const int n = physical_dim + internal_dim;
  if (static_cast<int>(basis.size()) != n) throw PreconditionError("numeric CPS basis has wrong row count");
  for (const auto& row : basis)
    if (static_cast<int>(row.size()) != n) throw PreconditionError("numeric CPS basis has wrong column count");

  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = boost::rational_cast<double>(basis[i][j]);
  const double det = m.determinant();
  if (!(std::fabs(det) > 1e-12)) throw PreconditionError("numeric CPS basis is singular");

  Cps c;
  c.mode_ = Mode::numeric;
  c.physical_dim_ = physical_dim;
  c.internal_dim_ = internal_dim;
  c.covolume_ = std::fabs(det);
  c.basis_ = std::move(basis);
  c.basis_double_.resize(static_cast<std::size_t>(n * n));
  c.inverse_.resize(static_cast<std::size_t>(n * n));
  const Eigen::MatrixXd inv = m.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c.basis_double_[static_cast<std::size_t>(i * n + j)] = m(i, j);
      c.inverse_[static_cast<std::size_t>(i * n + j)] = inv(i, j);
    }
  return c;
}

const QuadRing& Cps::ring() const {
  if (!algebraic()) throw PreconditionError("numeric CPS has no quadratic ring");
  return ring_;
}

Coord Cps::physical(const LatticeCoords& z) const {
  if (algebraic()) return {ring_.phys(elem(z)).to_double()};
  const int n = rank();
  Coord x(static_cast<std::size_t>(physical_dim_), 0.0);
  for (int i = 0; i < physical_dim_; ++i) {
    long double s = 0;
    for (int j = 0; j < n; ++j) s += static_cast<long double>(basis_double_[static_cast<std::size_t>(i * n + j)]) * z[j];
    x[static_cast<std::size_t>(i)] = static_cast<double>(s);
  }
  return x;
}

Coord Cps::internal(const LatticeCoords& z) const {
  if (algebraic()) return {ring_.star(elem(z)).to_double()};
  const int n = rank();
  Coord y(static_cast<std::size_t>(internal_dim_), 0.0);
  for (int i = 0; i < internal_dim_; ++i) {
    long double s = 0;
    for (int j = 0; j < n; ++j)
      s += static_cast<long double>(basis_double_[static_cast<std::size_t>((physical_dim_ + i) * n + j)]) * z[j];
    y[static_cast<std::size_t>(i)] = static_cast<double>(s);
  }
  return y;
}

std::vector<QuadNumber> Cps::physical_exact(const LatticeCoords& z) const {
  if (algebraic()) return {ring_.phys(elem(z))};
  std::vector<QuadNumber> x;
  for (int i = 0; i < physical_dim_; ++i) {
    QuadNumber s;
    for (int j = 0; j < rank(); ++j) {
      const Rational& b = basis_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      s += QuadNumber::rational(b.numerator(), b.denominator()) * z[j];
    }
    x.push_back(s);
  }
  return x;
}

QuadNumber Cps::star_exact(const LatticeCoords& z) const {
  if (!algebraic()) throw PreconditionError("exact star map needs an algebraic CPS");
  return ring_.star(elem(z));
}

QuadNumber Cps::phys_exact(const LatticeCoords& z) const {
  if (!algebraic()) throw PreconditionError("exact scalar physical value needs an algebraic CPS");
  return ring_.phys(elem(z));
}

std::string Cps::name() const {
  if (is_golden()) return "golden";
  std::ostringstream os;
  if (algebraic()) {
    os << "quadratic(b=" << ring_.b << ",c=" << ring_.c << ")";
  } else {
    os << "numeric(d=" << physical_dim_ << ",m=" << internal_dim_ << ")";
  }
  return os.str();
}

bool operator==(const Cps& a, const Cps& b) {
  if (a.mode_ != b.mode_) return false;
  if (a.algebraic()) return a.ring_ == b.ring_;
  return a.physical_dim_ == b.physical_dim_ && a.internal_dim_ == b.internal_dim_ && a.basis_ == b.basis_;
}

}  // namespace modelap
