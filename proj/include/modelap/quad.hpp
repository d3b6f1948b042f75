#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace modelap {

using i64 = std::int64_t;
using i128 = __int128;

/// Element of the field Q(sqrt(D)), stored as (p + q*sqrt(D)) / d with d > 0
/// and gcd(p, q, d) = 1. A number with q == 0 is rational and carries D = 0 so
/// that it mixes freely with any quadratic field.
///
/// All arithmetic is exact; intermediate products are formed in 128-bit
/// integers and an std::overflow_error is thrown if a reduced result does not
/// fit back into 64 bits.
class QuadNumber {
 public:
  constexpr QuadNumber() = default;
  QuadNumber(i64 integer) : p_(integer) {}  // NOLINT(google-explicit-constructor)

  static QuadNumber rational(i64 num, i64 den);
  static QuadNumber make(i64 p, i64 q, i64 d, i64 disc);
  static QuadNumber sqrt_disc(i64 disc) { return make(0, 1, 1, disc); }

  /// Parses an exact decimal literal such as "-0.3", "12", "1.25e-2".
  static QuadNumber parse_decimal(std::string_view text);

  i64 p() const { return p_; }
  i64 q() const { return q_; }
  i64 d() const { return d_; }
  i64 disc() const { return disc_; }
  bool is_rational() const { return q_ == 0; }

  int sign() const;
  double to_double() const { return static_cast<double>(to_long_double()); }
  long double to_long_double() const;

  /// p - q*sqrt(D): the Galois conjugate.
  QuadNumber conjugate() const { return make(p_, -q_, d_, disc_); }
  /// Division by sqrt(D); requires D to be known (either from *this or `disc`).
  QuadNumber div_sqrt_disc(i64 disc) const;

  QuadNumber operator-() const { return make(-p_, -q_, d_, disc_); }
  friend QuadNumber operator+(const QuadNumber& a, const QuadNumber& b);
  friend QuadNumber operator-(const QuadNumber& a, const QuadNumber& b);
  friend QuadNumber operator*(const QuadNumber& a, const QuadNumber& b);
  friend QuadNumber operator*(const QuadNumber& a, i64 k);
  friend QuadNumber operator*(i64 k, const QuadNumber& a) { return a * k; }
  friend QuadNumber operator/(const QuadNumber& a, i64 k);
  QuadNumber& operator+=(const QuadNumber& o) { return *this = *this + o; }
  QuadNumber& operator-=(const QuadNumber& o) { return *this = *this - o; }

  friend bool operator==(const QuadNumber& a, const QuadNumber& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ &&
           (a.q_ == 0 || a.disc_ == b.disc_);
  }
  friend std::strong_ordering operator<=>(const QuadNumber& a, const QuadNumber& b);

  std::string to_string() const;

 private:
  static QuadNumber from_wide(i128 p, i128 q, i128 d, i64 disc);

  i64 p_ = 0;
  i64 q_ = 0;
  i64 d_ = 1;
  i64 disc_ = 0;
};

QuadNumber abs(const QuadNumber& x);
i64 floor_to_int(const QuadNumber& x);
i64 ceil_to_int(const QuadNumber& x);
std::ostream& operator<<(std::ostream& os, const QuadNumber& x);

/// Exact sign of p + q*sqrt(disc) for wide integers.
int sign_of(i128 p, i128 q, i64 disc);

/// m + n*w in the ring Z[w].
struct QuadElem {
  i64 m = 0;
  i64 n = 0;

  friend QuadElem operator+(QuadElem a, QuadElem b) { return {a.m + b.m, a.n + b.n}; }
  friend QuadElem operator-(QuadElem a, QuadElem b) { return {a.m - b.m, a.n - b.n}; }
  friend QuadElem operator*(i64 k, QuadElem a) { return {k * a.m, k * a.n}; }
  QuadElem operator-() const { return {-m, -n}; }
  bool is_zero() const { return m == 0 && n == 0; }
  friend bool operator==(const QuadElem&, const QuadElem&) = default;
  friend auto operator<=>(const QuadElem&, const QuadElem&) = default;
};

/// The real quadratic ring Z[w] with w^2 = b*w + c, discriminant D = b^2 + 4c
/// (positive, not a square). w = (b + sqrt D)/2 is the physical generator and
/// w' = (b - sqrt D)/2 its conjugate; the star map is m + n*w -> m + n*w'.
struct QuadRing {
  i64 b = 1;
  i64 c = 1;

  static QuadRing golden() { return {1, 1}; }

  i64 discriminant() const { return b * b + 4 * c; }
  bool is_golden() const { return b == 1 && c == 1; }
  void validate() const;

  QuadNumber omega() const { return make_value(0, 1); }
  QuadNumber omega_conj() const { return star(QuadElem{0, 1}); }
  QuadNumber phys(QuadElem x) const { return make_value(x.m, x.n); }
  QuadNumber star(QuadElem x) const;

  /// Interprets an exact field value as a ring element; throws if not integral.
  QuadElem from_phys(const QuadNumber& v) const;

  /// Exact sign of phys(a) - phys(b) without building QuadNumbers.
  int compare_phys(QuadElem a, QuadElem b) const;
  int compare_star(QuadElem a, QuadElem b) const;

  friend bool operator==(const QuadRing&, const QuadRing&) = default;

 private:
  QuadNumber make_value(i64 m, i64 n) const;
};

struct QuadElemHash {
  std::size_t operator()(const QuadElem& x) const noexcept {
    auto h = std::hash<i64>{}(x.m);
    return h ^ (std::hash<i64>{}(x.n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

}  // namespace modelap
