#include "modelap/quad.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "modelap/errors.hpp"

namespace modelap {

namespace {

constexpr i128 kI64Max = static_cast<i128>(INT64_MAX);

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) { return v <= kI64Max && v >= -kI64Max; }

i64 combine_disc(i64 a_disc, i64 a_q, i64 b_disc, i64 b_q) {
  if (a_q == 0) return b_disc;
  if (b_q == 0) return a_disc;
  if (a_disc != b_disc) throw std::invalid_argument("QuadNumber: mixing different quadratic fields");
  return a_disc;
}

}  // namespace

int sign_of(i128 p, i128 q, i64 disc) {
  if (q == 0 || disc == 0) return (p > 0) - (p < 0);
  if (p >= 0 && q >= 0) return (p > 0 || q > 0) ? 1 : 0;
  if (p <= 0 && q <= 0) return -1;
  // Opposite signs: compare p^2 with disc*q^2.
  const i128 ap = abs128(p);
  const i128 aq = abs128(q);
  int cmp;  // sign of p^2 - disc*q^2
  constexpr i128 kFast = static_cast<i128>(1) << 55;
  if (ap < kFast && aq < kFast && disc < (1 << 14)) {
    const i128 lhs = ap * ap;
    const i128 rhs = static_cast<i128>(disc) * aq * aq;
    cmp = (lhs > rhs) - (lhs < rhs);
  } else {
    using boost::multiprecision::int256_t;
    auto widen = [](i128 v) {
      const auto hi = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) >> 64);
      const auto lo = static_cast<std::uint64_t>(v);
      int256_t r = hi;
      r <<= 64;
      r += lo;
      return r;
    };
    const int256_t wp = widen(ap);
    const int256_t wq = widen(aq);
    const int256_t lhs = wp * wp;
    const int256_t rhs = int256_t(disc) * wq * wq;
    cmp = (lhs > rhs) - (lhs < rhs);
  }
  return p > 0 ? cmp : -cmp;
}

QuadNumber QuadNumber::from_wide(i128 p, i128 q, i128 d, i64 disc) {
  if (d == 0) throw std::domain_error("QuadNumber: division by zero");
  if (d < 0) {
    p = -p;
    q = -q;
    d = -d;
  }
  i128 g = gcd128(gcd128(p, q), d);
  if (g > 1) {
    p /= g;
    q /= g;
    d /= g;
  }
  if (!fits64(p) || !fits64(q) || !fits64(d)) throw std::overflow_error("QuadNumber: 64-bit overflow");
  QuadNumber r;
  r.p_ = static_cast<i64>(p);
  r.q_ = static_cast<i64>(q);
  r.d_ = static_cast<i64>(d);
  r.disc_ = r.q_ == 0 ? 0 : disc;
  return r;
}

QuadNumber QuadNumber::rational(i64 num, i64 den) { return from_wide(num, 0, den, 0); }

QuadNumber QuadNumber::make(i64 p, i64 q, i64 d, i64 disc) {
  if (q != 0 && disc <= 0) throw std::invalid_argument("QuadNumber: irrational part needs a positive discriminant");
  return from_wide(p, q, d, disc);
}

QuadNumber QuadNumber::parse_decimal(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("not an exact decimal: '" + std::string(text) + "'"); };
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  i128 num = 0;
  i128 den = 1;
  bool any_digit = false;
  auto push_digit = [&](char ch) {
    num = num * 10 + (ch - '0');
    if (num > kI64Max * 1000) fail();
    any_digit = true;
  };
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) push_digit(text[i++]);
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      push_digit(text[i++]);
      den *= 10;
      if (den > kI64Max) fail();
    }
  }
  if (!any_digit) fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg_exp = text[i++] == '-';
    int exp = 0;
    bool exp_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exp = exp * 10 + (text[i++] - '0');
      exp_digit = true;
      if (exp > 36) fail();
    }
    if (!exp_digit) fail();
    for (int k = 0; k < exp; ++k) {
      if (neg_exp)
        den *= 10;
      else
        num *= 10;
      if (den > kI64Max * 1000 || num > kI64Max * 1000) fail();
    }
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) fail();
  return from_wide(negative ? -num : num, 0, den, 0);
}

int QuadNumber::sign() const { return sign_of(p_, q_, disc_); }

long double QuadNumber::to_long_double() const {
  long double v = static_cast<long double>(p_);
  if (q_ != 0) v += static_cast<long double>(q_) * std::sqrt(static_cast<long double>(disc_));
  return v / static_cast<long double>(d_);
}

QuadNumber QuadNumber::div_sqrt_disc(i64 disc) const {
  const i64 D = disc_ != 0 ? disc_ : disc;
  if (D <= 0) throw std::invalid_argument("QuadNumber: unknown discriminant");
  // (p + q sqrt D) / (d sqrt D) = (q D + p sqrt D) / (d D)
  return from_wide(static_cast<i128>(q_) * D, p_, static_cast<i128>(d_) * D, D);
}

QuadNumber operator+(const QuadNumber& a, const QuadNumber& b) {
  const i64 D = combine_disc(a.disc_, a.q_, b.disc_, b.q_);
  return QuadNumber::from_wide(static_cast<i128>(a.p_) * b.d_ + static_cast<i128>(b.p_) * a.d_,
                               static_cast<i128>(a.q_) * b.d_ + static_cast<i128>(b.q_) * a.d_,
                               static_cast<i128>(a.d_) * b.d_, D);
}

QuadNumber operator-(const QuadNumber& a, const QuadNumber& b) { return a + (-b); }

QuadNumber operator*(const QuadNumber& a, const QuadNumber& b) {
  const i64 D = combine_disc(a.disc_, a.q_, b.disc_, b.q_);
  const i128 p = static_cast<i128>(a.p_) * b.p_ + static_cast<i128>(a.q_) * b.q_ * D;
  const i128 q = static_cast<i128>(a.p_) * b.q_ + static_cast<i128>(a.q_) * b.p_;
  return QuadNumber::from_wide(p, q, static_cast<i128>(a.d_) * b.d_, D);
}

QuadNumber operator*(const QuadNumber& a, i64 k) {
  return QuadNumber::from_wide(static_cast<i128>(a.p_) * k, static_cast<i128>(a.q_) * k, a.d_, a.disc_);
}

QuadNumber operator/(const QuadNumber& a, i64 k) {
  return QuadNumber::from_wide(a.p_, a.q_, static_cast<i128>(a.d_) * k, a.disc_);
}

std::strong_ordering operator<=>(const QuadNumber& a, const QuadNumber& b) {
  const i64 D = combine_disc(a.disc_, a.q_, b.disc_, b.q_);
  const i128 p = static_cast<i128>(a.p_) * b.d_ - static_cast<i128>(b.p_) * a.d_;
  const i128 q = static_cast<i128>(a.q_) * b.d_ - static_cast<i128>(b.q_) * a.d_;
  const int s = sign_of(p, q, D);
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string QuadNumber::to_string() const {
  std::ostringstream os;
  if (q_ == 0) {
    os << p_;
  } else {
    os << "(" << p_ << (q_ < 0 ? "-" : "+") << (q_ < 0 ? -q_ : q_) << "*sqrt(" << disc_ << "))";
  }
  if (d_ != 1) os << "/" << d_;
  return os.str();
}

QuadNumber abs(const QuadNumber& x) { return x.sign() < 0 ? -x : x; }

i64 floor_to_int(const QuadNumber& x) {
  const long double approx = std::floor(x.to_long_double());
  if (!(std::fabs(approx) < 9.0e18L)) throw std::overflow_error("floor_to_int: out of range");
  i64 k = static_cast<i64>(approx);
  while (QuadNumber(k) > x) --k;
  while (QuadNumber(k + 1) <= x) ++k;
  return k;
}

i64 ceil_to_int(const QuadNumber& x) { return -floor_to_int(-x); }

std::ostream& operator<<(std::ostream& os, const QuadNumber& x) { return os << x.to_string(); }

void QuadRing::validate() const {
  const i64 D = discriminant();
  if (D <= 0) throw PreconditionError("quadratic ring needs a positive discriminant");
  const auto r = static_cast<i64>(std::llround(std::sqrt(static_cast<long double>(D))));
  for (i64 s = r - 1; s <= r + 1; ++s)
    if (s >= 0 && s * s == D) throw PreconditionError("quadratic ring discriminant is a perfect square");
}

QuadNumber QuadRing::make_value(i64 m, i64 n) const {
  const i64 D = discriminant();
  return QuadNumber::make(2 * m + n * b, n, 2, D);
}

QuadNumber QuadRing::star(QuadElem x) const {
  const i64 D = discriminant();
  return QuadNumber::make(2 * x.m + x.n * b, -x.n, 2, D);
}

QuadElem QuadRing::from_phys(const QuadNumber& v) const {
  // v = (p + q sqrt D)/d = m + n (b + sqrt D)/2  =>  n = 2q/d, m = (p - n b d/2)/d
  if (v.q() != 0 && v.disc() != discriminant())
    throw PreconditionError("value is not in this quadratic field");
  const i128 two_q = static_cast<i128>(2) * v.q();
  if (two_q % v.d() != 0) throw PreconditionError("value is not a ring element: " + v.to_string());
  const i64 n = static_cast<i64>(two_q / v.d());
  const QuadNumber m_val = v - make_value(0, n);
  if (!m_val.is_rational() || m_val.d() != 1) throw PreconditionError("value is not a ring element: " + v.to_string());
  return {m_val.p(), n};
}

int QuadRing::compare_phys(QuadElem a, QuadElem x) const {
  const i128 dm = static_cast<i128>(a.m) - x.m;
  const i128 dn = static_cast<i128>(a.n) - x.n;
  return sign_of(2 * dm + b * dn, dn, discriminant());
}

int QuadRing::compare_star(QuadElem a, QuadElem x) const {
  const i128 dm = static_cast<i128>(a.m) - x.m;
  const i128 dn = static_cast<i128>(a.n) - x.n;
  return sign_of(2 * dm + b * dn, -dn, discriminant());
}

}  // namespace modelap
