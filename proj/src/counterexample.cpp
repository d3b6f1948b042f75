#include "modelap/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "modelap/errors.hpp"
#include "modelap/kernels.hpp"

namespace modelap {

namespace {

// mpfr_float keeps one process-wide default precision; hold it for the whole evaluation.
std::mutex precision_mutex;

class PrecisionScope {
 public:
  explicit PrecisionScope(int digits) : lock_(precision_mutex), saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(static_cast<unsigned>(digits));
  }
  ~PrecisionScope() { BigFloat::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  std::lock_guard<std::mutex> lock_;
  unsigned saved_;
};

void check_size(std::size_t n) {
  if (n > kNo3apGuard) throw GuardExceeded("no-3AP scan is limited to 5000 points");
}

}  // namespace

int required_digits(int n) {
  // (e/3)^(2n+2) has about 0.0428 (2n+2) leading zeros; keep 20 digits beyond it.
  const double zeros = (2.0 * n + 2) * std::log10(3.0 / std::exp(1.0));
  return static_cast<int>(std::ceil(zeros)) + 20;
}

CounterexampleSet counterexample_set(int n, int digits) {
  if (n < 0) throw PreconditionError("counterexample_set needs N >= 0");
  if (n > kCounterexampleMaxN && digits <= 17) throw PreconditionError("N above 400 needs extended precision");
  if (digits < required_digits(n)) throw PreconditionError("precision insufficient for the requested N");
  PrecisionScope scope(digits);
  CounterexampleSet out;
  out.n = n;
  out.digits = digits;
  const BigFloat q = boost::multiprecision::exp(BigFloat(1)) / 3;
  std::vector<std::pair<BigFloat, i64>> pts;
  pts.emplace_back(BigFloat(0), 0);
  BigFloat power = q * q;  // q^2
  for (int k = 1; k <= n; ++k) {
    const BigFloat odd = power * q;   // q^(2k+1)
    const BigFloat even = odd * q;    // q^(2k+2)
    pts.emplace_back(BigFloat(k) + even, k);
    pts.emplace_back(BigFloat(-k) + odd, -k);
    power = even;
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [v, i] : pts) {
    out.values.push_back(v);
    out.index.push_back(i);
  }
  return out;
}

No3apReport verify_no_3ap(const CounterexampleSet& set, double tol) {
  check_size(set.values.size());
  PrecisionScope scope(set.digits);
  No3apReport rep;
  rep.size = set.values.size();
  rep.tol = tol;
  if (set.values.size() < 3) {
    rep.passes = true;
    rep.residual = std::numeric_limits<double>::infinity();
    rep.min_residual = "inf";
    return rep;
  }
  // The precision scope is process-wide, so the multiprecision scan stays serial.
  const auto scan = kernels::serial::no3ap_min_residual(std::span<const BigFloat>(set.values));
  rep.a = scan.a;
  rep.b = scan.b;
  rep.c = scan.c;
  rep.residual = scan.residual.convert_to<double>();
  rep.min_residual = scan.residual.str(12, std::ios_base::scientific);
  rep.passes = scan.residual > tol;
  return rep;
}

No3apReport verify_no_3ap(const PointSet& ps, double tol) {
  check_size(ps.size());
  if (ps.dim() != 1) throw PreconditionError("verify_no_3ap is one-dimensional");
  No3apReport rep;
  rep.size = ps.size();
  rep.tol = tol;
  if (ps.size() < 3) {
    rep.passes = true;
    rep.residual = std::numeric_limits<double>::infinity();
    rep.min_residual = "inf";
    return rep;
  }
  if (ps.exact_1d()) {
    std::vector<QuadNumber> v;
    v.reserve(ps.size());
    for (const auto& p : ps.points()) v.push_back(ps.cps()->phys_exact(*p.coords));
    const auto scan = kernels::parallel::no3ap_min_residual(std::span<const QuadNumber>(v));
    rep.a = scan.a;
    rep.b = scan.b;
    rep.c = scan.c;
    rep.residual = scan.residual.to_double();
    rep.min_residual = scan.residual.to_string();
    rep.passes = scan.residual.to_long_double() > tol;
    return rep;
  }
  const auto v = ps.phys_values();
  const auto scan = kernels::parallel::no3ap_min_residual(std::span<const double>(v));
  rep.a = scan.a;
  rep.b = scan.b;
  rep.c = scan.c;
  rep.residual = scan.residual;
  rep.min_residual = std::to_string(scan.residual);
  rep.passes = scan.residual > tol;
  return rep;
}

}  // namespace modelap
