#include "modelap/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "modelap/errors.hpp"
#include "modelap/kernels.hpp"
#include "modelap/meyer.hpp"
#include "modelap/model_set.hpp"

namespace modelap {

namespace {

void require_cover(const PointSet& ps, const Region& box, const char* what) {
  if (!ps.region().covers(box)) throw PreconditionError(std::string(what) + ": point set not enumerated on the averaging region");
}

double tail_oscillation(const std::vector<double>& v) {
  if (v.empty()) return 0;
  const auto first = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  const auto [lo, hi] = std::minmax_element(first, v.end());
  return *hi - *lo;
}

DensityEstimate finish(DensityEstimate e) {
  e.value = e.partials.empty() ? 0.0 : e.partials.back();
  e.oscillation = tail_oscillation(e.partials);
  return e;
}

QuadNumber exact_norm_bound(const Cps& cps, const LatticeCoords& t) { return rational_upper(norm(cps.physical(t))); }

}  // namespace

AveragingSequence AveragingSequence::geometric(int dim, i64 n_min, i64 n_max, int count) {
  if (n_min < 1 || n_max < n_min || count < 1) throw PreconditionError("bad averaging sequence parameters");
  AveragingSequence a{dim, {}};
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
    const auto n = static_cast<i64>(std::llround(static_cast<double>(n_min) * std::pow(static_cast<double>(n_max) / n_min, f)));
    if (a.indices.empty() || n > a.indices.back()) a.indices.push_back(n);
  }
  if (a.indices.back() != n_max) a.indices.push_back(n_max);
  return a;
}

void AveragingSequence::validate() const {
  if (dim < 1) throw PreconditionError("averaging sequence needs a positive dimension");
  if (indices.empty()) throw PreconditionError("averaging sequence is empty");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1) throw PreconditionError("averaging indices must be positive");
    if (i > 0 && indices[i] <= indices[i - 1]) throw PreconditionError("averaging indices must increase strictly");
  }
}

double AveragingSequence::volume(i64 n) const { return std::pow(2.0 * static_cast<double>(n), dim); }

std::size_t count_in(const PointSet& ps, const Region& box) {
  if (ps.exact_1d()) {
    const Cps& cps = *ps.cps();
    const auto& pts = ps.points();
    const Interval& s = box.side(0);
    const auto lo = std::partition_point(pts.begin(), pts.end(), [&](const Point& p) { return cps.phys_exact(*p.coords) < s.lo; });
    const auto hi = std::partition_point(lo, pts.end(), [&](const Point& p) { return cps.phys_exact(*p.coords) <= s.hi; });
    return static_cast<std::size_t>(hi - lo);
  }
  std::size_t c = 0;
  for (const auto& p : ps.points()) {
    const bool in = ps.exact() ? box.contains(ps.cps()->physical_exact(*p.coords))
                               : box.contains(std::span<const double>(p.phys.data(), p.phys.size()));
    c += in ? 1 : 0;
  }
  return c;
}

DensityEstimate density(const PointSet& ps, const AveragingSequence& avg) {
  avg.validate();
  if (avg.dim != ps.dim()) throw PreconditionError("density: dimension mismatch");
  require_cover(ps, avg.region(avg.largest()), "density");
  DensityEstimate e;
  for (i64 n : avg.indices) {
    const std::size_t c = count_in(ps, avg.region(n));
    e.n.push_back(n);
    e.counts.push_back(c);
    e.partials.push_back(static_cast<double>(c) / avg.volume(n));
  }
  return finish(std::move(e));
}

std::size_t symmetric_difference_count(const PointSet& lam, const PointSet& gam, const Region& box) {
  require_cover(lam, box, "d_B");
  require_cover(gam, box, "d_B");
  const PointSet a = lam.restricted(box);
  const PointSet b = gam.restricted(box);
  const bool exact = a.exact() && b.exact() && *a.cps() == *b.cps();
  const PointLookup lookup(b);
  std::size_t common = 0;
  for (const auto& p : a.points()) {
    const bool hit = exact ? lookup.find(*p.coords).has_value() : lookup.find(p.phys).has_value();
    common += hit ? 1 : 0;
  }
  return a.size() + b.size() - 2 * common;
}

DensityEstimate d_B(const PointSet& lam, const PointSet& gam, const AveragingSequence& avg) {
  avg.validate();
  DensityEstimate e;
  for (i64 n : avg.indices) {
    const std::size_t c = symmetric_difference_count(lam, gam, avg.region(n));
    e.n.push_back(n);
    e.counts.push_back(c);
    e.partials.push_back(static_cast<double>(c) / avg.volume(n));
  }
  return finish(std::move(e));
}

std::vector<AlmostPeriod> almost_periods(const PointSet& lam, double eps, const Region& search,
                                         const AveragingSequence& avg) {
  avg.validate();
  if (!lam.exact()) throw PreconditionError("almost_periods needs lattice coordinates");
  QuadNumber reach(0);
  for (const auto& s : search.sides()) reach = std::max({reach, abs(s.lo), abs(s.hi)});
  const i64 n = avg.largest();
  require_cover(lam, avg.region(n).expanded(reach), "almost_periods");
  const PointSet cand = difference_set(lam, search);
  if (cand.empty()) throw PreconditionError("no difference of the set lies in the search region");
  std::vector<double> values(cand.size());
  if (lam.exact_1d()) {
    std::vector<QuadElem> shifts;
    shifts.reserve(cand.size());
    for (const auto& p : cand.points()) shifts.push_back(Cps::elem(*p.coords));
    const auto counts = kernels::parallel::shift_mismatch_counts(lam, shifts, n);
    for (std::size_t i = 0; i < counts.size(); ++i) values[i] = static_cast<double>(counts[i]) / avg.volume(n);
  } else {
    for (std::size_t i = 0; i < cand.size(); ++i)
      values[i] = d_B(lam, lam.translated(*cand[i].coords), AveragingSequence::single(avg.dim, n)).value;
  }
  std::vector<AlmostPeriod> out;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (values[i] < eps) out.push_back({*cand[i].coords, cand[i].phys[0], values[i]});
  return out;
}

PointSet intersect_translates(const PointSet& lam, const LatticeCoords& t, int n) {
  if (!lam.exact()) throw PreconditionError("exact translates need lattice coordinates");
  if (n < 0) throw PreconditionError("intersect_translates needs n >= 0");
  const Cps& cps = *lam.cps();
  const auto shift = cps.physical_exact(t);
  Region region = lam.region();
  std::vector<QuadNumber> v(shift.size(), QuadNumber(0));
  for (int j = 1; j <= n; ++j) {
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += shift[c];
    region = region.intersect(lam.region().translated(v));
  }
  const PointLookup lookup(lam);
  std::vector<Point> kept;
  for (const auto& p : lam.points()) {
    bool all = true;
    for (int j = 1; j <= n && all; ++j) all = lookup.find(*p.coords - static_cast<i64>(j) * t).has_value();
    if (all) kept.push_back(p);
  }
  return PointSet(lam.dim(), std::move(kept), region, lam.cps_ptr());
}

PointSet intersect_translates(const PointSet& lam, const Coord& t, int n) {
  if (n < 0) throw PreconditionError("intersect_translates needs n >= 0");
  std::vector<Interval> sides;
  for (int c = 0; c < lam.dim(); ++c) {
    const Interval& s = lam.region().side(c);
    const double lo = std::max(s.lo.to_double(), s.lo.to_double() + n * t[static_cast<std::size_t>(c)]);
    const double hi = std::min(s.hi.to_double(), s.hi.to_double() + n * t[static_cast<std::size_t>(c)]);
    sides.push_back(Interval::closed(rational_upper(lo), rational_lower(hi)));
  }
  const PointLookup lookup(lam);
  std::vector<Point> kept;
  for (const auto& p : lam.points()) {
    bool all = true;
    for (int j = 1; j <= n && all; ++j) {
      Coord x(p.phys);
      for (std::size_t c = 0; c < x.size(); ++c) x[c] -= j * t[c];
      all = lookup.find(x).has_value();
    }
    if (all) kept.push_back(p);
  }
  return PointSet(lam.dim(), std::move(kept), Region(std::move(sides)));
}

std::size_t P6Report::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const P6Entry& e) { return !is_zero(e.t); }));
}

bool P6Report::all_ok() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const P6Entry& e) { return e.density_ok && e.inclusion_ok && e.chain_ok; });
}

P6Report verify_p6(const PointSet& lam, double eps, int n, const AveragingSequence& avg, const Region& search,
                   double tolerance) {
  if (!(eps > 0 && eps < 1)) throw PreconditionError("verify_p6 needs 0 < eps < 1");
  if (n < 1) throw PreconditionError("verify_p6 needs n >= 1");
  P6Report rep;
  rep.eps = eps;
  rep.n = n;
  rep.tolerance = tolerance;
  rep.density = density(lam, avg).value;
  if (!(rep.density > 0)) throw PreconditionError("verify_p6 needs a set of positive density");
  rep.threshold = eps * rep.density / n;
  const auto periods = almost_periods(lam, rep.threshold, search, avg);
  const Region box = avg.region(avg.largest());
  const Cps& cps = *lam.cps();
  for (const auto& ap : periods) require_cover(lam, box.expanded(exact_norm_bound(cps, ap.t) * n), "verify_p6");
  rep.entries.resize(periods.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < periods.size(); ++idx) {
    const AlmostPeriod& ap = periods[idx];
    P6Entry& e = rep.entries[idx];
    e.t = ap.t;
    e.phys = ap.phys;
    e.d_b = ap.d_b;
    const QuadNumber reach = exact_norm_bound(cps, ap.t) * n;

    const PointSet gamma = intersect_translates(lam, ap.t, n);
    e.density_gamma = density(gamma, avg).value;
    e.density_ok = e.density_gamma >= (1 - eps) * rep.density - tolerance;

    std::vector<PointSet> shifted;
    for (int k = 0; k <= n; ++k) shifted.push_back(lam.translated(static_cast<i64>(k) * ap.t));
    std::vector<PointLookup> in_shift;
    in_shift.reserve(shifted.size());
    for (const auto& s : shifted) in_shift.emplace_back(s);

    const PointLookup in_gamma(gamma);
    const PointSet trimmed = lam.restricted(lam.region().shrunk(reach));
    e.inclusion_ok = true;
    for (const auto& p : trimmed.points()) {
      if (in_gamma.find(*p.coords)) continue;
      ++e.inclusion_checked;
      bool hit = false;
      for (int k = 0; k < n && !hit; ++k)
        hit = in_shift[static_cast<std::size_t>(k)].find(*p.coords).has_value() !=
              in_shift[static_cast<std::size_t>(k + 1)].find(*p.coords).has_value();
      if (!hit) e.inclusion_ok = false;
    }

    e.chain_lhs = symmetric_difference_count(lam, gamma, box);
    for (int k = 0; k < n; ++k)
      e.chain_rhs += symmetric_difference_count(shifted[static_cast<std::size_t>(k)], shifted[static_cast<std::size_t>(k + 1)], box);
    e.chain_ok = e.chain_lhs <= e.chain_rhs;
  }
  return rep;
}

namespace {

// pair counts per distinct difference in z_cap, sorted by z
std::vector<AutocorrEntry> difference_counts(const PointSet& p, const Region& z_cap) {
  double lo = 0, hi = 0;
  for (const auto& s : z_cap.sides()) {
    lo = std::min(lo, s.lo.to_double());
    hi = std::max(hi, s.hi.to_double());
  }
  const auto pairs = kernels::parallel::difference_pairs(p, lo - 1e-6, hi + 1e-6);
  std::vector<AutocorrEntry> out;
  if (p.exact()) {
    std::map<LatticeCoords, std::size_t> count;
    for (const auto& [i, j] : pairs) {
      const LatticeCoords z = *p[i].coords - *p[j].coords;
      if (z_cap.contains(p.cps()->physical_exact(z))) ++count[z];
    }
    std::vector<LatticeCoords> zs;
    for (const auto& [z, c] : count) zs.push_back(z);
    const PointSet ordered = PointSet::from_lattice(p.cps_ptr(), zs, z_cap);
    for (const auto& q : ordered.points()) out.push_back({*q.coords, q.phys[0], count[*q.coords], 0});
    return out;
  }
  if (p.dim() != 1) throw PreconditionError("floating autocorrelation is one-dimensional only");
  std::vector<double> d;
  for (const auto& [i, j] : pairs) {
    const double z = p[i].phys[0] - p[j].phys[0];
    if (z_cap.contains(std::span<const double>(&z, 1))) d.push_back(z);
  }
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size();) {
    std::size_t j = i;
    while (j < d.size() && d[j] - d[i] <= 1e-9) ++j;
    out.push_back({std::nullopt, d[i], j - i, 0});
    i = j;
  }
  return out;
}

}  // namespace

std::vector<AutocorrEntry> autocorrelation_coeffs(const PointSet& lam, i64 n, const Region& z_cap) {
  if (n < 1) throw PreconditionError("autocorrelation needs n >= 1");
  const Region box = Region::symmetric(lam.dim(), QuadNumber(n));
  require_cover(lam, box, "autocorrelation");
  auto out = difference_counts(lam.restricted(box), z_cap);
  // FLC check: distinct differences on the cap should saturate, so halving the box
  // must not shrink their number much
  if (out.size() > 64 && n >= 2) {
    const auto half = difference_counts(lam.restricted(Region::symmetric(lam.dim(), QuadNumber(n / 2))), z_cap);
    if (out.size() > half.size() + half.size() / 4 + 16)
      throw PreconditionError("difference set is not locally finite on the cap (FLC check)");
  }
  const double vol = std::pow(2.0 * static_cast<double>(n), lam.dim());
  for (auto& e : out) e.eta = static_cast<double>(e.pairs) / vol;
  return out;
}

MaxDensityReport max_density_check(std::shared_ptr<const Cps> cps, const Window& w, const AveragingSequence& avg) {
  if (!cps) throw PreconditionError("max_density_check needs a CPS");
  avg.validate();
  MaxDensityReport rep;
  rep.target = cps->density() * w.measure();
  const PointSet ps = enumerate_model_set(cps, w, avg.region(avg.largest()));
  rep.empirical = density(ps, avg);
  rep.gap = std::fabs(rep.empirical.value - rep.target);
  return rep;
}

}  // namespace modelap
