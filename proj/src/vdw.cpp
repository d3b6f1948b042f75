#include "modelap/vdw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "modelap/errors.hpp"
#include "modelap/kernels.hpp"
#include "modelap/model_set.hpp"

namespace modelap {

namespace {

class VdwSearch {
 public:
  VdwSearch(int r, int k, int n_max) : r_(r), k_(k), n_max_(n_max), col_(static_cast<std::size_t>(n_max), 0) {}

  void run() { dfs(0, 0); }

  bool hit_max() const { return hit_max_; }
  int best_length() const { return best_len_; }
  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // Does colour c at pos complete a monochromatic k-AP ending at pos?
  bool completes(int pos, int c) const {
    for (int d = 1; pos - (k_ - 1) * d >= 0; ++d) {
      int j = 1;
      while (j < k_ && col_[static_cast<std::size_t>(pos - j * d)] == c) ++j;
      if (j == k_) return true;
    }
    return false;
  }

  void dfs(int pos, int max_used) {
    ++nodes_;
    if (pos > best_len_) {
      best_len_ = pos;
      best_.assign(col_.begin(), col_.begin() + pos);
    }
    if (pos == n_max_) {
      hit_max_ = true;
      return;
    }
    // Colours are interchangeable: a new colour is only ever the next unused one.
    const int top = std::min(r_, max_used + 1);
    for (int c = 1; c <= top && !hit_max_; ++c) {
      if (completes(pos, c)) continue;
      col_[static_cast<std::size_t>(pos)] = c;
      dfs(pos + 1, std::max(max_used, c));
      col_[static_cast<std::size_t>(pos)] = 0;
    }
  }

  int r_, k_, n_max_;
  std::vector<int> col_;
  std::vector<int> best_;
  int best_len_ = -1;
  bool hit_max_ = false;
  std::uint64_t nodes_ = 0;
};

Region ball_box(const Coord& center, double radius) {
  std::vector<std::pair<QuadNumber, QuadNumber>> sides;
  for (double c : center) sides.emplace_back(rational_lower(c - radius), rational_upper(c + radius));
  return Region::box(sides);
}

bool in_ball(const Coord& x, const Coord& center, double radius) { return distance(x, center) <= radius * (1 + 1e-12); }

bool monochromatic(const Progression& ap, const PointSet& ps, const PointLookup& lookup, const Coloring& col) {
  int colour = 0;
  for (int j = 0; j < ap.length; ++j) {
    const auto idx = ap.exact() ? lookup.find(ap.term_coords(j)) : lookup.find(ap.term(j));
    if (!idx) return false;
    const int c = col.colors[*idx];
    if (j == 0) colour = c;
    if (c != colour) return false;
  }
  (void)ps;
  return true;
}

std::optional<Interval> clip(const Interval& a, const Interval& b) {
  Interval out = a;
  if (b.lo > out.lo || (b.lo == out.lo && !b.lo_closed)) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed && (b.lo != a.lo || a.lo_closed);
  }
  if (b.hi < out.hi || (b.hi == out.hi && !b.hi_closed)) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed && (b.hi != a.hi || a.hi_closed);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// a \ b as at most two intervals.
std::vector<Interval> subtract(const Interval& a, const Interval& b) {
  std::vector<Interval> out;
  if (auto l = clip(a, Interval{a.lo, b.lo, a.lo_closed, !b.lo_closed})) out.push_back(*l);
  if (auto r = clip(a, Interval{b.hi, a.hi, !b.hi_closed, a.hi_closed})) out.push_back(*r);
  return out;
}

}  // namespace

VdwOracleResult vdw_number_oracle(int r, int k, int n_max) {
  if (r < 1) throw PreconditionError("vdw oracle needs r >= 1");
  if (k < 2) throw PreconditionError("vdw oracle needs k >= 2");
  if (n_max > kVdwGuard) throw GuardExceeded("vdw oracle: n_max above the guard of 40");
  if (n_max < 1) throw PreconditionError("vdw oracle needs n_max >= 1");
  VdwSearch search(r, k, n_max);
  search.run();
  VdwOracleResult out;
  out.nodes = search.nodes();
  out.witness = search.best();
  if (!search.hit_max()) out.value = search.best_length() + 1;
  return out;
}

std::optional<std::vector<int>> find_monochromatic_integer_ap(const std::vector<int>& colours, int k) {
  if (k < 1) throw PreconditionError("k must be positive");
  const int n = static_cast<int>(colours.size());
  for (int a = 0; a < n; ++a) {
    for (int d = 1; a + (k - 1) * d < n; ++d) {
      int j = 1;
      while (j < k && colours[static_cast<std::size_t>(a + j * d)] == colours[static_cast<std::size_t>(a)]) ++j;
      if (j == k) {
        std::vector<int> out;
        for (int i = 0; i < k; ++i) out.push_back(a + i * d);
        return out;
      }
    }
  }
  return std::nullopt;
}

bool has_monochromatic_ap(const std::vector<int>& colours, int k) {
  return find_monochromatic_integer_ap(colours, k).has_value();
}

std::string Coloring::describe() const {
  std::ostringstream os;
  switch (scheme) {
    case ColoringScheme::random: os << "random(seed=" << seed << ")"; break;
    case ColoringScheme::periodic: os << "periodic"; break;
    case ColoringScheme::internal_threshold: os << "internal-threshold"; break;
    case ColoringScheme::constant: os << "constant"; break;
    case ColoringScheme::explicit_list: os << "explicit"; break;
  }
  os << " r=" << r;
  return os.str();
}

Coloring color(const PointSet& ps, ColoringScheme scheme, int r, std::uint64_t seed) {
  if (r < 1) throw PreconditionError("colouring needs r >= 1");
  Coloring out;
  out.scheme = scheme;
  out.r = r;
  out.seed = seed;
  out.colors.assign(ps.size(), 1);
  switch (scheme) {
    case ColoringScheme::constant:
      break;
    case ColoringScheme::periodic:
      for (std::size_t i = 0; i < ps.size(); ++i) out.colors[i] = static_cast<int>(i % static_cast<std::size_t>(r)) + 1;
      break;
    case ColoringScheme::random: {
      std::mt19937_64 rng(seed);
      for (auto& c : out.colors) c = static_cast<int>(rng() % static_cast<std::uint64_t>(r)) + 1;
      break;
    }
    case ColoringScheme::internal_threshold: {
      if (!ps.window() || ps.window()->dim() != 1)
        throw PreconditionError("internal-threshold colouring needs a one-dimensional window");
      const Interval w = ps.window()->interval_form();
      const QuadNumber len = w.length();
      const bool exact = ps.exact() && ps.cps()->algebraic();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        int slice = 0;
        if (exact) {
          const QuadNumber y = ps.cps()->star_exact(*ps[i].coords);
          for (int j = r - 1; j >= 1; --j)
            if (w.lo + len * j / r <= y) {
              slice = j;
              break;
            }
        } else {
          if (ps[i].internal.empty()) throw PreconditionError("internal-threshold colouring needs internal coordinates");
          const double frac = (ps[i].internal[0] - w.lo.to_double()) / len.to_double();
          slice = std::clamp(static_cast<int>(frac * r), 0, r - 1);
        }
        out.colors[i] = slice + 1;
      }
      break;
    }
    case ColoringScheme::explicit_list:
      throw PreconditionError("explicit colourings are built with explicit_coloring");
  }
  return out;
}

Coloring explicit_coloring(const PointSet& ps, std::vector<int> colors, int r) {
  if (colors.size() != ps.size()) throw PreconditionError("explicit colouring does not match the point set");
  for (int c : colors)
    if (c < 1 || c > r) throw PreconditionError("colour index out of range");
  Coloring out;
  out.scheme = ColoringScheme::explicit_list;
  out.r = r;
  out.colors = std::move(colors);
  return out;
}

std::optional<Progression> find_monochromatic_ap(const PointSet& ps, const Coloring& coloring, int k, const Coord& center,
                                                 double radius) {
  if (coloring.colors.size() != ps.size()) throw PreconditionError("colouring does not match the point set");
  if (!ps.region().covers(ball_box(center, radius))) throw PreconditionError("ball is not covered by the enumerated region");
  const auto inside = indices_in_ball(ps, center, radius);
  for (int c = 1; c <= coloring.r; ++c) {
    std::vector<std::size_t> cls;
    for (auto i : inside)
      if (coloring.colors[i] == c) cls.push_back(i);
    if (static_cast<int>(cls.size()) < k) continue;
    const PointSet sub = subset(ps, cls);
    auto aps = find_aps_bruteforce(sub, k);
    if (aps.empty()) continue;
    Progression ap = aps.front();
    ap.length = k;
    return ap;
  }
  return std::nullopt;
}

VdwRadius model_vdw_radius(std::shared_ptr<const Cps> cps, const Window& w, int r, int k) {
  const auto oracle = vdw_number_oracle(r, k);
  if (!oracle.value) throw GuardExceeded("W(r,k) exceeds the oracle guard");
  VdwRadius out{r, k, *oracle.value, 0};
  out.radius = bounded_gap_radius(std::move(cps), w, out.n - 1);
  return out;
}

bool VdwCertificate::all_ok() const {
  return std::all_of(trace.begin(), trace.end(), [](const CertificateEntry& e) { return e.ok; });
}

VdwCertificate certify_vdw(const PointSet& ps, const std::vector<Coloring>& colorings, const std::vector<Coord>& centers,
                           int r, int k, int n, double radius) {
  VdwCertificate cert{r, k, n, radius, {}};
  const PointLookup lookup(ps);
  for (const auto& center : centers) {
    const auto inside = indices_in_ball(ps, center, radius);
    std::optional<Progression> carrier;
    if (static_cast<int>(inside.size()) >= n) {
      const PointSet ball = subset(ps, inside);
      const auto recs = kernels::parallel::find_aps(ball, std::max(n, 2));
      if (!recs.empty()) {
        const auto& rec = recs.front();
        Progression p;
        p.start = ball[rec.first].phys;
        p.diff = Coord(p.start.size());
        for (std::size_t i = 0; i < p.diff.size(); ++i) p.diff[i] = ball[rec.second].phys[i] - p.start[i];
        if (ball.exact()) {
          p.start_coords = *ball[rec.first].coords;
          p.diff_coords = *ball[rec.second].coords - *ball[rec.first].coords;
        }
        p.length = n;
        carrier = p;
      }
    }
    for (const auto& col : colorings) {
      CertificateEntry e;
      e.center = center;
      e.coloring = col.describe();
      e.ap = find_monochromatic_ap(ps, col, k, center, radius);
      bool direct_ok = false;
      if (e.ap) {
        direct_ok = verify_ap(*e.ap, ps.cps()) && monochromatic(*e.ap, ps, lookup, col);
        for (int j = 0; j < e.ap->length && direct_ok; ++j) direct_ok = in_ball(e.ap->term(j), center, radius);
      }
      e.carrier = carrier;
      if (carrier) {
        std::vector<int> induced;
        bool found_all = true;
        for (int j = 0; j < n; ++j) {
          const auto idx = carrier->exact() ? lookup.find(carrier->term_coords(j)) : lookup.find(carrier->term(j));
          if (!idx) {
            found_all = false;
            break;
          }
          induced.push_back(col.colors[*idx]);
        }
        if (found_all) {
          if (auto l = find_monochromatic_integer_ap(induced, k)) {
            e.integer_ap = *l;
            Progression t;
            const int l1 = (*l)[0];
            const int step = k > 1 ? (*l)[1] - (*l)[0] : 1;
            t.start = carrier->term(l1);
            t.diff = Coord(carrier->diff);
            for (auto& v : t.diff) v *= step;
            if (carrier->exact()) {
              t.start_coords = carrier->term_coords(l1);
              t.diff_coords = static_cast<i64>(step) * *carrier->diff_coords;
            }
            t.length = k;
            bool ok = verify_ap(t, ps.cps()) && monochromatic(t, ps, lookup, col);
            for (int j = 0; j < k && ok; ++j) ok = in_ball(t.term(j), center, radius);
            e.transferred = t;
            e.transfer_ok = ok;
          }
        }
      }
      e.ok = direct_ok && e.transfer_ok;
      cert.trace.push_back(std::move(e));
    }
  }
  return cert;
}

MeyerVdwRadius meyer_vdw_radius(const PointSet& meyer, const PointSet& model, const std::vector<LatticeCoords>& f, int r,
                                int k, const Region& cover_region) {
  if (f.empty()) throw PreconditionError("cover set F is empty");
  if (!meyer.exact() || !model.exact()) throw PreconditionError("meyer_vdw_radius needs lattice point sets");
  const Cps& cps = *model.cps();
  double max_shift = 0;
  for (const auto& t : f) max_shift = std::max(max_shift, norm(cps.physical(t)));
  if (!meyer.region().covers(cover_region.expanded(rational_upper(max_shift))))
    throw PreconditionError("Meyer set is not enumerated far enough around the cover region");
  const PointLookup lookup(meyer);
  const PointSet part = model.restricted(cover_region);
  for (const auto& p : part.points()) {
    const bool covered = std::any_of(f.begin(), f.end(), [&](const LatticeCoords& t) { return lookup.find(*p.coords - t).has_value(); });
    if (!covered) throw PreconditionError("cover verification failed: model set not contained in Meyer set + F");
  }

  MeyerVdwRadius out;
  out.max_shift = max_shift;
  const bool same_scheme = meyer.cps() && *meyer.cps() == cps && cps.algebraic() && meyer.window() && model.window();
  if (same_scheme) {
    const auto oracle = vdw_number_oracle(r, k);
    if (!oracle.value) throw GuardExceeded("W(r,k) exceeds the oracle guard");
    out.n = *oracle.value;
    const Interval wl = meyer.window()->interval_form();
    std::vector<Interval> remaining{model.window()->interval_form()};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : f) {
      const Interval shifted = wl.translated(cps.star_exact(t));
      std::vector<Interval> next;
      for (const auto& piece : remaining) {
        if (auto cls = clip(piece, shifted); cls && cls->has_interior()) {
          out.pieces.push_back(*cls);
          best = std::min(best, bounded_gap_radius(model.cps_ptr(), Window::interval(*cls), out.n - 1));
        }
        for (auto& rest : subtract(piece, shifted)) next.push_back(rest);
      }
      remaining = std::move(next);
    }
    if (std::isfinite(best)) {
      out.route = MeyerRoute::cover_classes;
      out.r_prime = best;
      out.radius = best + max_shift;
      return out;
    }
  }
  if (!model.window()) throw PreconditionError("covering model set has no window");
  const int colours = static_cast<int>(f.size()) * r;
  const VdwRadius inner = model_vdw_radius(model.cps_ptr(), *model.window(), colours, k);
  out.route = MeyerRoute::product_coloring;
  out.n = inner.n;
  out.r_prime = inner.radius;
  out.radius = inner.radius + max_shift;
  return out;
}

}  // namespace modelap
