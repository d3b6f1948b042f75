// Serial vs OpenMP timings for each kernel; checks the results agree.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>

#include "modelap/kernels.hpp"
#include "modelap/model_set.hpp"
#include "modelap/progressions.hpp"

using namespace modelap;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double s, double p, bool same) {
  std::printf("%-24s %10.4f %10.4f %8.2fx  %s\n", name, s, p, p > 0 ? s / p : 0.0, same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
  const int reps = 3;
  auto cps = std::make_shared<const Cps>(Cps::golden());
  const QuadRing ring = cps->ring();
  const Interval w = fibonacci_window().interval_form();
  const double h = 2e5 * scale;
  const Interval region = Interval::closed(rational_lower(-h), rational_upper(h));
  std::printf("threads %d, region +-%.0f\n", omp_get_max_threads(), h);
  std::printf("%-24s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  std::vector<QuadElem> a, b;
  const double es = best_of(reps, [&] { a = kernels::serial::enumerate_ring(ring, region, w); });
  const double ep = best_of(reps, [&] { b = kernels::parallel::enumerate_ring(ring, region, w); });
  row("enumerate_ring", es, ep, a == b);

  const PointSet fib = enumerate_model_set(cps, fibonacci_window(), Region({region}));
  double gs = 0, gp = 0;
  const double ms = best_of(reps, [&] { gs = kernels::serial::min_gap(fib); });
  const double mp = best_of(reps, [&] { gp = kernels::parallel::min_gap(fib); });
  row("min_gap", ms, mp, gs == gp);

  const Region sample = Region::interval(rational_lower(-h / 2), rational_upper(h / 2));
  double cs = 0, cp = 0;
  const double rs = best_of(reps, [&] { cs = kernels::serial::covering_radius(fib, sample, 0.05); });
  const double rp = best_of(reps, [&] { cp = kernels::parallel::covering_radius(fib, sample, 0.05); });
  row("covering_radius", rs, rp, cs == cp);

  std::vector<std::pair<std::size_t, std::size_t>> ps_, pp_;
  const double ds = best_of(reps, [&] { ps_ = kernels::serial::difference_pairs(fib, 0, 20); });
  const double dp = best_of(reps, [&] { pp_ = kernels::parallel::difference_pairs(fib, 0, 20); });
  row("difference_pairs", ds, dp, ps_ == pp_);

  const PointSet small = fib.restricted(Region::interval(QuadNumber(-400), QuadNumber(400)));
  std::vector<kernels::ApRecord> as, ap;
  const double fs = best_of(1, [&] { as = kernels::serial::find_aps(small, 3); });
  const double fp = best_of(1, [&] { ap = kernels::parallel::find_aps(small, 3); });
  row("find_aps (k=3)", fs, fp, as == ap);

  std::vector<QuadElem> shifts;
  for (i64 m = -20; m <= 20; ++m)
    for (i64 n = -20; n <= 20; ++n) shifts.push_back({m, n});
  const auto hw = static_cast<i64>(h / 4);
  std::vector<std::size_t> ss, sp;
  const double xs = best_of(1, [&] { ss = kernels::serial::shift_mismatch_counts(fib, shifts, hw); });
  const double xp = best_of(1, [&] { sp = kernels::parallel::shift_mismatch_counts(fib, shifts, hw); });
  row("shift_mismatch_counts", xs, xp, ss == sp);

  std::vector<double> v = fib.restricted(Region::interval(QuadNumber(-2000), QuadNumber(2000))).phys_values();
  kernels::ResidualScan<double> ns, np;
  const double ts = best_of(reps, [&] { ns = kernels::serial::no3ap_min_residual<double>(v); });
  const double tp = best_of(reps, [&] { np = kernels::parallel::no3ap_min_residual<double>(v); });
  row("no3ap_min_residual", ts, tp, ns.residual == np.residual);
  return 0;
}
