#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "sllg/field.hpp"
#include "sllg/parallel.hpp"
#include "sllg/rng.hpp"
#include "sllg/spde.hpp"
#include "sllg/stats.hpp"

using namespace sllg;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Field solver: serial reference assembly against the threaded one, same
// Wiener increments, final states compared bitwise.
void bench_spde() {
  ModelParams p;
  p.L = 400.0;
  p.nx = 8001;
  p.dt = 1e-3;
  p.sigma = 0.3;
  p.seed = 99;
  const int n_steps = 200;

  MagnetizationField m0 = make_front_field(p.L, p.nx, CCState{1.0, 0.0, 0.0, p.L / 2, 0.0});
  RngStream noise(p.seed, 0);
  std::vector<double> dW(n_steps);
  for (int n = 0; n < n_steps; ++n)
    dW[static_cast<std::size_t>(n)] = std::sqrt(p.dt) * noise.normal(static_cast<std::uint64_t>(n));

  SpdeRun serial(p, m0), parallel(p, m0);
  serial.set_serial(true);

  double t0 = now_seconds();
  for (double d : dW) serial.step(d);
  double t_serial = now_seconds() - t0;

  t0 = now_seconds();
  for (double d : dW) parallel.step(d);
  double t_parallel = now_seconds() - t0;

  bool identical = true;
  for (int i = 0; i < p.nx; ++i) {
    const Vec3 &a = serial.state()[i], &b = parallel.state()[i];
    if (a.x != b.x || a.y != b.y || a.z != b.z) identical = false;
  }

  std::printf("field step      nx=%d steps=%d   serial %8.3f s   threads(%d) %8.3f s   "
              "speedup %.2fx   bitwise-identical %s\n",
              p.nx, n_steps, t_serial, max_workers(), t_parallel, t_serial / t_parallel,
              identical ? "yes" : "NO");
  if (!identical) std::exit(1);
}

// Segment-sum scan over the p grid: threaded path against a single thread.
void bench_pvariation() {
  const int n_samples = 2000000;
  RngStream rng(7, 0);
  std::vector<double> series(n_samples);
  double acc = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    acc += rng.normal(static_cast<std::uint64_t>(i));
    series[static_cast<std::size_t>(i)] = acc;
  }
  auto grid = default_p_grid();
  const int n_segments = 6000, segment_len = 320;

  int before = max_workers();
  set_workers(1);
  double t0 = now_seconds();
  PVariationResult r1 = pvariation_ks_test(series, grid, n_segments, segment_len);
  double t_serial = now_seconds() - t0;
  set_workers(before);

  t0 = now_seconds();
  PVariationResult r2 = pvariation_ks_test(series, grid, n_segments, segment_len);
  double t_parallel = now_seconds() - t0;

  bool identical = r1.p_star == r2.p_star && r1.ks_min == r2.ks_min;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (r1.ks_distance[i] != r2.ks_distance[i]) identical = false;

  std::printf("p-variation     segs=%d len=%d    serial %8.3f s   threads(%d) %8.3f s   "
              "speedup %.2fx   bitwise-identical %s\n",
              n_segments, segment_len, t_serial, max_workers(), t_parallel,
              t_serial / t_parallel, identical ? "yes" : "NO");
  if (!identical) std::exit(1);
}

}  // namespace

int main() {
  std::printf("kernel benchmarks, %d worker(s) available\n", max_workers());
  bench_spde();
  bench_pvariation();
  return 0;
}
