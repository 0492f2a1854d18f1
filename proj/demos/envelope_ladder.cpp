// Convergence ladder for the slow-envelope reduction: run the full wave field
// and the envelope equation from the same initial data at increasing light
// speeds and print how quickly the two agree.  The mismatch should shrink
// roughly like 1/c^2, and the printed observed order makes that visible.

#include <cstdio>

#include "rayfield/nr_limit.hpp"

using namespace rayfield;

int main() {
  LimitStudyOptions opt;
  opt.grid.n_dim = 1;
  opt.grid.points = {32, 1, 1};
  opt.speeds = {5.0, 10.0, 20.0, 40.0};
  opt.t_end = 0.2;
  opt.resolution_factor = 15.0;
  opt.profile.kind = ProfileKind::plane_wave;
  opt.profile.mode = {2, 0, 0};
  opt.profile.amplitude = cplx{0.05, 0.0};

  const LimitStudyResult res = limit_study(opt);

  std::printf("envelope ladder: %ld steps at dt = %.3e for the fastest run\n\n", res.steps,
              res.dt);
  std::printf("  %10s  %14s  %14s\n", "c", "mismatch", "observed order");
  for (size_t j = 0; j < res.speeds.size(); ++j) {
    if (j == 0)
      std::printf("  %10.1f  %14.6e  %14s\n", res.speeds[j], res.errors[j], "-");
    else
      std::printf("  %10.1f  %14.6e  %14.2f\n", res.speeds[j], res.errors[j],
                  res.orders[j - 1]);
  }
  std::printf("\nmonotone convergence: %s\n", res.strictly_decreasing() ? "yes" : "NO");
  return res.strictly_decreasing() ? 0 : 1;
}
