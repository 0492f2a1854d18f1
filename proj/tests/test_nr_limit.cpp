// Envelope-limit checks: carrier dressing round-trips, well-prepared data
// sits on the single oscillation branch, and the envelope mismatch falls
// off as the second power of the light speed.
#include <catch2/catch_amalgamated.hpp>

#include "rayfield/nr_limit.hpp"

using namespace rayfield;

namespace {

GridSpec line_grid(int n, double length) {
  GridSpec g;
  g.n_dim = 1;
  g.points = {n, 1, 1};
  g.extent = {length, 2.0 * pi, 2.0 * pi};
  return g;
}

}  // namespace

TEST_CASE("carrier dressing round-trips the envelope exactly") {
  GridSpec g = line_grid(16, 2.0 * pi);
  ProblemOptions o;
  o.grid = g;
  o.consts.c = 12.0;
  o.lambda0 = {{cplx{0.5, 0.0}, 3.0}};
  const FieldProblem kg = build_problem(PresetKind::kg, o);
  const FieldProblem nls = build_problem(PresetKind::schrodinger, o);

  InitialProfile prof;
  prof.kind = ProfileKind::mixed_modes;
  prof.kmax = 2;
  prof.seed = 5;
  FieldState env;
  env.t = 0.37;  // nonzero time exercises the carrier phase
  env.phi = sample_profile(g, prof);

  const FieldState dressed = dress_envelope(kg, nls, env);
  const FieldState back = strip_carrier(kg, nls.sign, nls.weight.b0, dressed);
  REQUIRE(back.phi.size() == env.phi.size());
  CHECK(back.t == env.t);
  CHECK(rel_l2_distance(g, back.phi, env.phi) < 1e-13);
  CHECK(back.pi.empty());
}

TEST_CASE("well-prepared data sits on the single oscillation branch") {
  GridSpec g = line_grid(16, 2.0 * pi);
  ProblemOptions o;
  o.grid = g;
  o.consts.c = 40.0;
  const FieldProblem kg = build_problem(PresetKind::kg, o);
  const FieldProblem nls = build_problem(PresetKind::schrodinger, o);

  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {2, 0, 0};
  FieldState env;
  env.phi = sample_profile(g, prof);

  const FieldState dressed = dress_envelope(kg, nls, env);
  const double om = dispersion_rate(kg, prof.mode);
  double worst = 0.0;
  for (size_t i = 0; i < dressed.phi.size(); ++i)
    worst = std::max(worst, std::abs(dressed.pi[i] + iu * om * dressed.phi[i]));
  // branch gap for the dressed pair is k^4/(8 c^2), far below om
  CHECK(worst < 1e-5 * om);
  CHECK(worst > 0.0);  // the envelope correction term is present
}

TEST_CASE("envelope mismatch falls off as the second power of the light speed") {
  LimitStudyOptions opt;
  opt.grid = line_grid(16, 2.0 * pi);
  opt.speeds = {5.0, 10.0, 20.0};
  opt.t_end = 0.2;
  opt.profile.kind = ProfileKind::plane_wave;
  opt.profile.mode = {2, 0, 0};

  const LimitStudyResult res = limit_study(opt);
  REQUIRE(res.errors.size() == 3);
  CHECK(res.strictly_decreasing());
  // single resolved mode: the phase gap k^4 t / (8 c^2) dominates cleanly
  const double expect = 2.0 * std::abs(std::sin(16.0 * 0.2 / (8.0 * 25.0) / 2.0));
  CHECK(std::abs(res.errors[0] - expect) < 0.05 * expect);
  for (double ord : res.orders) {
    CHECK(ord > 1.8);
    CHECK(ord < 2.2);
  }
}

TEST_CASE("limit study validates its configuration") {
  LimitStudyOptions opt;
  opt.grid = line_grid(8, 2.0 * pi);
  opt.speeds = {10.0};
  CHECK_THROWS_AS(limit_study(opt), std::invalid_argument);
  opt.speeds = {20.0, 10.0};
  CHECK_THROWS_AS(limit_study(opt), std::invalid_argument);
  opt.speeds = {10.0, 20.0};
  opt.t_end = -1.0;
  CHECK_THROWS_AS(limit_study(opt), std::invalid_argument);
}
