// Field-flow checks: spectral operator exactness, preset coefficient
// oracles, integrator convergence order, exact integrating-factor decay,
// invariant drift budgets, guard rails, and manufactured solutions.
#include <catch2/catch_amalgamated.hpp>

#include "rayfield/field.hpp"

using namespace rayfield;

namespace {

GridSpec line_grid(int n, double length) {
  GridSpec g;
  g.n_dim = 1;
  g.points = {n, 1, 1};
  g.extent = {length, 2.0 * pi, 2.0 * pi};
  return g;
}

ProblemOptions base_options(const GridSpec& g) {
  ProblemOptions o;
  o.grid = g;
  return o;
}

}  // namespace

TEST_CASE("spectral laplacian and derivative are exact on resolved modes") {
  GridSpec g = line_grid(32, 2.0 * pi);
  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {5, 0, 0};
  const FieldData f = sample_profile(g, prof);
  const double k = 2.0 * pi * 5 / g.extent[0];

  const FieldData lap = laplacian(g, f);
  const FieldData der = derivative(g, f, 0);
  double worst_lap = 0.0, worst_der = 0.0;
  for (size_t i = 0; i < f.size(); ++i) {
    worst_lap = std::max(worst_lap, std::abs(lap[i] + k * k * f[i]));
    worst_der = std::max(worst_der, std::abs(der[i] - iu * k * f[i]));
  }
  CHECK(worst_lap < 1e-12 * k * k);
  CHECK(worst_der < 1e-12 * k);
}

TEST_CASE("diffusive preset reduces to the classical smoothing flow") {
  // With w1 = pi/4 and sign +, a single mode must obey
  // du/dt = -(hbar/2m) |k|^2 u; the nonlinear gradient-form term enters as
  // -(hbar/2m) lam0 |u|^{p-1} u.
  GridSpec g = line_grid(16, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.lambda0 = {{cplx{0.4, 0.0}, 3.0}};
  const FieldProblem pr = build_problem(PresetKind::heat, o);
  REQUIRE(pr.order == ProblemOrder::first);
  CHECK(std::abs(pr.phase_ratio() - iu) < 1e-14);

  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {2, 0, 0};
  prof.amplitude = cplx{0.7, 0.0};
  FieldState st;
  st.phi = sample_profile(g, prof);
  const FieldData du = rhs_first_order(pr, st);

  const double k = 2.0;
  const double diff = pr.consts.hbar / (2.0 * pr.consts.m);
  double worst = 0.0;
  for (size_t i = 0; i < du.size(); ++i) {
    const cplx expect =
        -diff * (k * k + 0.4 * std::pow(std::abs(st.phi[i]), 2.0)) * st.phi[i];
    worst = std::max(worst, std::abs(du[i] - expect));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("oscillatory first-order preset reduces to the free dispersive flow") {
  GridSpec g = line_grid(16, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.sign = -1;
  const FieldProblem pr = build_problem(PresetKind::schrodinger, o);
  CHECK(std::abs(pr.phase_ratio() - cplx{1.0, 0.0}) < 1e-14);

  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {3, 0, 0};
  FieldState st;
  st.phi = sample_profile(g, prof);
  const FieldData du = rhs_first_order(pr, st);

  const double k = 3.0;
  const cplx expect_coef = double(pr.sign) * iu * pr.consts.hbar / (2.0 * pr.consts.m) * (-k * k);
  double worst = 0.0;
  for (size_t i = 0; i < du.size(); ++i)
    worst = std::max(worst, std::abs(du[i] - expect_coef * st.phi[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("gain/saturation preset maps onto the unified first-order flow") {
  // du/dt = gamma Lap u + lam1 u - lam2 |u|^2 u with
  // gamma = s i hbar e^{-2i w1} / (2m).
  GridSpec g = line_grid(16, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.cgl_lambda1 = cplx{0.3, 0.0};
  o.cgl_lambda2 = cplx{0.7, 0.2};
  const FieldProblem pr = build_problem(PresetKind::cgl, o);

  SECTION("constant field isolates the reaction terms") {
    FieldState st;
    st.phi.assign(g.size(), cplx{0.8, -0.1});
    const FieldData du = rhs_first_order(pr, st);
    const cplx u = st.phi[0];
    const cplx expect = o.cgl_lambda1 * u - o.cgl_lambda2 * std::norm(u) * u;
    for (size_t i = 0; i < du.size(); ++i) REQUIRE(std::abs(du[i] - expect) < 1e-13);
  }

  SECTION("single mode exposes the diffusion coefficient") {
    InitialProfile prof;
    prof.kind = ProfileKind::plane_wave;
    prof.mode = {4, 0, 0};
    FieldState st;
    st.phi = sample_profile(g, prof);
    const FieldData du = rhs_first_order(pr, st);
    const cplx gamma = double(pr.sign) * iu * pr.consts.hbar *
                       unit_phase(-2.0 * pr.frame.omega1) / (2.0 * pr.consts.m);
    const double k = 4.0;
    double worst = 0.0;
    for (size_t i = 0; i < du.size(); ++i) {
      const cplx expect =
          (gamma * (-k * k) + o.cgl_lambda1 - o.cgl_lambda2 * std::norm(st.phi[i])) * st.phi[i];
      worst = std::max(worst, std::abs(du[i] - expect));
    }
    CHECK(worst < 1e-12);
    CHECK(std::abs(gamma - cplx{pr.consts.hbar / (2.0 * pr.consts.m), 0.0}) < 1e-14);
  }
}

TEST_CASE("second-order integrator shows fourth-order convergence on a plane wave") {
  GridSpec g = line_grid(16, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.consts.m = 0.0;  // pure wave: rate = c |k|
  const FieldProblem pr = build_problem(PresetKind::kg, o);

  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {3, 0, 0};
  FieldState st0;
  st0.phi = sample_profile(g, prof);
  st0.pi = plane_branch_pi(pr, prof.mode, st0.phi);
  const double om = dispersion_rate(pr, prof.mode);
  CHECK(std::abs(om - 3.0) < 1e-13);

  const double T = 1.0;
  std::vector<double> errs;
  for (double dt : {4e-2, 2e-2, 1e-2}) {
    EvolveOptions eo;
    eo.dt = dt;
    eo.t_end = T;
    eo.observe_stride = 0;
    const FieldState fin = evolve(pr, st0, eo);
    FieldData exact = st0.phi;
    for (cplx& v : exact) v *= unit_phase(-om * T);
    errs.push_back(rel_l2_distance(g, fin.phi, exact));
  }
  REQUIRE(errs.size() == 3);
  CHECK(errs[0] > 1e-9);  // sits above roundoff so the ratios mean something
  CHECK(errs[0] / errs[1] > 14.0);
  CHECK(errs[1] / errs[2] > 14.0);
}

TEST_CASE("integrating factor reproduces single-mode decay to roundoff") {
  GridSpec g = line_grid(32, 2.0 * pi);

  SECTION("free diffusion") {
    const FieldProblem pr = build_problem(PresetKind::heat, base_options(g));
    InitialProfile prof;
    prof.kind = ProfileKind::plane_wave;
    prof.mode = {3, 0, 0};
    prof.amplitude = cplx{1.3, 0.4};
    FieldState st;
    st.phi = sample_profile(g, prof);

    EvolveOptions eo;
    eo.dt = 0.05;
    eo.t_end = 1.0;
    const FieldState fin = evolve(pr, st, eo);
    const double rate = pr.consts.hbar * 9.0 / (2.0 * pr.consts.m);
    FieldData exact = st.phi;
    for (cplx& v : exact) v *= std::exp(-rate * 1.0);
    CHECK(rel_l2_distance(g, fin.phi, exact) < 1e-12);
  }

  SECTION("a linear reaction term is folded into the exact propagator") {
    ProblemOptions o = base_options(g);
    o.lambda0 = {{cplx{0.4, 0.0}, 1.0}};
    const FieldProblem pr = build_problem(PresetKind::heat, o);
    InitialProfile prof;
    prof.kind = ProfileKind::plane_wave;
    prof.mode = {2, 0, 0};
    FieldState st;
    st.phi = sample_profile(g, prof);

    EvolveOptions eo;
    eo.dt = 0.05;
    eo.t_end = 1.0;
    const FieldState fin = evolve(pr, st, eo);
    const double rate = pr.consts.hbar / (2.0 * pr.consts.m) * (4.0 + 0.4);
    FieldData exact = st.phi;
    for (cplx& v : exact) v *= std::exp(-rate * 1.0);
    CHECK(rel_l2_distance(g, fin.phi, exact) < 1e-12);
  }
}

TEST_CASE("dispersive cubic run keeps the quadratic invariant to budget") {
  GridSpec g = line_grid(32, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.lambda0 = {{cplx{1.0, 0.0}, 3.0}};
  const FieldProblem pr = build_problem(PresetKind::schrodinger, o);

  InitialProfile prof;
  prof.kind = ProfileKind::mixed_modes;
  prof.kmax = 2;
  prof.amplitude = cplx{0.1, 0.0};
  prof.seed = 7;
  FieldState st;
  st.phi = sample_profile(g, prof);
  const double q0 = norm_sq(g, st.phi);
  REQUIRE(q0 > 0.0);

  EvolveOptions eo;
  eo.dt = 1e-2;
  eo.t_end = 0.5;
  const FieldState fin = evolve(pr, st, eo);
  const double q1 = norm_sq(g, fin.phi);
  CHECK(std::abs(q1 - q0) / q0 < 1e-8);
}

TEST_CASE("growth guard trips on sustained gain unless explicitly allowed") {
  GridSpec g = line_grid(8, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.cgl_lambda1 = cplx{30.0, 0.0};
  FieldProblem pr = build_problem(PresetKind::cgl, o);

  InitialProfile prof;
  prof.kind = ProfileKind::zero;
  FieldState st;
  st.phi.assign(g.size(), cplx{1.0, 0.0});

  EvolveOptions eo;
  eo.dt = 0.05;
  eo.t_end = 1.0;
  CHECK_THROWS_AS(evolve(pr, st, eo), std::runtime_error);

  pr.allow_growth = true;
  const FieldState fin = evolve(pr, st, eo);
  CHECK(max_abs(fin.phi) > 1e6);  // e^{30} would overflow the guard, not the double
}

TEST_CASE("static preset refuses to evolve but static residuals work") {
  GridSpec g = line_grid(16, 2.0 * pi);
  const FieldProblem pr = build_problem(PresetKind::elliptic, base_options(g));
  REQUIRE_FALSE(pr.evolvable);
  CHECK(std::abs(pr.phase_ratio() + 1.0) < 1e-14);

  FieldState st;
  st.phi.assign(g.size(), cplx{1.0, 0.0});
  st.pi.assign(g.size(), cplx{0.0, 0.0});
  EvolveOptions eo;
  CHECK_THROWS_AS(evolve(pr, st, eo), std::invalid_argument);

  // exp(i k x) exp(s t) solves the sign-flipped static operator when
  // s^2 = c^2 k^2 - (m c^2 / hbar)^2.
  const double k = 2.0;
  const double s = std::sqrt(k * k - 1.0);
  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {2, 0, 0};
  const FieldData base = sample_profile(g, prof);
  ManufacturedField field = [&](double t) {
    ManufacturedSample smp;
    const double amp = std::exp(s * t);
    smp.phi = smp.dphi = smp.ddphi = smp.lap = base;
    for (auto& v : smp.phi) v *= amp;
    for (auto& v : smp.dphi) v *= s * amp;
    for (auto& v : smp.ddphi) v *= s * s * amp;
    for (auto& v : smp.lap) v *= -k * k * amp;
    return smp;
  };
  const ManufacturedReport rep = manufactured_residual(pr, field, {0.0, 0.3, 0.7});
  CHECK(rep.max_analytic_residual < 1e-10);
  CHECK(rep.max_operator_gap < 1e-10);
}

TEST_CASE("manufactured nonlinear plane wave satisfies the oscillatory operator") {
  // With a cubic term the constant-modulus wave shifts the rate:
  // om^2 = (mc^2/hbar)^2 + c^2 k^2 - c^2 lambda |A|^2, lambda = -lam0.
  GridSpec g = line_grid(32, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.lambda0 = {{cplx{1.0, 0.0}, 3.0}};
  const FieldProblem pr = build_problem(PresetKind::kg, o);

  const double k = 2.0, amp = 0.5;
  const double om = std::sqrt(1.0 + k * k + amp * amp);
  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {2, 0, 0};
  prof.amplitude = cplx{amp, 0.0};
  const FieldData base = sample_profile(g, prof);
  ManufacturedField field = [&](double t) {
    ManufacturedSample smp;
    const cplx rot = unit_phase(-om * t);
    smp.phi = smp.dphi = smp.ddphi = smp.lap = base;
    for (auto& v : smp.phi) v *= rot;
    for (auto& v : smp.dphi) v *= -iu * om * rot;
    for (auto& v : smp.ddphi) v *= -om * om * rot;
    for (auto& v : smp.lap) v *= -k * k * rot;
    return smp;
  };
  const ManufacturedReport rep = manufactured_residual(pr, field, {0.0, 0.2, 0.9});
  CHECK(rep.max_analytic_residual < 1e-12 * (om * om));
  CHECK(rep.max_operator_gap < 1e-12 * (k * k));
}

TEST_CASE("finite-time scale blow-up aborts an evolution") {
  GridSpec g = line_grid(8, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.scale_set = true;
  o.scale.kind = ScaleKind::power_law;
  o.scale.sigma = -2.0;  // expanding phantom branch rips in finite time
  o.scale.a0 = 1.0;
  o.scale.da0 = 2.0;
  FieldProblem pr = build_problem(PresetKind::kg, o);
  pr.allow_growth = true;

  InitialProfile prof;
  prof.kind = ProfileKind::plane_wave;
  prof.mode = {1, 0, 0};
  FieldState st;
  st.phi = sample_profile(g, prof);
  st.pi.assign(g.size(), cplx{0.0, 0.0});

  EvolveOptions eo;
  eo.dt = 0.1;
  eo.t_end = 4.0;
  CHECK_THROWS(evolve(pr, st, eo));
}

TEST_CASE("phase drift of the scale factor violates the constant-angle hypothesis") {
  GridSpec g = line_grid(8, 2.0 * pi);
  ProblemOptions o = base_options(g);
  o.order = ProblemOrder::second;
  o.omega0 = 0.5 * pi;  // imaginary-time ray turns a real power law complex
  o.scale_set = true;
  o.scale.kind = ScaleKind::power_law;
  o.scale.sigma = 1.0 / 3.0;
  o.scale.a0 = 1.0;
  o.scale.da0 = 0.5;
  FieldProblem pr = build_problem(PresetKind::custom, o);
  pr.allow_growth = true;

  FieldState st;
  st.phi.assign(g.size(), cplx{1.0, 0.0});
  st.pi.assign(g.size(), cplx{0.0, 0.0});
  EvolveOptions eo;
  eo.dt = 0.1;
  eo.t_end = 1.0;
  CHECK_THROWS_AS(evolve(pr, st, eo), std::domain_error);
}

TEST_CASE("evolution rejects malformed stepping requests") {
  GridSpec g = line_grid(8, 2.0 * pi);
  const FieldProblem pr = build_problem(PresetKind::schrodinger, base_options(g));
  FieldState st;
  st.phi.assign(g.size(), cplx{1.0, 0.0});

  EvolveOptions eo;
  eo.dt = 0.3;
  eo.t_end = 1.0;  // not an integer number of steps
  CHECK_THROWS_AS(evolve(pr, st, eo), std::invalid_argument);

  eo.dt = -0.1;
  CHECK_THROWS_AS(evolve(pr, st, eo), std::invalid_argument);

  eo.dt = 0.1;
  st.pi.assign(g.size(), cplx{0.0, 0.0});  // first-order state must not carry pi
  CHECK_THROWS_AS(evolve(pr, st, eo), std::invalid_argument);
}

TEST_CASE("profiles are deterministic and dimension-aware") {
  GridSpec g;
  g.n_dim = 2;
  g.points = {8, 8, 1};
  g.extent = {2.0 * pi, 2.0 * pi, 2.0 * pi};

  InitialProfile prof;
  prof.kind = ProfileKind::mixed_modes;
  prof.kmax = 2;
  prof.seed = 42;
  const FieldData a = sample_profile(g, prof);
  const FieldData b = sample_profile(g, prof);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);

  prof.seed = 43;
  const FieldData c = sample_profile(g, prof);
  CHECK(rel_l2_distance(g, a, c) > 1e-3);

  InitialProfile gs;
  gs.kind = ProfileKind::gaussian;
  gs.width = 0.7;
  const FieldData gsf = sample_profile(g, gs);
  // peak sits at the box centre by default
  size_t peak = 0;
  for (size_t i = 0; i < gsf.size(); ++i)
    if (std::abs(gsf[i]) > std::abs(gsf[peak])) peak = i;
  const size_t mid = size_t(4) * 8 + 4;
  CHECK(peak == mid);
}
