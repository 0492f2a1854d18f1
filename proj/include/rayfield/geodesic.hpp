#pragma once
// Point-particle dynamics on the rotated-axis cosmological metric
// g_jk = a(z^0)^2 delta_jk, in two complementary forms.
//
// Local-time (momentum) form: with K = m^2 c^2 + g_jk p^j p^k and
// H = c K^{1/2} + U, the equations of motion are
//   dz^j/dz^0 = c p^j / K^{1/2},
//   g_jk dp^k/dz^0 = -d_j U - (d g_jk / dz^0) p^k      (homogeneous metric),
// and H obeys the corrected conservation law
//   H(z^0) + int_0^{z^0} H_R dw = H(0),
//   H_R = -dU/dz^0 + (c / 2 K^{1/2}) p^j (d_0 g_jk) p^k.
// Real spatial parameters x^j run along the omega1 rays (z^j = e^{i w1} x^j)
// and real local time x^0 along the omega0 ray; the four slice angles
// w1 in {0, pi/2, pi, -pi/2} keep the trajectory on the real slice, where
// J = m^2 c^2 / K = 1 - e^{2i(w1-w0)} (a^2/c^2) sum (dx^j/dx^0)^2 stays
// real and J > 0 is the subluminal condition.  The angles are stored raw
// (the table needs pi and -pi/2, outside the field-equation frame domain).
//
// Proper-time form: d^2 z/dtau^2 + Gamma v v = 0 with numerically
// differentiated Christoffel symbols; along solutions the normalization
// J = -g_ab v^a v^b holds at c^2, which is the audited conservation.

#include <functional>

#include "rayfield/scale.hpp"
#include "rayfield/tensor.hpp"

namespace rayfield {

struct GeodesicScenario {
  ScaleModel scale;  // g_jk = a(z0)^2 delta_jk (unit q, flat k)
  double omega0 = 0.0;
  double omega1 = 0.0;  // raw ray angles; the sign table uses {0, pi/2, pi, -pi/2}
  double m = 1.0;
  double c = 1.0;
  int n_dim = 3;
  // potential U(x0, x) with analytic derivatives; unset means U == 0
  std::function<double(double, const std::vector<double>&)> potential;
  std::function<double(double, const std::vector<double>&)> potential_dt;
  std::function<std::vector<double>(double, const std::vector<double>&)> potential_grad;
  bool real_slice = true;  // assert real J, K, H, H_R along the run

  void validate() const {
    scale.validate();
    require(m >= 0.0, "GeodesicScenario: mass must be nonnegative");
    require(c > 0.0, "GeodesicScenario: c must be positive");
    require(n_dim >= 1, "GeodesicScenario: n_dim must be at least 1");
    require(scale.n_dim == n_dim, "GeodesicScenario: scale dimension mismatch");
    const bool has_u = static_cast<bool>(potential);
    require(has_u == static_cast<bool>(potential_dt) &&
                has_u == static_cast<bool>(potential_grad),
            "GeodesicScenario: potential needs both analytic derivatives");
  }

  double u_at(double t, const std::vector<double>& x) const {
    return potential ? potential(t, x) : 0.0;
  }
  double u_dt(double t, const std::vector<double>& x) const {
    return potential_dt ? potential_dt(t, x) : 0.0;
  }
  std::vector<double> u_grad(double t, const std::vector<double>& x) const {
    return potential_grad ? potential_grad(t, x) : std::vector<double>(x.size(), 0.0);
  }
};

struct GeodesicState {
  double t = 0.0;              // local time x^0
  std::vector<double> x;       // spatial parameters along the omega1 rays
  std::vector<cplx> p_up;      // contravariant momentum p^j
  cplx sqrt_k{0.0, 0.0};       // tracked principal branch of K^{1/2}
  cplx H{0.0, 0.0};            // current Hamiltonian
  cplx hr_accum{0.0, 0.0};     // accumulated int e^{i w0} H_R dx^0
};

namespace detail {

struct MetricSample {
  cplx a, da_dz0;
};

inline MetricSample geodesic_metric(const GeodesicScenario& scn, double t) {
  const ScaleSample s = scale_eval(scn.scale, unit_phase(scn.omega0) * t);
  require(s.a != cplx{0.0, 0.0}, "geodesic: scale factor vanished");
  return {s.a, s.da};
}

inline cplx bilinear_p2(const std::vector<cplx>& p) {
  cplx s{0.0, 0.0};
  for (const cplx& v : p) s += v * v;
  return s;
}

inline cplx k_of(const GeodesicScenario& scn, const MetricSample& ms,
                 const std::vector<cplx>& p) {
  return scn.m * scn.m * scn.c * scn.c + ms.a * ms.a * bilinear_p2(p);
}

inline void check_real_slice(const GeodesicScenario& scn, cplx v, const char* what,
                             double tol = 1e-10) {
  if (!scn.real_slice) return;
  if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v)))
    throw std::domain_error(std::string("geodesic: ") + what +
                            " left the real slice (check the ray angles)");
}

inline void check_subluminal(const GeodesicScenario& scn, cplx K) {
  const cplx J = scn.m * scn.m * scn.c * scn.c / K;
  check_real_slice(scn, J, "J", 1e-8);
  if (scn.real_slice && J.real() <= 0.0)
    throw std::runtime_error("geodesic: superluminal breakdown (J <= 0)");
}

}  // namespace detail

// K^{1/2} on the principal branch; the branch cut is an error
inline cplx sqrt_k_principal(cplx K) {
  require(K != cplx{0.0, 0.0}, "geodesic: K vanished");
  return pow_principal(K, 0.5);
}

inline cplx hamiltonian_eval(const GeodesicState& st, const GeodesicScenario& scn) {
  const detail::MetricSample ms = detail::geodesic_metric(scn, st.t);
  const cplx K = detail::k_of(scn, ms, st.p_up);
  return scn.c * sqrt_k_principal(K) + scn.u_at(st.t, st.x);
}

// the metric-exchange part of H_R (the term the sign table constrains),
// already multiplied by e^{i w0} so it is the x^0-parametrized source
inline cplx hr_kinetic(const GeodesicState& st, const GeodesicScenario& scn) {
  const detail::MetricSample ms = detail::geodesic_metric(scn, st.t);
  const cplx K = detail::k_of(scn, ms, st.p_up);
  const cplx d_g = 2.0 * ms.a * ms.da_dz0;  // d(a^2)/dz^0
  return unit_phase(scn.omega0) * (scn.c / (2.0 * sqrt_k_principal(K))) * d_g *
         detail::bilinear_p2(st.p_up);
}

// e^{i w0} H_R: the source in  dH/dx^0 + e^{i w0} H_R = 0
inline cplx hr_eval(const GeodesicState& st, const GeodesicScenario& scn) {
  // e^{i w0} * (-dU/dz^0) = -dU/dx^0 for U given in the real parameters
  return hr_kinetic(st, scn) - scn.u_dt(st.t, st.x);
}

// initial momentum from a real ray-velocity dx^j/dx^0
inline GeodesicState make_geodesic_state(const GeodesicScenario& scn, double t0,
                                         std::vector<double> x0,
                                         const std::vector<double>& velocity) {
  scn.validate();
  require(static_cast<int>(x0.size()) == scn.n_dim && velocity.size() == x0.size(),
          "make_geodesic_state: dimension mismatch");
  require(scn.m > 0.0, "make_geodesic_state: massive particles only (no null rays)");

  const detail::MetricSample ms = detail::geodesic_metric(scn, t0);
  const cplx ray = unit_phase(scn.omega1 - scn.omega0);
  double v2 = 0.0;
  for (double v : velocity) v2 += v * v;
  const cplx J =
      1.0 - ray * ray * (ms.a * ms.a / (scn.c * scn.c)) * v2;
  detail::check_real_slice(scn, J, "J", 1e-12);
  if (scn.real_slice && J.real() <= 0.0)
    throw std::domain_error("make_geodesic_state: superluminal velocity (J <= 0)");
  const cplx root_j = pow_principal(J, 0.5);

  GeodesicState st;
  st.t = t0;
  st.x = std::move(x0);
  st.p_up.resize(velocity.size());
  for (size_t j = 0; j < velocity.size(); ++j)
    st.p_up[j] = scn.m * ray * velocity[j] / root_j;
  st.sqrt_k = sqrt_k_principal(detail::k_of(scn, ms, st.p_up));
  st.H = hamiltonian_eval(st, scn);
  detail::check_real_slice(scn, st.H, "H");
  return st;
}

// one fourth-order step in the real local time x^0, with trapezoid
// accumulation of the conservation source
inline GeodesicState geodesic_step(const GeodesicState& st, const GeodesicScenario& scn,
                                   double dt) {
  scn.validate();
  require(dt > 0.0, "geodesic_step: dt must be positive");
  const int n = scn.n_dim;
  require(static_cast<int>(st.x.size()) == n && static_cast<int>(st.p_up.size()) == n,
          "geodesic_step: state dimension mismatch");

  const cplx to_x = unit_phase(scn.omega0 - scn.omega1);  // dz^j/dz^0 -> dx^j/dx^0
  const cplx to_t = unit_phase(scn.omega0);               // d/dz^0 -> d/dx^0 factor
  const cplx grad_ray = unit_phase(-scn.omega1);          // d/dz^j of U(x)

  auto derivs = [&](double t, const std::vector<double>& x, const std::vector<cplx>& p,
                    std::vector<double>& dx, std::vector<cplx>& dp) {
    const detail::MetricSample ms = detail::geodesic_metric(scn, t);
    const cplx K = detail::k_of(scn, ms, p);
    detail::check_subluminal(scn, K);
    const cplx root_k = sqrt_k_principal(K);
    const std::vector<double> gu = scn.u_grad(t, x);
    const cplx inv_a2 = 1.0 / (ms.a * ms.a);
    const cplx log_rate = ms.da_dz0 / ms.a;
    dx.resize(n);
    dp.resize(n);
    for (int j = 0; j < n; ++j) {
      const cplx dxj = to_x * scn.c * p[j] / root_k;
      detail::check_real_slice(scn, dxj, "dx/dx0", 1e-9);
      dx[j] = dxj.real();
      dp[j] = to_t * (-grad_ray * gu[j] * inv_a2 - 2.0 * log_rate * p[j]);
    }
  };

  // classical RK4 over (x, p)
  std::vector<double> kx[4];
  std::vector<cplx> kp[4];
  const double offs[4] = {0.0, 0.5, 0.5, 1.0};
  std::vector<double> x_stage = st.x;
  std::vector<cplx> p_stage = st.p_up;
  for (int s = 0; s < 4; ++s) {
    if (s > 0) {
      for (int j = 0; j < n; ++j) {
        x_stage[j] = st.x[j] + offs[s] * dt * kx[s - 1][j];
        p_stage[j] = st.p_up[j] + offs[s] * dt * kp[s - 1][j];
      }
    }
    derivs(st.t + offs[s] * dt, x_stage, p_stage, kx[s], kp[s]);
  }

  GeodesicState out;
  out.t = st.t + dt;
  out.x.resize(n);
  out.p_up.resize(n);
  for (int j = 0; j < n; ++j) {
    out.x[j] = st.x[j] + dt / 6.0 * (kx[0][j] + 2.0 * kx[1][j] + 2.0 * kx[2][j] + kx[3][j]);
    out.p_up[j] =
        st.p_up[j] + dt / 6.0 * (kp[0][j] + 2.0 * kp[1][j] + 2.0 * kp[2][j] + kp[3][j]);
  }

  // branch continuity of K^{1/2}
  const detail::MetricSample ms = detail::geodesic_metric(scn, out.t);
  out.sqrt_k = sqrt_k_principal(detail::k_of(scn, ms, out.p_up));
  if (std::real(std::conj(st.sqrt_k) * out.sqrt_k) < 0.0)
    throw std::runtime_error("geodesic_step: K^{1/2} jumped sheets");

  out.H = hamiltonian_eval(out, scn);
  detail::check_real_slice(scn, out.H, "H");
  const cplx hr_old = hr_eval(st, scn);
  const cplx hr_new = hr_eval(out, scn);
  detail::check_real_slice(scn, hr_new, "H_R");
  out.hr_accum = st.hr_accum + 0.5 * dt * (hr_old + hr_new);
  return out;
}

struct GeodesicRun {
  std::vector<GeodesicState> trajectory;  // recorded states, start included
};

inline GeodesicRun run_geodesic(const GeodesicScenario& scn, GeodesicState st, double dt,
                                long steps, long record_stride = 1) {
  require(steps >= 1, "run_geodesic: need at least one step");
  require(record_stride >= 1, "run_geodesic: record stride must be positive");
  GeodesicRun run;
  run.trajectory.push_back(st);
  for (long k = 0; k < steps; ++k) {
    st = geodesic_step(st, scn, dt);
    if ((k + 1) % record_stride == 0 || k + 1 == steps) run.trajectory.push_back(st);
  }
  return run;
}

// max_t |H(t) + hr_accum(t) - H(0)| / |H(0)|
inline double conservation_audit(const GeodesicRun& run) {
  require(run.trajectory.size() >= 2, "conservation_audit: need a trajectory");
  const cplx h0 = run.trajectory.front().H;
  require(h0 != cplx{0.0, 0.0}, "conservation_audit: H(0) vanished");
  double worst = 0.0;
  for (const GeodesicState& st : run.trajectory)
    worst = std::max(worst, std::abs(st.H + st.hr_accum - h0) / std::abs(h0));
  return worst;
}

// ---------------------------------------------------------------------------
// proper-time form

// diag(-c^2, a^2, ..., a^2) on n+1 coordinates with z^0 the first
inline MetricDescription frw_metric(int n_dim, double c, ScaleModel scale) {
  require(scale.n_dim == n_dim, "frw_metric: scale dimension mismatch");
  MetricDescription md;
  md.n_dim = n_dim;
  md.frame.n_dim = n_dim;
  md.diag = [n_dim, c, scale](const std::vector<cplx>& z) {
    const ScaleSample s = scale_eval(scale, z[0]);
    std::vector<cplx> g(n_dim + 1, s.a * s.a);
    g[0] = cplx{-c * c, 0.0};
    return g;
  };
  return md;
}

struct ProperTimeOptions {
  MetricDescription metric;
  std::vector<cplx> z0;  // initial event, dim n+1
  std::vector<cplx> v0;  // initial dz/dtau, must satisfy g v v = -c^2
  double c = 1.0;
  double tau_end = 1.0;
  double dt = 1e-3;
  double stencil_step = 1e-2;  // Christoffel stencil (fourth order)
  double norm_guard = 1e-4;    // abort when |J - c^2|/c^2 exceeds this
  long record_stride = 1;
};

struct ProperTimeSample {
  double tau = 0.0;
  std::vector<cplx> z, v;
  double norm_residual = 0.0;  // |(-v g v) - c^2| / c^2
};

struct ProperTimeRun {
  std::vector<ProperTimeSample> trajectory;
  double max_norm_drift = 0.0;
};

namespace detail {

inline double norm_residual_of(const MetricDescription& metric, const std::vector<cplx>& z,
                               const std::vector<cplx>& v, double c) {
  const std::vector<cplx> g = metric.diag(z);
  cplx q{0.0, 0.0};
  for (size_t a = 0; a < g.size(); ++a) q += g[a] * v[a] * v[a];
  return std::abs(-q - cplx{c * c, 0.0}) / (c * c);
}

}  // namespace detail

inline ProperTimeRun proper_time_geodesic(const ProperTimeOptions& opt) {
  opt.metric.validate();
  const int D = opt.metric.dim();
  require(static_cast<int>(opt.z0.size()) == D && static_cast<int>(opt.v0.size()) == D,
          "proper_time_geodesic: initial data has wrong dimension");
  require(opt.c > 0.0 && opt.dt > 0.0 && opt.tau_end > 0.0,
          "proper_time_geodesic: need positive c, dt, tau_end");
  const double init_resid = detail::norm_residual_of(opt.metric, opt.z0, opt.v0, opt.c);
  require(init_resid < 1e-8,
          "proper_time_geodesic: initial velocity is not normalized to g v v = -c^2");

  const double steps_f = opt.tau_end / opt.dt;
  const long steps = std::lround(steps_f);
  require(steps >= 1 && std::abs(steps_f - double(steps)) < 1e-9,
          "proper_time_geodesic: tau_end must be an integer number of steps");

  auto accel = [&](const std::vector<cplx>& z, const std::vector<cplx>& v) {
    const std::vector<cplx> gamma =
        christoffel(opt.metric, z, opt.stencil_step, StencilOrder::fourth);
    std::vector<cplx> a(D, cplx{0.0, 0.0});
    for (int d = 0; d < D; ++d) {
      cplx s{0.0, 0.0};
      for (int al = 0; al < D; ++al)
        for (int be = 0; be < D; ++be) s += gamma[detail::t3(D, d, al, be)] * v[al] * v[be];
      a[d] = -s;
    }
    return a;
  };

  ProperTimeRun run;
  std::vector<cplx> z = opt.z0, v = opt.v0;
  auto record = [&](double tau) {
    ProperTimeSample smp;
    smp.tau = tau;
    smp.z = z;
    smp.v = v;
    smp.norm_residual = detail::norm_residual_of(opt.metric, z, v, opt.c);
    run.max_norm_drift = std::max(run.max_norm_drift, smp.norm_residual);
    if (smp.norm_residual > opt.norm_guard)
      throw std::runtime_error("proper_time_geodesic: normalization drifted beyond the guard");
    run.trajectory.push_back(std::move(smp));
  };
  record(0.0);

  std::vector<cplx> kz[4], kv[4], zs(D), vs(D);
  const double offs[4] = {0.0, 0.5, 0.5, 1.0};
  for (long step = 0; step < steps; ++step) {
    for (int s = 0; s < 4; ++s) {
      if (s == 0) {
        zs = z;
        vs = v;
      } else {
        for (int d = 0; d < D; ++d) {
          zs[d] = z[d] + offs[s] * opt.dt * kz[s - 1][d];
          vs[d] = v[d] + offs[s] * opt.dt * kv[s - 1][d];
        }
      }
      kz[s] = vs;
      kv[s] = accel(zs, vs);
    }
    for (int d = 0; d < D; ++d) {
      z[d] += opt.dt / 6.0 * (kz[0][d] + 2.0 * kz[1][d] + 2.0 * kz[2][d] + kz[3][d]);
      v[d] += opt.dt / 6.0 * (kv[0][d] + 2.0 * kv[1][d] + 2.0 * kv[2][d] + kv[3][d]);
    }
    if ((step + 1) % opt.record_stride == 0 || step + 1 == steps)
      record(double(step + 1) * opt.dt);
  }
  return run;
}

}  // namespace rayfield
