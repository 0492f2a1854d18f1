#pragma once
// Unified semilinear field problems on rotated axes.  With the phase
// ratio A = e^{2i(theta + w1) - 2i w0} and mu = m c^2 e^{i w0} / hbar,
// the second-order flow is
//
//   d2phi/dt2 = -n (a'/a) dphi/dt - mu^2 phi
//               + (c^2 / A) [ |a|^{-2} Lap phi
//                             + e^{2i(theta+w1)} sum_j lambda_j |phi|^{p_j-1} phi ],
//
// and the first-order (envelope) flow, with C0 = 2 m e^{i w0} / hbar and
// envelope weight w(t), is
//
//   du/dt = s i / (C0 A) [ |a|^{-2} Lap u
//                          + e^{2i(theta+w1)} sum_j lambda_j |u w|^{p_j-1} u ].
//
// Angle presets: (w0, w1) = (0, 0) is the oscillatory pair (second order /
// envelope), w1 = pi/2 the sign-flipped static operator (never evolved),
// w1 = pi/4 the diffusive pair.  Time stepping is classical fourth-order
// Runge-Kutta; diffusive first-order problems (Im A != 0) instead use a
// Lawson integrating-factor scheme whose linear propagator is exact in
// Fourier space, which requires a constant scale factor.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "rayfield/cosmology.hpp"
#include "rayfield/frame.hpp"
#include "rayfield/grid.hpp"
#include "rayfield/potential.hpp"

namespace rayfield {

enum class ProblemOrder { second, first };
enum class PresetKind { kg, schrodinger, elliptic, heat, de_sitter_kg, cgl, custom };

struct ScaleAlongRay {
  cplx a, da_dt, dda_dt2;  // a_*(t) = a(e^{i w0} t) and real-t derivatives
};

struct WeightAlongRay {
  cplx w, dw_dt, b, db_dt;
};

struct FieldProblem {
  ProblemOrder order = ProblemOrder::second;
  PresetKind preset = PresetKind::custom;
  RotationFrame frame;
  double theta = 0.0;  // arg a_*(t); must stay constant along a run
  int sign = +1;
  ScaleModel scale;
  WeightModel weight;
  NonlinearPotential potential;
  PhysicalConstants consts;
  GridSpec grid;
  bool evolvable = true;
  double growth_guard = 1e6;
  bool allow_growth = false;

  cplx phase_ratio() const { return unit_phase(2.0 * (theta + frame.omega1 - frame.omega0)); }
  cplx c0() const { return 2.0 * consts.m * unit_phase(frame.omega0) / consts.hbar; }
  cplx mass_rate() const { return consts.m * consts.c * consts.c * unit_phase(frame.omega0) / consts.hbar; }

  ScaleAlongRay scale_at(double t) const {
    const cplx ph = unit_phase(frame.omega0);
    const ScaleSample s = scale_eval(scale, ph * t);
    require(s.a != cplx{0.0, 0.0}, "FieldProblem: scale factor vanished");
    return {s.a, ph * s.da, ph * ph * s.dda};
  }

  WeightAlongRay weight_at(double t) const {
    const cplx ph = unit_phase(frame.omega0);
    const WeightSample s = weight_eval(weight, ph * t, consts);
    return {s.w, ph * s.dw, s.b, ph * s.db};
  }

  void validate() const {
    frame.validate();
    consts.validate();
    potential.validate();
    grid.validate();
    scale.validate();
    require(sign == 1 || sign == -1, "FieldProblem: sign must be +/-1");
    require(frame.n_dim == grid.n_dim, "FieldProblem: frame/grid dimension mismatch");
    require(scale.n_dim == frame.n_dim, "FieldProblem: scale/frame dimension mismatch");
    require(growth_guard > 1.0, "FieldProblem: growth_guard must exceed 1");
    if (order == ProblemOrder::first)
      require(weight.scale.n_dim == frame.n_dim, "FieldProblem: weight dimension mismatch");
  }

  // arg a_*(t) must match theta; drifting phase would silently change the
  // coefficients the balance identities assume constant.
  void check_theta(const cplx& a, double tol = 1e-10) const {
    const double drift = std::arg(a * unit_phase(-theta));
    if (std::abs(drift) > tol)
      throw std::domain_error("FieldProblem: arg(a) drifted from the declared theta");
  }
};

struct FieldState {
  double t = 0.0;
  FieldData phi;  // second order: the field; first order: the envelope u
  FieldData pi;   // second order only: dphi/dt
};

// ---------------------------------------------------------------------------
// presets

struct ProblemOptions {
  GridSpec grid;
  PhysicalConstants consts;
  int sign = +1;
  std::vector<std::pair<cplx, double>> lambda0;  // gradient-form (coef, power)
  double H = 0.0;                                // expansion rate presets
  ScaleModel scale;                              // honoured when scale_set
  bool scale_set = false;
  cplx b0{1.0, 0.0};
  cplx cgl_lambda1{0.0, 0.0};  // linear gain
  cplx cgl_lambda2{0.0, 0.0};  // cubic saturation
  double cgl_omega1 = 0.25 * pi;
  // custom preset only:
  ProblemOrder order = ProblemOrder::second;
  double omega0 = 0.0, omega1 = 0.0, theta = 0.0;
};

inline FieldProblem build_problem(PresetKind kind, const ProblemOptions& o) {
  FieldProblem pr;
  pr.preset = kind;
  pr.grid = o.grid;
  pr.consts = o.consts;
  pr.sign = o.sign;
  pr.frame.n_dim = o.grid.n_dim;

  pr.scale.kind = ScaleKind::constant;
  pr.scale.n_dim = o.grid.n_dim;
  if (o.scale_set) {
    pr.scale = o.scale;
    pr.scale.n_dim = o.grid.n_dim;
  }

  switch (kind) {
    case PresetKind::kg:
      pr.order = ProblemOrder::second;
      break;
    case PresetKind::schrodinger:
      pr.order = ProblemOrder::first;
      break;
    case PresetKind::elliptic:
      pr.order = ProblemOrder::second;
      pr.frame.omega1 = 0.5 * pi;
      pr.evolvable = false;  // sign-flipped static operator: not an initial-value flow
      break;
    case PresetKind::heat:
      pr.order = ProblemOrder::first;
      pr.frame.omega1 = 0.25 * pi;
      pr.sign = +1;
      break;
    case PresetKind::de_sitter_kg:
      pr.order = ProblemOrder::second;
      if (!o.scale_set) {
        pr.scale.kind = ScaleKind::de_sitter;
        pr.scale.H = o.H;
      }
      break;
    case PresetKind::cgl:
      pr.order = ProblemOrder::first;
      pr.frame.omega1 = o.cgl_omega1;
      break;
    case PresetKind::custom:
      pr.order = o.order;
      pr.frame.omega0 = o.omega0;
      pr.frame.omega1 = o.omega1;
      pr.theta = o.theta;
      break;
  }

  for (const auto& [lam0, p] : o.lambda0)
    pr.potential.terms.push_back(term_from_gradient(lam0, p, pr.theta, pr.frame.omega1));

  if (kind == PresetKind::cgl) {
    // du/dt - gamma Lap u - lam1 u + lam2 |u|^2 u = 0 maps onto the
    // first-order flow with equation coefficients -s i C0 lam1, +s i C0 lam2.
    const cplx c0 = pr.c0();
    const cplx si = double(pr.sign) * iu;
    if (o.cgl_lambda1 != cplx{0.0, 0.0})
      pr.potential.terms.push_back(PowerTerm{-si * c0 * o.cgl_lambda1, 1.0});
    if (o.cgl_lambda2 != cplx{0.0, 0.0})
      pr.potential.terms.push_back(PowerTerm{si * c0 * o.cgl_lambda2, 3.0});
  }

  pr.weight.scale = pr.scale;
  pr.weight.b0 = o.b0;
  pr.weight.carrier_sign = pr.sign;
  pr.validate();
  return pr;
}

// ---------------------------------------------------------------------------
// initial data

enum class ProfileKind { zero, plane_wave, gaussian, mixed_modes };

struct InitialProfile {
  ProfileKind kind = ProfileKind::gaussian;
  cplx amplitude{1.0, 0.0};
  std::array<int, 3> mode{1, 0, 0};                  // plane_wave
  double width = 1.0;                                // gaussian
  std::optional<std::array<double, 3>> center;       // gaussian; default box middle
  int kmax = 3;                                      // mixed_modes band limit
  std::uint64_t seed = 1;                            // mixed_modes phases
};

inline FieldData sample_profile(const GridSpec& g, const InitialProfile& prof) {
  g.validate();
  FieldData f(g.size(), cplx{0.0, 0.0});
  switch (prof.kind) {
    case ProfileKind::zero:
      return f;
    case ProfileKind::plane_wave: {
      size_t idx = 0;
      for (int i0 = 0; i0 < g.points[0]; ++i0)
        for (int i1 = 0; i1 < g.points[1]; ++i1)
          for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
            double ph = 2.0 * pi *
                        (double(prof.mode[0]) * i0 / g.points[0] +
                         double(prof.mode[1]) * i1 / g.points[1] +
                         double(prof.mode[2]) * i2 / g.points[2]);
            f[idx] = prof.amplitude * unit_phase(ph);
          }
      return f;
    }
    case ProfileKind::gaussian: {
      std::array<double, 3> c{0.0, 0.0, 0.0};
      for (int i = 0; i < g.n_dim; ++i) c[i] = prof.center ? (*prof.center)[i] : 0.5 * g.extent[i];
      require(prof.width > 0.0, "sample_profile: gaussian width must be positive");
      size_t idx = 0;
      for (int i0 = 0; i0 < g.points[0]; ++i0)
        for (int i1 = 0; i1 < g.points[1]; ++i1)
          for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
            const int ii[3] = {i0, i1, i2};
            double r2 = 0.0;
            for (int ax = 0; ax < g.n_dim; ++ax) {
              const double d = g.node(ax, ii[ax]) - c[ax];
              r2 += d * d;
            }
            f[idx] = prof.amplitude * std::exp(-0.5 * r2 / (prof.width * prof.width));
          }
      return f;
    }
    case ProfileKind::mixed_modes: {
      require(prof.kmax >= 1, "sample_profile: kmax must be at least 1");
      std::mt19937_64 rng(prof.seed);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
      std::uniform_real_distribution<double> mag(0.5, 1.0);
      const int kb = prof.kmax;
      std::array<int, 3> lo{-kb, 0, 0}, hi{kb, 0, 0};
      for (int ax = 1; ax < g.n_dim; ++ax) {
        lo[ax] = -kb;
        hi[ax] = kb;
      }
      for (int m0 = lo[0]; m0 <= hi[0]; ++m0)
        for (int m1 = lo[1]; m1 <= hi[1]; ++m1)
          for (int m2 = lo[2]; m2 <= hi[2]; ++m2) {
            const double m2sum = double(m0) * m0 + double(m1) * m1 + double(m2) * m2;
            const cplx coef =
                prof.amplitude * mag(rng) * std::exp(-0.5 * m2sum) * unit_phase(phase(rng));
            size_t idx = 0;
            for (int i0 = 0; i0 < g.points[0]; ++i0)
              for (int i1 = 0; i1 < g.points[1]; ++i1)
                for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
                  double ph = 2.0 * pi *
                              (double(m0) * i0 / g.points[0] + double(m1) * i1 / g.points[1] +
                               double(m2) * i2 / g.points[2]);
                  f[idx] += coef * unit_phase(ph);
                }
          }
      return f;
    }
  }
  throw std::logic_error("sample_profile: unknown kind");
}

// Oscillation rate of one resolved mode for a constant-scale problem with
// real unit phase ratio: omega^2 = c^2 |k|^2 / |a|^2 + (m c^2 / hbar)^2.
inline double dispersion_rate(const FieldProblem& pr, const std::array<int, 3>& mode) {
  require(std::abs(pr.phase_ratio() - cplx{1.0, 0.0}) < 1e-12,
          "dispersion_rate: needs unit phase ratio");
  require(pr.frame.omega0 == 0.0, "dispersion_rate: needs omega0 = 0");
  const ScaleAlongRay sa = pr.scale_at(0.0);
  require(std::abs(sa.da_dt) < 1e-12, "dispersion_rate: needs a constant scale");
  double k2 = 0.0;
  for (int ax = 0; ax < pr.grid.n_dim; ++ax) {
    const double k = 2.0 * pi * mode[ax] / pr.grid.extent[ax];
    k2 += k * k;
  }
  const double c = pr.consts.c;
  const double mu = pr.consts.m * c * c / pr.consts.hbar;
  return std::sqrt(c * c * k2 / std::norm(sa.a) + mu * mu);
}

// dphi/dt for the single-branch plane wave e^{i(k x - omega t)}.
inline FieldData plane_branch_pi(const FieldProblem& pr, const std::array<int, 3>& mode,
                                 const FieldData& phi) {
  const double om = dispersion_rate(pr, mode);
  FieldData piv(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) piv[i] = -iu * om * phi[i];
  return piv;
}

// ---------------------------------------------------------------------------
// right-hand sides

namespace detail {

inline FieldData nonlinear_term(const FieldProblem& pr, const FieldData& u, double wmag) {
  FieldData out(u.size(), cplx{0.0, 0.0});
  if (pr.potential.empty()) return out;
  const cplx eqphase = unit_phase(2.0 * (pr.theta + pr.frame.omega1));
  for (const auto& term : pr.potential.terms) {
    const cplx coef = eqphase * term.lambda;
    for (size_t i = 0; i < u.size(); ++i)
      out[i] += coef * std::pow(std::abs(u[i]) * wmag, term.p - 1.0) * u[i];
  }
  return out;
}

}  // namespace detail

struct SecondOrderRhs {
  FieldData dphi, dpi;
};

inline SecondOrderRhs rhs_second_order(const FieldProblem& pr, const FieldState& st) {
  require(pr.order == ProblemOrder::second, "rhs_second_order: wrong problem order");
  require(st.phi.size() == pr.grid.size() && st.pi.size() == pr.grid.size(),
          "rhs_second_order: state size mismatch");
  const ScaleAlongRay sa = pr.scale_at(st.t);
  const cplx damp = double(pr.frame.n_dim) * sa.da_dt / sa.a;
  const cplx mu = pr.mass_rate();
  const cplx mu2 = mu * mu;
  const cplx coef = pr.consts.c * pr.consts.c / pr.phase_ratio();
  const double inv_aa = 1.0 / std::norm(sa.a);

  SecondOrderRhs out;
  out.dphi = st.pi;
  out.dpi = laplacian(pr.grid, st.phi);
  const FieldData nl = detail::nonlinear_term(pr, st.phi, 1.0);
  for (size_t i = 0; i < out.dpi.size(); ++i)
    out.dpi[i] = -damp * st.pi[i] - mu2 * st.phi[i] + coef * (inv_aa * out.dpi[i] + nl[i]);
  return out;
}

inline FieldData rhs_first_order(const FieldProblem& pr, const FieldState& st) {
  require(pr.order == ProblemOrder::first, "rhs_first_order: wrong problem order");
  require(st.phi.size() == pr.grid.size(), "rhs_first_order: state size mismatch");
  const ScaleAlongRay sa = pr.scale_at(st.t);
  const cplx pref = double(pr.sign) * iu / (pr.c0() * pr.phase_ratio());
  const double inv_aa = 1.0 / std::norm(sa.a);
  const double wmag = std::abs(pr.weight_at(st.t).w);

  FieldData out = laplacian(pr.grid, st.phi);
  const FieldData nl = detail::nonlinear_term(pr, st.phi, wmag);
  for (size_t i = 0; i < out.size(); ++i) out[i] = pref * (inv_aa * out[i] + nl[i]);
  return out;
}

// ---------------------------------------------------------------------------
// evolution

struct EvolveOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  int observe_stride = 1;  // observer cadence in steps; <= 0 means start/end only
};

using Observer = std::function<void(const FieldState&)>;

namespace detail {

inline void guard_growth(const FieldProblem& pr, const FieldState& st, double base) {
  if (pr.allow_growth) return;
  double cur = max_abs(st.phi);
  if (!st.pi.empty()) cur = std::max(cur, max_abs(st.pi));
  if (cur > pr.growth_guard * base)
    throw std::runtime_error(
        "evolve: growth guard tripped (set allow_growth for antidissipative runs)");
}

// classical RK4 over the flattened state
template <class Rhs>
void rk4_step(FieldState& st, double dt, Rhs&& rhs) {
  const double t0 = st.t;
  const bool second = !st.pi.empty();
  const size_t n = st.phi.size();
  const size_t total = second ? 2 * n : n;

  std::vector<cplx> y0(total), k(total), acc(total);
  auto pack = [&](const FieldState& s, std::vector<cplx>& y) {
    std::copy(s.phi.begin(), s.phi.end(), y.begin());
    if (second) std::copy(s.pi.begin(), s.pi.end(), y.begin() + n);
  };
  auto unpack = [&](const std::vector<cplx>& y, FieldState& s) {
    std::copy(y.begin(), y.begin() + n, s.phi.begin());
    if (second) std::copy(y.begin() + n, y.end(), s.pi.begin());
  };
  pack(st, y0);

  const double weights[4] = {1.0, 2.0, 2.0, 1.0};
  const double offsets[4] = {0.0, 0.5, 0.5, 1.0};
  std::vector<cplx> stage = y0;
  for (int s = 0; s < 4; ++s) {
    if (s > 0)
      for (size_t i = 0; i < total; ++i) stage[i] = y0[i] + offsets[s] * dt * k[i];
    unpack(stage, st);
    st.t = t0 + offsets[s] * dt;
    rhs(st, k);
    for (size_t i = 0; i < total; ++i) acc[i] += weights[s] * k[i];
  }
  for (size_t i = 0; i < total; ++i) y0[i] += dt / 6.0 * acc[i];
  unpack(y0, st);
  st.t = t0 + dt;
}

}  // namespace detail

inline FieldState evolve(const FieldProblem& pr, FieldState st, const EvolveOptions& opt,
                         const Observer& obs = {}) {
  pr.validate();
  require(pr.evolvable, "evolve: this preset is not well-posed as an initial-value flow");
  require(opt.dt > 0.0, "evolve: dt must be positive");
  require(opt.t_end > st.t, "evolve: t_end must exceed the initial time");
  require(st.phi.size() == pr.grid.size(), "evolve: state size mismatch");
  if (pr.order == ProblemOrder::second)
    require(st.pi.size() == pr.grid.size(), "evolve: second-order state needs pi");
  else
    require(st.pi.empty(), "evolve: first-order state must not carry pi");

  const double span = opt.t_end - st.t;
  const double steps_f = span / opt.dt;
  const long steps = std::lround(steps_f);
  require(steps >= 1 && std::abs(steps_f - double(steps)) < 1e-9,
          "evolve: (t_end - t0) must be an integer number of steps");

  double base = std::max(max_abs(st.phi), 1e-30);
  if (!st.pi.empty()) base = std::max(base, max_abs(st.pi));

  const bool diffusive =
      pr.order == ProblemOrder::first && std::abs(pr.phase_ratio().imag()) > 1e-12;

  // Lawson integrating factor: exact linear propagator, so it needs the
  // linear multiplier to be time independent.
  FieldData e_half;
  if (diffusive) {
    const ScaleAlongRay s0 = pr.scale_at(st.t);
    const ScaleAlongRay s1 = pr.scale_at(opt.t_end);
    require(std::abs(s0.da_dt) < 1e-12 * std::abs(s0.a) &&
                std::abs(s1.da_dt) < 1e-12 * std::abs(s1.a),
            "evolve: integrating-factor path requires a constant scale factor");
    const cplx pref = double(pr.sign) * iu / (pr.c0() * pr.phase_ratio());
    const double inv_aa = 1.0 / std::norm(s0.a);
    const cplx eqphase = unit_phase(2.0 * (pr.theta + pr.frame.omega1));
    cplx linear_nl{0.0, 0.0};
    for (const auto& term : pr.potential.terms)
      if (term.p == 1.0) linear_nl += eqphase * term.lambda;

    e_half.resize(pr.grid.size());
    const GridSpec& g = pr.grid;
    size_t idx = 0;
    for (int i0 = 0; i0 < g.points[0]; ++i0)
      for (int i1 = 0; i1 < g.points[1]; ++i1)
        for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
          const double k0 = g.wavenumber(0, i0);
          const double k1 = g.n_dim >= 2 ? g.wavenumber(1, i1) : 0.0;
          const double k2 = g.n_dim >= 3 ? g.wavenumber(2, i2) : 0.0;
          const cplx L = pref * (-(k0 * k0 + k1 * k1 + k2 * k2) * inv_aa + linear_nl);
          e_half[idx] = std::exp(0.5 * opt.dt * L);
        }
  }

  auto apply_e_half = [&](const FieldData& f) {
    FieldData hat = f;
    fft_forward(pr.grid, hat);
    for (size_t i = 0; i < hat.size(); ++i) hat[i] *= e_half[i];
    fft_inverse(pr.grid, hat);
    return hat;
  };
  auto nonlinear_only = [&](const FieldData& u, double t) {
    const cplx pref = double(pr.sign) * iu / (pr.c0() * pr.phase_ratio());
    const double wmag = std::abs(pr.weight_at(t).w);
    FieldData out(u.size(), cplx{0.0, 0.0});
    const cplx eqphase = unit_phase(2.0 * (pr.theta + pr.frame.omega1));
    for (const auto& term : pr.potential.terms) {
      if (term.p == 1.0) continue;  // folded into the exact propagator
      const cplx coef = eqphase * term.lambda;
      for (size_t i = 0; i < u.size(); ++i)
        out[i] += coef * std::pow(std::abs(u[i]) * wmag, term.p - 1.0) * u[i];
    }
    for (cplx& v : out) v *= pref;
    return out;
  };

  if (obs) obs(st);
  for (long step = 0; step < steps; ++step) {
    pr.check_theta(pr.scale_at(st.t).a);

    if (diffusive) {
      const double t = st.t, h = opt.dt;
      const FieldData& u = st.phi;
      const FieldData k1 = nonlinear_only(u, t);
      const FieldData eu = apply_e_half(u);
      const FieldData ek1 = apply_e_half(k1);
      FieldData ub(u.size());
      for (size_t i = 0; i < u.size(); ++i) ub[i] = eu[i] + 0.5 * h * ek1[i];
      const FieldData k2 = nonlinear_only(ub, t + 0.5 * h);
      FieldData uc(u.size());
      for (size_t i = 0; i < u.size(); ++i) uc[i] = eu[i] + 0.5 * h * k2[i];
      const FieldData k3 = nonlinear_only(uc, t + 0.5 * h);
      FieldData ud(u.size());
      for (size_t i = 0; i < u.size(); ++i) ud[i] = eu[i] + h * k3[i];
      ud = apply_e_half(ud);
      const FieldData k4 = nonlinear_only(ud, t + h);
      FieldData mix(u.size());
      for (size_t i = 0; i < u.size(); ++i)
        mix[i] = eu[i] + h / 6.0 * ek1[i] + h / 3.0 * (k2[i] + k3[i]);
      mix = apply_e_half(mix);
      for (size_t i = 0; i < u.size(); ++i) st.phi[i] = mix[i] + h / 6.0 * k4[i];
      st.t = t + h;
    } else if (pr.order == ProblemOrder::second) {
      detail::rk4_step(st, opt.dt, [&](const FieldState& s, std::vector<cplx>& k) {
        const SecondOrderRhs r = rhs_second_order(pr, s);
        const size_t n = r.dphi.size();
        k.resize(2 * n);
        std::copy(r.dphi.begin(), r.dphi.end(), k.begin());
        std::copy(r.dpi.begin(), r.dpi.end(), k.begin() + n);
      });
    } else {
      detail::rk4_step(st, opt.dt, [&](const FieldState& s, std::vector<cplx>& k) {
        const FieldData r = rhs_first_order(pr, s);
        k.assign(r.begin(), r.end());
      });
    }

    detail::guard_growth(pr, st, base);
    if (obs && ((opt.observe_stride > 0 && (step + 1) % opt.observe_stride == 0) ||
                step + 1 == steps))
      obs(st);
  }
  return st;
}

// ---------------------------------------------------------------------------
// manufactured-solution residuals

// Analytic snapshot of a candidate solution on the grid at one time.
struct ManufacturedSample {
  FieldData phi, dphi, ddphi, lap;
};
using ManufacturedField = std::function<ManufacturedSample(double t)>;

struct ManufacturedReport {
  double max_operator_gap = 0.0;     // |discrete - analytic| of the operator
  double max_analytic_residual = 0.0;
};

// Evaluates the problem's operator on the candidate with the discrete
// (spectral) Laplacian and with the supplied analytic one.  Exact
// solutions drive max_analytic_residual to zero; the gap isolates the
// spatial discretisation error.  Works for the static (elliptic) preset
// too, which is checked only this way.
inline ManufacturedReport manufactured_residual(const FieldProblem& pr,
                                                const ManufacturedField& field,
                                                const std::vector<double>& times) {
  pr.validate();
  ManufacturedReport rep;
  const cplx eqphase = unit_phase(2.0 * (pr.theta + pr.frame.omega1));
  for (double t : times) {
    const ManufacturedSample smp = field(t);
    require(smp.phi.size() == pr.grid.size(), "manufactured_residual: sample size mismatch");
    const ScaleAlongRay sa = pr.scale_at(t);
    const double inv_aa = 1.0 / std::norm(sa.a);
    const FieldData lap_disc = laplacian(pr.grid, smp.phi);

    auto op_residual = [&](const FieldData& lap) {
      FieldData res(smp.phi.size());
      if (pr.order == ProblemOrder::second) {
        const cplx pre = -pr.phase_ratio() / (pr.consts.c * pr.consts.c);
        const cplx damp = double(pr.frame.n_dim) * sa.da_dt / sa.a;
        const cplx mu2 = pr.mass_rate() * pr.mass_rate();
        const FieldData nl = detail::nonlinear_term(pr, smp.phi, 1.0);
        for (size_t i = 0; i < res.size(); ++i)
          res[i] = pre * (smp.ddphi[i] + damp * smp.dphi[i] + mu2 * smp.phi[i]) +
                   inv_aa * lap[i] + nl[i];
      } else {
        const double wmag = std::abs(pr.weight_at(t).w);
        const FieldData nl = detail::nonlinear_term(pr, smp.phi, wmag);
        const cplx inv_ratio = 1.0 / pr.phase_ratio();
        for (size_t i = 0; i < res.size(); ++i)
          res[i] = double(pr.sign) * iu * pr.c0() * smp.dphi[i] +
                   inv_ratio * (inv_aa * lap[i] + nl[i]);
      }
      return res;
    };

    const FieldData rd = op_residual(lap_disc);
    const FieldData ra = op_residual(smp.lap);
    for (size_t i = 0; i < rd.size(); ++i)
      rep.max_operator_gap = std::max(rep.max_operator_gap, std::abs(rd[i] - ra[i]));
    rep.max_analytic_residual = std::max(rep.max_analytic_residual, max_abs(ra));
  }
  return rep;
}

}  // namespace rayfield
