#pragma once
// Envelope limit of the oscillatory second-order flow.  Writing
// phi = b(t) u with the carrier-dressed weight
//   b = b0 (a(0)/a)^{n/2} exp(-s i m c^2 t / hbar),
// the second-order dynamics of phi reduce, as c grows, to the first-order
// dispersive flow for u.  `dress_envelope` builds well-prepared data
// (pi = b' u + b du with du taken from the first-order equation, never a
// finite difference) and `strip_carrier` inverts the dressing.  The study
// evolves both flows from the same envelope with one shared time step that
// resolves the fastest carrier, and reports the envelope mismatch per
// speed plus the measured convergence order between consecutive speeds
// (reported, not asserted -- the caller decides what to require).

#include "rayfield/field.hpp"

namespace rayfield {

// carrier-dressed weight of a (second-order) problem along its time ray
inline WeightAlongRay carrier_weight(const FieldProblem& pr, int carrier_sign, cplx b0,
                                     double t) {
  WeightModel wm;
  wm.scale = pr.scale;
  wm.b0 = b0;
  wm.carrier_sign = carrier_sign;
  const cplx ph = unit_phase(pr.frame.omega0);
  const WeightSample s = weight_eval(wm, ph * t, pr.consts);
  return {s.w, ph * s.dw, s.b, ph * s.db};
}

// phi = b u, pi = b' u + b du; du from the first-order flow (well-prepared)
inline FieldState dress_envelope(const FieldProblem& second_pr, const FieldProblem& first_pr,
                                 const FieldState& envelope) {
  require(second_pr.order == ProblemOrder::second, "dress_envelope: needs a second-order target");
  require(first_pr.order == ProblemOrder::first, "dress_envelope: needs a first-order source");
  require(envelope.pi.empty(), "dress_envelope: envelope state must not carry pi");
  require(envelope.phi.size() == second_pr.grid.size(), "dress_envelope: size mismatch");

  const WeightAlongRay cw =
      carrier_weight(second_pr, first_pr.sign, first_pr.weight.b0, envelope.t);
  const FieldData du = rhs_first_order(first_pr, envelope);

  FieldState out;
  out.t = envelope.t;
  out.phi.resize(envelope.phi.size());
  out.pi.resize(envelope.phi.size());
  for (size_t i = 0; i < envelope.phi.size(); ++i) {
    out.phi[i] = cw.b * envelope.phi[i];
    out.pi[i] = cw.db_dt * envelope.phi[i] + cw.b * du[i];
  }
  return out;
}

// u = phi / b; the time derivative is dropped
inline FieldState strip_carrier(const FieldProblem& second_pr, int carrier_sign, cplx b0,
                                const FieldState& second_state) {
  require(second_pr.order == ProblemOrder::second, "strip_carrier: needs a second-order source");
  require(second_state.phi.size() == second_pr.grid.size(), "strip_carrier: size mismatch");
  const WeightAlongRay cw = carrier_weight(second_pr, carrier_sign, b0, second_state.t);
  require(cw.b != cplx{0.0, 0.0}, "strip_carrier: carrier weight vanished");

  FieldState out;
  out.t = second_state.t;
  out.phi.resize(second_state.phi.size());
  for (size_t i = 0; i < out.phi.size(); ++i) out.phi[i] = second_state.phi[i] / cw.b;
  return out;
}

struct LimitStudyOptions {
  GridSpec grid;
  double m = 1.0, hbar = 1.0;
  std::vector<double> speeds{10.0, 20.0, 40.0, 80.0};  // strictly increasing
  double t_end = 0.4;
  double resolution_factor = 20.0;  // steps per fastest carrier period / (2 pi)
  InitialProfile profile;           // shared envelope data
  std::vector<std::pair<cplx, double>> lambda0;
  int sign = +1;
};

struct LimitStudyResult {
  std::vector<double> speeds;
  std::vector<double> errors;  // envelope mismatch at t_end per speed
  std::vector<double> orders;  // measured order between consecutive speeds
  double dt = 0.0;
  long steps = 0;

  bool strictly_decreasing() const {
    for (size_t i = 1; i < errors.size(); ++i)
      if (errors[i] >= errors[i - 1]) return false;
    return true;
  }
};

inline LimitStudyResult limit_study(const LimitStudyOptions& opt) {
  require(opt.speeds.size() >= 2, "limit_study: need at least two speeds");
  for (size_t i = 0; i < opt.speeds.size(); ++i) {
    require(opt.speeds[i] > 0.0, "limit_study: speeds must be positive");
    if (i) require(opt.speeds[i] > opt.speeds[i - 1], "limit_study: speeds must increase");
  }
  require(opt.t_end > 0.0, "limit_study: t_end must be positive");
  require(opt.m > 0.0 && opt.hbar > 0.0, "limit_study: m and hbar must be positive");
  require(opt.resolution_factor >= 1.0, "limit_study: resolution factor below 1");

  LimitStudyResult res;
  res.speeds = opt.speeds;

  // one shared step resolving the fastest carrier rate m c_max^2 / hbar
  const double cmax = opt.speeds.back();
  const double carrier_dt = opt.hbar / (opt.m * cmax * cmax) / opt.resolution_factor;
  res.steps = std::max(1L, std::lround(std::ceil(opt.t_end / carrier_dt)));
  res.dt = opt.t_end / double(res.steps);

  // reference envelope: the first-order flow is independent of c
  ProblemOptions ref_opt;
  ref_opt.grid = opt.grid;
  ref_opt.consts.m = opt.m;
  ref_opt.consts.hbar = opt.hbar;
  ref_opt.consts.c = 1.0;
  ref_opt.sign = opt.sign;
  ref_opt.lambda0 = opt.lambda0;
  const FieldProblem ref_pr = build_problem(PresetKind::schrodinger, ref_opt);

  FieldState env0;
  env0.phi = sample_profile(opt.grid, opt.profile);

  EvolveOptions eo;
  eo.dt = res.dt;
  eo.t_end = opt.t_end;
  eo.observe_stride = 0;
  const FieldState env_ref = evolve(ref_pr, env0, eo);

  for (double c : opt.speeds) {
    ProblemOptions kg_opt = ref_opt;
    kg_opt.consts.c = c;
    const FieldProblem kg_pr = build_problem(PresetKind::kg, kg_opt);

    const FieldState dressed = dress_envelope(kg_pr, ref_pr, env0);
    const FieldState evolved = evolve(kg_pr, dressed, eo);
    const FieldState stripped =
        strip_carrier(kg_pr, ref_pr.sign, ref_pr.weight.b0, evolved);
    res.errors.push_back(rel_l2_distance(opt.grid, stripped.phi, env_ref.phi));
  }

  for (size_t i = 1; i < res.errors.size(); ++i) {
    const double ratio = res.errors[i - 1] / std::max(res.errors[i], 1e-300);
    res.orders.push_back(std::log(ratio) / std::log(res.speeds[i] / res.speeds[i - 1]));
  }
  return res;
}

}  // namespace rayfield
