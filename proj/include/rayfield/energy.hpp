#pragma once
// Balance ledgers for the unified flows.  Each ledger supplies a density
// triple (time component e^0, spatial flux e^j, source e^{n+1}) obeying a
// pointwise divergence identity along solutions:
//
//   field_energy     (second order):  d/dt e^0 + div e^j + e^{n+1} = 0
//   envelope_charge  (first order):  s d/dt e^0 + div e^j + e^{n+1} = 0
//   envelope_energy  (first order):   d/dt e^0 + div e^j + e^{n+1} = 0
//
// On a periodic box the flux integrates to zero, so the audited statement
// is  sign * (E(T) - E(0)) + int_0^T int e^{n+1} dV dt = 0, accumulated by
// the trapezoid rule over observed samples.  The identities require real C0,
// real gradient coefficients, and (for the second-order ledger) a real phase
// ratio and a phase-steady scale factor -- so violating inputs are rejected
// outright rather than silently producing a meaningless audit.

#include <algorithm>
#include <limits>

#include "rayfield/field.hpp"

namespace rayfield {

enum class LedgerKind { field_energy, envelope_charge, envelope_energy };

using RealField = std::vector<double>;

struct LedgerDensities {
  int n_dim = 0;
  RealField time_component;
  std::array<RealField, 3> flux;
  RealField source;
};

namespace detail {

inline void hypothesis(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

inline double real_integral(const GridSpec& g, const RealField& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * g.cell_volume();
}

struct LedgerContext {
  double a2 = 1.0;       // |a|^2
  double d_a2 = 0.0;     // d/dt |a|^2
  double ha = 0.0;       // Re(a'/a)
  double wmag = 1.0;     // |w|
  double c0r = 0.0;      // C0 (checked real)
  double im_ratio = 0.0; // Im A
  double re_ratio = 1.0; // Re A
};

inline LedgerContext ledger_context(const FieldProblem& pr, double t, bool need_weight) {
  LedgerContext cx;
  const ScaleAlongRay sa = pr.scale_at(t);
  cx.a2 = std::norm(sa.a);
  cx.d_a2 = 2.0 * std::real(std::conj(sa.a) * sa.da_dt);
  cx.ha = std::real(sa.da_dt / sa.a);
  cx.c0r = real_checked(pr.c0(), "ledger: C0 must be real");
  const cplx ratio = pr.phase_ratio();
  cx.im_ratio = ratio.imag();
  cx.re_ratio = ratio.real();
  if (need_weight) cx.wmag = std::abs(pr.weight_at(t).w);
  hypothesis(real_gradient_class(pr.potential, pr.theta, pr.frame.omega1),
             "ledger: gradient coefficients must be real");
  return cx;
}

}  // namespace detail

inline LedgerDensities ledger_densities(const FieldProblem& pr, const FieldState& st,
                                        LedgerKind kind) {
  pr.validate();
  const int n = pr.grid.n_dim;
  const size_t sz = pr.grid.size();
  require(st.phi.size() == sz, "ledger_densities: state size mismatch");

  LedgerDensities out;
  out.n_dim = n;
  out.time_component.assign(sz, 0.0);
  out.source.assign(sz, 0.0);
  for (int j = 0; j < n; ++j) out.flux[j].assign(sz, 0.0);

  std::array<FieldData, 3> grad;
  for (int j = 0; j < n; ++j) grad[j] = derivative(pr.grid, st.phi, j);
  auto grad2 = [&](size_t i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::norm(grad[j][i]);
    return s;
  };

  switch (kind) {
    case LedgerKind::field_energy: {
      require(pr.order == ProblemOrder::second, "field_energy ledger needs a second-order flow");
      require(st.pi.size() == sz, "field_energy ledger needs the time derivative");
      const detail::LedgerContext cx = detail::ledger_context(pr, st.t, false);
      detail::hypothesis(nearly_real(pr.phase_ratio()),
                         "field_energy ledger: phase ratio must be real");
      // phase-steady scale: a'/a must be real so arg(a) is constant
      const ScaleAlongRay sa = pr.scale_at(st.t);
      const cplx log_rate = sa.da_dt / sa.a;
      detail::hypothesis(
          std::abs(log_rate.imag()) <= 1e-10 * std::max(1.0, std::abs(log_rate)),
          "field_energy ledger: scale phase must be steady");
      const double A = cx.re_ratio;
      const double c2 = pr.consts.c * pr.consts.c;
      const double mass2 = cx.c0r * cx.c0r * c2 * c2 / 4.0;
      const double inv_a2 = 1.0 / cx.a2;
      for (size_t i = 0; i < sz; ++i) {
        const double g2 = grad2(i);
        out.time_component[i] =
            (A / c2) * (std::norm(st.pi[i]) + mass2 * std::norm(st.phi[i])) + inv_a2 * g2 +
            2.0 * std::real(v0_value(pr.potential, pr.theta, pr.frame.omega1, st.phi[i]));
        for (int j = 0; j < n; ++j)
          out.flux[j][i] = -inv_a2 * 2.0 * std::real(std::conj(st.pi[i]) * grad[j][i]);
        out.source[i] = (A / c2) * 2.0 * n * cx.ha * std::norm(st.pi[i]) +
                        cx.d_a2 * inv_a2 * inv_a2 * g2;
      }
      return out;
    }

    case LedgerKind::envelope_charge: {
      require(pr.order == ProblemOrder::first, "envelope_charge ledger needs a first-order flow");
      const detail::LedgerContext cx = detail::ledger_context(pr, st.t, true);
      const cplx ratio_bar = std::conj(pr.phase_ratio());
      const double inv_a2 = 1.0 / cx.a2;
      const double inv_w2 = 1.0 / (cx.wmag * cx.wmag);
      for (size_t i = 0; i < sz; ++i) {
        const cplx u = st.phi[i];
        out.time_component[i] = cx.c0r * std::norm(u);
        for (int j = 0; j < n; ++j)
          out.flux[j][i] = inv_a2 * 2.0 * std::imag(ratio_bar * std::conj(u) * grad[j][i]);
        const cplx psi = u * cx.wmag;
        const double pot_term =
            std::real(std::conj(psi) * v0_prime(pr.potential, pr.theta, pr.frame.omega1, psi));
        out.source[i] = 2.0 * cx.im_ratio * (inv_a2 * grad2(i) + inv_w2 * pot_term);
      }
      return out;
    }

    case LedgerKind::envelope_energy: {
      require(pr.order == ProblemOrder::first, "envelope_energy ledger needs a first-order flow");
      const detail::LedgerContext cx = detail::ledger_context(pr, st.t, true);
      const FieldData dudt = rhs_first_order(pr, st);
      const double inv_w2 = 1.0 / (cx.wmag * cx.wmag);
      const double source_rate = 2.0 * pr.sign * cx.c0r * cx.im_ratio * cx.a2;
      const double pot_scale = n * cx.d_a2 * 0.5 * inv_w2;
      for (size_t i = 0; i < sz; ++i) {
        const cplx psi = st.phi[i] * cx.wmag;
        const double v0 = std::real(v0_value(pr.potential, pr.theta, pr.frame.omega1, psi));
        const double psi_v0p =
            std::real(std::conj(psi) * v0_prime(pr.potential, pr.theta, pr.frame.omega1, psi));
        out.time_component[i] = grad2(i) + 2.0 * cx.a2 * inv_w2 * v0;
        for (int j = 0; j < n; ++j)
          out.flux[j][i] = -2.0 * std::real(std::conj(dudt[i]) * grad[j][i]);
        out.source[i] = source_rate * std::norm(dudt[i]) +
                        pot_scale * (psi_v0p - 2.0 * (n + 2.0) / n * v0);
      }
      return out;
    }
  }
  throw std::logic_error("ledger_densities: unknown kind");
}

// time-orientation sign of the audited identity for this ledger
inline int ledger_time_sign(const FieldProblem& pr, LedgerKind kind) {
  return kind == LedgerKind::envelope_charge ? pr.sign : +1;
}

struct BalanceRecord {
  double t = 0.0;
  double total = 0.0;         // int e^0 dV
  double source_total = 0.0;  // int e^{n+1} dV
  double source_min = 0.0, source_max = 0.0;
};

inline BalanceRecord ledger_record(const FieldProblem& pr, const FieldState& st,
                                   LedgerKind kind) {
  const LedgerDensities d = ledger_densities(pr, st, kind);
  BalanceRecord r;
  r.t = st.t;
  r.total = detail::real_integral(pr.grid, d.time_component);
  r.source_total = detail::real_integral(pr.grid, d.source);
  auto [mn, mx] = std::minmax_element(d.source.begin(), d.source.end());
  r.source_min = *mn;
  r.source_max = *mx;
  return r;
}

struct BalanceAccumulator {
  int time_sign = +1;
  std::vector<BalanceRecord> records;
  double accumulated_source = 0.0;  // trapezoid of int e^{n+1} dV over time

  void push(const BalanceRecord& r) {
    if (!records.empty()) {
      const BalanceRecord& p = records.back();
      require(r.t > p.t, "BalanceAccumulator: samples must advance in time");
      accumulated_source += 0.5 * (r.source_total + p.source_total) * (r.t - p.t);
    }
    records.push_back(r);
  }

  double drift() const {
    require(records.size() >= 2, "BalanceAccumulator: need at least two samples");
    return time_sign * (records.back().total - records.front().total) + accumulated_source;
  }

  double magnitude_scale() const {
    double s = std::abs(accumulated_source);
    for (const BalanceRecord& r : records) s = std::max(s, std::abs(r.total));
    return std::max(s, 1e-30);
  }

  double rel_drift() const { return std::abs(drift()) / magnitude_scale(); }

  double worst_source_min() const {
    double s = std::numeric_limits<double>::infinity();
    for (const BalanceRecord& r : records) s = std::min(s, r.source_min);
    return s;
  }
  double worst_source_max() const {
    double s = -std::numeric_limits<double>::infinity();
    for (const BalanceRecord& r : records) s = std::max(s, r.source_max);
    return s;
  }

  // strict monotonicity of the monitored integral in forward time
  bool totals_nonincreasing(double slack = 0.0) const {
    for (size_t i = 1; i < records.size(); ++i)
      if (records[i].total > records[i - 1].total + slack) return false;
    return true;
  }
  bool totals_nondecreasing(double slack = 0.0) const {
    for (size_t i = 1; i < records.size(); ++i)
      if (records[i].total < records[i - 1].total - slack) return false;
    return true;
  }
  bool totals_strictly_decreasing() const {
    for (size_t i = 1; i < records.size(); ++i)
      if (records[i].total >= records[i - 1].total) return false;
    return true;
  }
};

struct BalanceRun {
  FieldState final_state;
  BalanceAccumulator audit;
};

// Evolve while auditing: one record per observed state (stride from opt).
inline BalanceRun run_balance(const FieldProblem& pr, FieldState st, const EvolveOptions& opt,
                              LedgerKind kind) {
  BalanceRun run;
  run.audit.time_sign = ledger_time_sign(pr, kind);
  run.final_state = evolve(pr, std::move(st), opt, [&](const FieldState& s) {
    run.audit.push(ledger_record(pr, s, kind));
  });
  return run;
}

// ---------------------------------------------------------------------------
// regime classification by term-sign analysis

enum class Regime { conservative, dissipative, antidissipative, indefinite };

namespace detail {

inline int sgn_tol(double x, double tol = 1e-14) { return x > tol ? 1 : (x < -tol ? -1 : 0); }

inline Regime combine_signs(const std::vector<int>& signs) {
  bool pos = false, neg = false;
  for (int s : signs) {
    if (s > 0) pos = true;
    if (s < 0) neg = true;
  }
  if (pos && neg) return Regime::indefinite;
  if (pos) return Regime::dissipative;
  if (neg) return Regime::antidissipative;
  return Regime::conservative;
}

}  // namespace detail

// Signs are taken for the effective source of d/dt(monitored integral)
// = -source, so a positive sign means the monitored quantity decreases in
// forward time (dissipative).  The scale factor is sampled across the
// window so sign changes surface as indefinite.
inline Regime classify_regime(const FieldProblem& pr, LedgerKind kind, double t0, double t1) {
  pr.validate();
  require(t1 >= t0, "classify_regime: bad window");
  std::vector<int> signs;
  const int n = pr.grid.n_dim;
  const std::array<double, 3> samples{t0, 0.5 * (t0 + t1), t1};
  const double im_ratio = pr.phase_ratio().imag();
  const double re_ratio = pr.phase_ratio().real();
  const double c0r = std::abs(pr.c0());

  for (double t : samples) {
    const ScaleAlongRay sa = pr.scale_at(t);
    const double ha = std::real(sa.da_dt / sa.a);
    const double d_a2 = 2.0 * std::real(std::conj(sa.a) * sa.da_dt);
    switch (kind) {
      case LedgerKind::field_energy:
        signs.push_back(detail::sgn_tol(re_ratio * ha));
        signs.push_back(detail::sgn_tol(d_a2));
        break;
      case LedgerKind::envelope_charge: {
        // s d/dt Q = -source  =>  d/dt Q = -s * source
        signs.push_back(detail::sgn_tol(pr.sign * im_ratio));
        for (const auto& term : pr.potential.terms) {
          const double lam0 =
              std::real(gradient_coefficient(term, pr.theta, pr.frame.omega1));
          signs.push_back(detail::sgn_tol(pr.sign * im_ratio * lam0));
        }
        break;
      }
      case LedgerKind::envelope_energy: {
        signs.push_back(detail::sgn_tol(pr.sign * c0r * im_ratio));
        for (const auto& term : pr.potential.terms) {
          const double lam0 =
              std::real(gradient_coefficient(term, pr.theta, pr.frame.omega1));
          const double shape = 1.0 - 2.0 * (n + 2.0) / (n * (term.p + 1.0));
          signs.push_back(detail::sgn_tol(d_a2 * lam0 * shape));
        }
        break;
      }
    }
  }
  return detail::combine_signs(signs);
}

}  // namespace rayfield
