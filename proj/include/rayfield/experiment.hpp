#pragma once
// Experiment harness: runs one configured experiment, writes CSV series
// plus a summary record with one pass/fail line per audit, and reports an
// exit status (0 only when every audit passed).  Given the same config and
// seed the CSV bytes are identical between runs.

#include <chrono>
#include <filesystem>
#include <fstream>

#include "rayfield/config.hpp"
#include "rayfield/csv.hpp"

namespace rayfield {

struct AuditRecord {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct ExperimentResult {
  int exit_code = 0;
  std::vector<AuditRecord> audits;
  std::vector<std::string> outputs;  // files written (absolute or out_dir-relative)
  double wall_ms = 0.0;
  std::string summary_path;

  bool all_passed() const {
    for (const AuditRecord& a : audits)
      if (!a.passed) return false;
    return true;
  }
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::conservative: return "conservative";
    case Regime::dissipative: return "dissipative";
    case Regime::antidissipative: return "antidissipative";
    case Regime::indefinite: return "indefinite";
  }
  return "unknown";
}

namespace detail {

inline void push_audit(ExperimentResult& res, const std::string& name, double value,
                       double threshold) {
  res.audits.push_back({name, value < threshold, value, threshold});
}

inline void push_audit_flag(ExperimentResult& res, const std::string& name, bool passed) {
  res.audits.push_back({name, passed, passed ? 0.0 : 1.0, 1.0});
}

inline std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

inline FieldState initial_state(const FieldProblem& pr, const InitialProfile& prof) {
  FieldState st;
  st.t = 0.0;
  st.phi = sample_profile(pr.grid, prof);
  if (pr.order == ProblemOrder::second)
    st.pi.assign(st.phi.size(), cplx{0.0, 0.0});  // time-symmetric start
  return st;
}

inline void run_evolve(const ExperimentConfig& cfg, const std::string& out_dir,
                       ExperimentResult& res) {
  FieldProblem pr = build_problem(cfg.preset, cfg.problem);
  pr.allow_growth = cfg.allow_growth;
  FieldState st = initial_state(pr, cfg.profile);

  std::vector<double> ts, norms, amps, pi_norms;
  EvolveOptions opt;
  opt.dt = cfg.dt;
  opt.t_end = cfg.t_end;
  opt.observe_stride = cfg.stride;
  evolve(pr, std::move(st), opt, [&](const FieldState& s) {
    ts.push_back(s.t);
    norms.push_back(norm_sq(pr.grid, s.phi));
    amps.push_back(max_abs(s.phi));
    if (pr.order == ProblemOrder::second) pi_norms.push_back(norm_sq(pr.grid, s.pi));
  });

  CsvSeries series;
  series.add_real("t", std::move(ts));
  series.add_real("norm", std::move(norms));
  series.add_real("amp_max", std::move(amps));
  if (pr.order == ProblemOrder::second) series.add_real("pi_norm", std::move(pi_norms));
  const std::string path = join_path(out_dir, cfg.name + "_series.csv");
  emit_csv(series, path);
  res.outputs.push_back(path);
  push_audit_flag(res, "completed", true);
}

inline void run_balance_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                   ExperimentResult& res) {
  FieldProblem pr = build_problem(cfg.preset, cfg.problem);
  pr.allow_growth = cfg.allow_growth;
  FieldState st = initial_state(pr, cfg.profile);

  EvolveOptions opt;
  opt.dt = cfg.dt;
  opt.t_end = cfg.t_end;
  opt.observe_stride = cfg.stride;
  const BalanceRun run = run_balance(pr, std::move(st), opt, cfg.ledger);
  const Regime regime = classify_regime(pr, cfg.ledger, 0.0, cfg.t_end);

  const auto& recs = run.audit.records;
  const double scale = run.audit.magnitude_scale();
  std::vector<double> ts, totals, accum, resid;
  std::vector<std::string> regimes;
  double running = 0.0, worst = 0.0;
  for (size_t k = 0; k < recs.size(); ++k) {
    if (k > 0)
      running += 0.5 * (recs[k].source_total + recs[k - 1].source_total) *
                 (recs[k].t - recs[k - 1].t);
    const double r =
        std::abs(run.audit.time_sign * (recs[k].total - recs[0].total) + running) / scale;
    worst = std::max(worst, r);
    ts.push_back(recs[k].t);
    totals.push_back(recs[k].total);
    accum.push_back(running);
    resid.push_back(r);
    regimes.push_back(regime_name(regime));
  }

  CsvSeries series;
  series.add_real("t", std::move(ts));
  series.add_real("e0_integral", std::move(totals));
  series.add_real("flux_accum", std::move(accum));
  series.add_real("balance_residual", std::move(resid));
  series.add_text("regime", std::move(regimes));
  const std::string path = join_path(out_dir, cfg.name + "_balance.csv");
  emit_csv(series, path);
  res.outputs.push_back(path);
  push_audit(res, "balance_residual_max", worst, cfg.balance_tol);
}

inline void run_limit(const ExperimentConfig& cfg, const std::string& out_dir,
                      ExperimentResult& res) {
  const LimitStudyResult study = limit_study(cfg.limit);
  std::vector<double> orders(study.errors.size(),
                             std::numeric_limits<double>::quiet_NaN());
  for (size_t k = 0; k < study.orders.size(); ++k) orders[k + 1] = study.orders[k];

  CsvSeries series;
  series.add_real("c", study.speeds);
  series.add_real("error", study.errors);
  series.add_real("observed_order", std::move(orders));
  const std::string path = join_path(out_dir, cfg.name + "_limit.csv");
  emit_csv(series, path);
  res.outputs.push_back(path);
  push_audit_flag(res, "errors_strictly_decreasing", study.strictly_decreasing());
}

inline void run_frw(const ExperimentConfig& cfg, const std::string& out_dir,
                    ExperimentResult& res) {
  const auto& f = cfg.frw;
  const double kappa = kappa_dimension(f.n_dim, f.consts);
  std::vector<double> zs, fr, prs, acc, con;
  double worst = 0.0;
  for (int j = 0; j < f.samples; ++j) {
    const double z0 = f.z_max * double(j) / double(f.samples - 1);
    const FrwResiduals r =
        frw_residuals(f.scale, f.sigma, f.q, f.k_curv, cplx{z0, 0.0}, kappa, f.consts);
    worst = std::max(worst, r.worst());
    zs.push_back(z0);
    fr.push_back(r.friedmann);
    prs.push_back(r.pressure);
    acc.push_back(r.acceleration);
    con.push_back(r.conservation);
  }

  CsvSeries series;
  series.add_real("z0", std::move(zs));
  series.add_real("friedmann", std::move(fr));
  series.add_real("pressure", std::move(prs));
  series.add_real("acceleration", std::move(acc));
  series.add_real("conservation", std::move(con));
  const std::string path = join_path(out_dir, cfg.name + "_frw.csv");
  emit_csv(series, path);
  res.outputs.push_back(path);
  push_audit(res, "identity_residual_max", worst, f.tol);
}

inline void run_tensor(const ExperimentConfig& cfg, const std::string& out_dir,
                       ExperimentResult& res) {
  const auto& tc = cfg.tensor;
  ScaleModel ds;
  ds.kind = ScaleKind::de_sitter;
  ds.n_dim = tc.n_dim;
  ds.H = tc.H;
  const MetricDescription metric = frw_metric(tc.n_dim, tc.c, ds);
  const double closed = -double(tc.n_dim) * double(tc.n_dim + 1) * tc.H * tc.H / (tc.c * tc.c);

  std::vector<double> ts, devs, fres;
  double worst_dev = 0.0, worst_f = 0.0;
  for (int j = 0; j < tc.samples; ++j) {
    const double t = tc.t0 + (tc.samples == 1
                                  ? 0.0
                                  : tc.t_span * double(j) / double(tc.samples - 1));
    std::vector<cplx> z(tc.n_dim + 1, cplx{0.0, 0.0});
    z[0] = cplx{t, 0.0};
    for (int d = 1; d <= tc.n_dim; ++d) z[d] = cplx{0.1 * d, 0.0};
    const CurvatureBundle cb = curvature_suite(metric, z, tc.step, StencilOrder::fourth);
    const double dev = rel_err(cb.ricci_scalar, closed);
    // conformally-flat profile residual sampled at radii away from 0
    const double radius = 0.2 + double(j) / double(tc.samples);
    const double f_res =
        std::abs(f_residual(cplx{tc.q, 0.0}, cplx{tc.k2, 0.0}, cplx{radius, 0.0}));
    worst_dev = std::max(worst_dev, dev);
    worst_f = std::max(worst_f, f_res);
    ts.push_back(t);
    devs.push_back(dev);
    fres.push_back(f_res);
  }

  CsvSeries series;
  series.add_real("t", std::move(ts));
  series.add_real("scalar_curvature_dev", std::move(devs));
  series.add_real("profile_residual", std::move(fres));
  const std::string path = join_path(out_dir, cfg.name + "_tensor.csv");
  emit_csv(series, path);
  res.outputs.push_back(path);
  push_audit(res, "scalar_curvature_dev_max", worst_dev, tc.tol);
  push_audit(res, "profile_residual_max", worst_f, tc.f_tol);
}

inline void run_vilenkin(const ExperimentConfig& cfg, const std::string& out_dir,
                         ExperimentResult& res) {
  auto v = cfg.vilenkin;
  const double kappa = kappa_dimension(v.n_dim, v.consts);
  const cplx lam{v.Lambda, 0.0};
  const cplx ell = curvature_length(v.n_dim, lam);
  v.scale.ell = ell.real();
  v.scale.validate();

  // constraint residual along the chosen branch trajectory
  std::vector<double> ts, resid;
  std::vector<cplx> as;
  double worst = 0.0;
  for (int j = 0; j < v.samples; ++j) {
    const double t = -0.5 * v.t_span + v.t_span * double(j) / double(v.samples - 1);
    const ScaleSample s = scale_eval(v.scale, cplx{t, 0.0});
    const cplx p = scale_momentum(s.a, s.da, v.n_dim, kappa, v.consts);
    const cplx H =
        vilenkin_hamiltonian(s.a, p, v.n_dim, v.k_curv, v.q, lam, kappa, v.consts);
    const double scale_mag =
        vilenkin_scale(s.a, s.da, v.n_dim, v.k_curv, v.q, lam, kappa, v.consts);
    const double r = std::abs(H) / scale_mag;
    worst = std::max(worst, r);
    ts.push_back(t);
    as.push_back(s.a);
    resid.push_back(r);
  }
  CsvSeries constraint;
  constraint.add_real("t", std::move(ts));
  constraint.add_complex("a", as);
  constraint.add_real("constraint_residual", std::move(resid));
  const std::string cpath = join_path(out_dir, cfg.name + "_constraint.csv");
  emit_csv(constraint, cpath);
  res.outputs.push_back(cpath);

  // potential scan over (0, ell]
  std::vector<double> avals;
  std::vector<cplx> vvals;
  double vmax = 0.0;
  bool interior_positive = true;
  for (int j = 1; j <= v.samples; ++j) {
    const double a = ell.real() * double(j) / double(v.samples);
    const cplx V = vilenkin_potential(cplx{a, 0.0}, v.n_dim, v.k_curv, v.q, lam, v.consts);
    if (j < v.samples && V.real() <= 0.0) interior_positive = false;
    vmax = std::max(vmax, std::abs(V));
    avals.push_back(a);
    vvals.push_back(V);
  }
  const double turning = std::abs(vvals.back()) / std::max(vmax, 1e-30);
  CsvSeries pot;
  pot.add_real("a", std::move(avals));
  pot.add_complex("V", vvals);
  const std::string ppath = join_path(out_dir, cfg.name + "_potential.csv");
  emit_csv(pot, ppath);
  res.outputs.push_back(ppath);

  push_audit(res, "constraint_residual_max", worst, v.tol);
  push_audit_flag(res, "potential_positive_interior", interior_positive);
  push_audit(res, "potential_zero_at_turning", turning, v.v_tol);
}

inline void run_geodesic_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                    ExperimentResult& res) {
  const auto& geo = cfg.geodesic;
  GeodesicState st = make_geodesic_state(geo.scenario, 0.0, geo.x0, geo.v0);
  const GeodesicRun run =
      run_geodesic(geo.scenario, st, geo.dt, geo.steps, geo.record_stride);

  const size_t rows = run.trajectory.size();
  const cplx h0 = run.trajectory.front().H;
  std::vector<double> ts(rows), resid(rows);
  std::vector<std::vector<double>> xs(geo.scenario.n_dim, std::vector<double>(rows));
  std::vector<std::vector<cplx>> ps(geo.scenario.n_dim, std::vector<cplx>(rows));
  std::vector<cplx> hs(rows), accums(rows);
  for (size_t k = 0; k < rows; ++k) {
    const GeodesicState& rec = run.trajectory[k];
    ts[k] = rec.t;
    for (int j = 0; j < geo.scenario.n_dim; ++j) {
      xs[j][k] = rec.x[j];
      ps[j][k] = rec.p_up[j];
    }
    hs[k] = rec.H;
    accums[k] = rec.hr_accum;
    resid[k] = std::abs(rec.H + rec.hr_accum - h0) / std::abs(h0);
  }

  CsvSeries series;
  series.add_real("t", std::move(ts));
  for (int j = 0; j < geo.scenario.n_dim; ++j)
    series.add_real("x" + std::to_string(j), std::move(xs[j]));
  for (int j = 0; j < geo.scenario.n_dim; ++j)
    series.add_complex("p" + std::to_string(j), ps[j]);
  series.add_complex("H", hs);
  series.add_complex("hr_accum", accums);
  series.add_real("conservation_residual", std::move(resid));
  const std::string path = join_path(out_dir, cfg.name + "_trajectory.csv");
  emit_csv(series, path);
  res.outputs.push_back(path);
  push_audit(res, "conservation_residual_max", conservation_audit(run), geo.tol);
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  ExperimentResult res;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (cfg.experiment) {
      case ExperimentKind::evolve: detail::run_evolve(cfg, out_dir, res); break;
      case ExperimentKind::balance: detail::run_balance_experiment(cfg, out_dir, res); break;
      case ExperimentKind::limit_study: detail::run_limit(cfg, out_dir, res); break;
      case ExperimentKind::frw_check: detail::run_frw(cfg, out_dir, res); break;
      case ExperimentKind::tensor_check: detail::run_tensor(cfg, out_dir, res); break;
      case ExperimentKind::vilenkin: detail::run_vilenkin(cfg, out_dir, res); break;
      case ExperimentKind::geodesic: detail::run_geodesic_experiment(cfg, out_dir, res); break;
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("experiment '" + cfg.name + "' (" +
                             experiment_name(cfg.experiment) + ") failed: " + e.what());
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.exit_code = res.all_passed() ? 0 : 1;

  // summary record: one pass/fail line per audit
  res.summary_path = detail::join_path(out_dir, cfg.name + "_summary.txt");
  std::ofstream sum(res.summary_path);
  if (!sum)
    throw std::runtime_error("run_experiment: cannot write summary '" + res.summary_path +
                             "'");
  sum << "name: " << cfg.name << "\n";
  sum << "experiment: " << experiment_name(cfg.experiment) << "\n";
  sum << "status: " << (res.all_passed() ? "PASS" : "FAIL") << "\n";
  sum << "wall_ms: " << res.wall_ms << "\n";
  for (const std::string& f : res.outputs) sum << "output: " << f << "\n";
  for (const AuditRecord& a : res.audits)
    sum << "audit " << a.name << ": " << (a.passed ? "PASS" : "FAIL")
        << " value=" << format_double(a.value) << " threshold=" << format_double(a.threshold)
        << "\n";
  return res;
}

}  // namespace rayfield
