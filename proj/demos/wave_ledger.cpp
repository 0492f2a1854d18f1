// Minimal library walkthrough: evolve the cubic wave field twice — once on a
// static background, once on an exponentially expanding one — while keeping
// the running energy ledger, then print both ledgers side by side.  On the
// static background the ledger residual sits at round-off; on the expanding
// background the energy integral decays monotonically and the accumulated
// friction flux accounts for every bit of the loss.

#include <cstdio>

#include "rayfield/energy.hpp"
#include "rayfield/experiment.hpp"
#include "rayfield/field.hpp"

using namespace rayfield;

namespace {

FieldState gaussian_start(const FieldProblem& pr) {
  InitialProfile prof;
  prof.kind = ProfileKind::gaussian;
  prof.amplitude = cplx{0.8, 0.0};
  prof.width = 0.7;
  FieldState st;
  st.t = 0.0;
  st.phi = sample_profile(pr.grid, prof);
  st.pi.assign(st.phi.size(), cplx{0.0, 0.0});
  return st;
}

void report(const char* label, const FieldProblem& pr, const BalanceRun& run,
            size_t print_every) {
  const Regime regime = classify_regime(pr, LedgerKind::field_energy, 0.0,
                                        run.audit.records.back().t);
  std::printf("\n%s  (regime: %s)\n", label, regime_name(regime));
  std::printf("  %8s  %18s  %18s  %12s\n", "t", "energy integral", "flux accumulated",
              "residual");
  BalanceAccumulator partial;
  partial.time_sign = run.audit.time_sign;
  const size_t last = run.audit.records.size() - 1;
  for (size_t j = 0; j <= last; ++j) {
    partial.push(run.audit.records[j]);
    if (j % print_every != 0 && j != last) continue;
    const double resid = j == 0 ? 0.0 : partial.rel_drift();
    std::printf("  %8.3f  %18.12f  %18.12f  %12.3e\n", run.audit.records[j].t,
                run.audit.records[j].total, partial.accumulated_source, resid);
  }
  std::printf("  final relative residual: %.3e\n", run.audit.rel_drift());
}

}  // namespace

int main() {
  ProblemOptions opt;
  opt.grid.n_dim = 1;
  opt.grid.points = {128, 1, 1};
  opt.lambda0.push_back({cplx{-1.0, 0.0}, 3.0});

  EvolveOptions ev;
  ev.dt = 1e-3;
  ev.t_end = 1.0;
  ev.observe_stride = 1;  // audit every step so the flux quadrature is sharp

  FieldProblem flat = build_problem(PresetKind::kg, opt);
  report("static background", flat,
         run_balance(flat, gaussian_start(flat), ev, LedgerKind::field_energy), 200);

  opt.H = 0.5;
  FieldProblem expanding = build_problem(PresetKind::de_sitter_kg, opt);
  report("expanding background (H = 0.5)", expanding,
         run_balance(expanding, gaussian_start(expanding), ev, LedgerKind::field_energy),
         200);

  std::printf("\nBoth ledgers close: the drift in the monitored integral equals minus the\n"
              "accumulated flux — exactly when nothing flows, and to the accuracy of the\n"
              "time quadrature when the background drains energy.\n");
  return 0;
}
