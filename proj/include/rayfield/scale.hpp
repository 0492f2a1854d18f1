#pragma once
// Closed-form scale-factor models a(z^0) returning value and first two
// derivatives.  The power-law family solves the flat homogeneous system
// with the linear state relation p = sigma rho c^2:
//
//   sigma != -1:  a = a0 B^{2/(n(1+sigma))},  B = 1 + n(1+sigma) a0' z0 / (2 a0)
//   sigma  = -1:  a = a0 exp(a0' z0 / a0)
//
// Complex powers are principal-branch; the base B must stay off the
// negative real axis.  B -> 0 is the finite-time blow-up of the
// sigma < -1 branch and raises std::domain_error.
//
// The fixed-curvature branches solve the zero-Hamiltonian constraint of
// the homogeneous minisuperspace reduction:
//   cosh:  a = +/- (k ell / q) cosh(c z0 / ell + C)      (k != 0)
//   exp:   a = a0 exp(+/- c z0 / ell)                    (k  = 0)
//   cos:   a = ell cos(c t / ell), real t, |c t / ell| < pi/2 for a > 0

#include "rayfield/core.hpp"

namespace rayfield {

enum class ScaleKind { constant, power_law, exponential, de_sitter, cosh_branch, exp_branch, cos_branch };

struct ScaleModel {
  ScaleKind kind = ScaleKind::constant;
  int n_dim = 3;

  // power_law / exponential: initial data at z0 = 0
  double sigma = 0.0;
  cplx a0{1.0, 0.0};
  cplx da0{0.0, 0.0};

  // de_sitter: a = a0 e^{H z0}
  double H = 0.0;

  // fixed-curvature branches
  double k_curv = 1.0;
  double q = 1.0;
  double ell = 1.0;
  double C = 0.0;
  double c_light = 1.0;
  int branch_sign = +1;

  void validate() const {
    require(n_dim >= 1, "ScaleModel: n_dim must be at least 1");
    require(a0 != cplx{0.0, 0.0}, "ScaleModel: a0 must be nonzero");
    require(branch_sign == 1 || branch_sign == -1, "ScaleModel: branch_sign must be +/-1");
    if (kind == ScaleKind::cosh_branch || kind == ScaleKind::exp_branch ||
        kind == ScaleKind::cos_branch) {
      require(q != 0.0, "ScaleModel: q must be nonzero");
      require(ell != 0.0, "ScaleModel: ell must be nonzero");
      require(c_light > 0.0, "ScaleModel: c_light must be positive");
    }
  }
};

struct ScaleSample {
  cplx a{1.0, 0.0};
  cplx da{0.0, 0.0};
  cplx dda{0.0, 0.0};
};

inline ScaleSample scale_eval(const ScaleModel& mdl, cplx z0) {
  mdl.validate();
  switch (mdl.kind) {
    case ScaleKind::constant:
      return {mdl.a0, 0.0, 0.0};
    case ScaleKind::power_law: {
      const double ns = mdl.n_dim * (1.0 + mdl.sigma);
      if (ns == 0.0) {  // sigma = -1 degenerates to the exponential branch
        const cplx r = mdl.da0 / mdl.a0;
        const cplx a = mdl.a0 * std::exp(r * z0);
        return {a, r * a, r * r * a};
      }
      const cplx base = 1.0 + 0.5 * ns * mdl.da0 * z0 / mdl.a0;
      if (std::abs(base) < 1e-14)
        throw std::domain_error("scale_eval: power base reached zero (finite-time blow-up)");
      const cplx e = 2.0 / ns;
      ScaleSample s;
      s.a = mdl.a0 * pow_principal(base, e);
      s.da = mdl.da0 * pow_principal(base, e - 1.0);
      s.dda = mdl.da0 * mdl.da0 * (2.0 - ns) / (2.0 * mdl.a0) * pow_principal(base, e - 2.0);
      return s;
    }
    case ScaleKind::exponential: {
      const cplx r = mdl.da0 / mdl.a0;
      const cplx a = mdl.a0 * std::exp(r * z0);
      return {a, r * a, r * r * a};
    }
    case ScaleKind::de_sitter: {
      const cplx a = mdl.a0 * std::exp(mdl.H * z0);
      return {a, mdl.H * a, mdl.H * mdl.H * a};
    }
    case ScaleKind::cosh_branch: {
      const double amp = mdl.branch_sign * mdl.k_curv * mdl.ell / mdl.q;
      const double rate = mdl.c_light / mdl.ell;
      const cplx u = rate * z0 + mdl.C;
      return {amp * std::cosh(u), amp * rate * std::sinh(u), amp * rate * rate * std::cosh(u)};
    }
    case ScaleKind::exp_branch: {
      const double rate = mdl.branch_sign * mdl.c_light / mdl.ell;
      const cplx a = mdl.a0 * std::exp(rate * z0);
      return {a, rate * a, rate * rate * a};
    }
    case ScaleKind::cos_branch: {
      require(std::abs(z0.imag()) < 1e-14, "scale_eval: cos branch takes real time");
      const double rate = mdl.c_light / mdl.ell;
      const double u = rate * z0.real();
      if (!(u > -0.5 * pi && u < 0.5 * pi))
        throw std::domain_error("scale_eval: cos branch outside its positivity window");
      return {mdl.ell * std::cos(u), -mdl.c_light * std::sin(u),
              -mdl.c_light * rate * std::cos(u)};
    }
  }
  throw std::logic_error("scale_eval: unknown kind");
}

}  // namespace rayfield
