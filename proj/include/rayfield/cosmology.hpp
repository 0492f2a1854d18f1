#pragma once
// Homogeneous-cosmology closed forms built on the scale models:
//
//  * weight_eval: the slow envelope w = b0 (a(0)/a)^{n/2} and the carrier
//    b = w e^{-s i m c^2 z0 / hbar} used to strip the rest-mass phase,
//  * density_eval: the matter density that solves the homogeneous system,
//      rho = (n-1)/2 * n/(kappa c^4) * a0'^2 a0^{n(1+sigma)-2} * a^{-n(1+sigma)},
//  * frw_residuals: the four identities (Friedmann, pressure, acceleration,
//    mass conservation) evaluated with analytic derivatives; they vanish for
//    the power family at zero spatial curvature,
//  * the minisuperspace Hamiltonian of the pure-Lambda reduction,
//      H = 2n a^n/(kappa c^2) (c / (4n a^{n-1}))^2 (kappa^2 p^2 c^4 + V(a)/c^4),
//      V(a) = c^2 (4 n a^{n-2})^2 (k^2/q^2 - a^2/ell^2),  ell = sqrt(n(n-1)/(2 Lambda)),
//    which vanishes along the cosh/exp branches of the scale family.

#include "rayfield/constants.hpp"
#include "rayfield/scale.hpp"

namespace rayfield {

struct WeightModel {
  ScaleModel scale;
  cplx b0{1.0, 0.0};
  int carrier_sign = +1;  // b = w * exp(-carrier_sign * i m c^2 z0 / hbar)

  void validate() const {
    scale.validate();
    require(b0 != cplx{0.0, 0.0}, "WeightModel: b0 must be nonzero");
    require(carrier_sign == 1 || carrier_sign == -1, "WeightModel: carrier_sign must be +/-1");
  }
};

struct WeightSample {
  cplx w, dw;  // envelope and its z0-derivative
  cplx b, db;  // carrier-dressed weight and its z0-derivative
};

inline WeightSample weight_eval(const WeightModel& mdl, cplx z0, const PhysicalConstants& pc) {
  mdl.validate();
  pc.validate();
  const ScaleSample s0 = scale_eval(mdl.scale, 0.0);
  const ScaleSample s = scale_eval(mdl.scale, z0);
  const double nh = 0.5 * mdl.scale.n_dim;

  WeightSample out;
  out.w = mdl.b0 * pow_principal(s0.a / s.a, nh);
  out.dw = -nh * out.w * s.da / s.a;
  const cplx rot = -double(mdl.carrier_sign) * iu * pc.m * pc.c * pc.c / pc.hbar;
  const cplx carrier = std::exp(rot * z0);
  out.b = out.w * carrier;
  out.db = (out.dw + rot * out.w) * carrier;
  return out;
}

inline cplx density_eval(const ScaleModel& mdl, double sigma, cplx z0, double kappa,
                         const PhysicalConstants& pc) {
  mdl.validate();
  pc.validate();
  require(kappa > 0.0, "density_eval: kappa must be positive");
  const int n = mdl.n_dim;
  const ScaleSample s0 = scale_eval(mdl, 0.0);
  const ScaleSample s = scale_eval(mdl, z0);
  const double c4 = std::pow(pc.c, 4);
  const cplx expo = n * (1.0 + sigma);
  return 0.5 * (n - 1) * n / (kappa * c4) * s0.da * s0.da *
         pow_principal(s0.a, expo - 2.0) * pow_principal(s.a, -expo);
}

struct FrwResiduals {
  double friedmann = 0.0;
  double pressure = 0.0;
  double acceleration = 0.0;
  double conservation = 0.0;

  double worst() const {
    return std::max(std::max(friedmann, pressure), std::max(acceleration, conservation));
  }
};

namespace detail {
// |sum of terms| relative to the largest single term: identities whose
// sides both vanish still get a meaningful scale.
inline double term_residual(std::initializer_list<cplx> terms, double floor = 1e-30) {
  cplx sum{0.0, 0.0};
  double big = floor;
  for (cplx t : terms) {
    sum += t;
    big = std::max(big, std::abs(t));
  }
  return std::abs(sum) / big;
}
}  // namespace detail

// Each residual is |sum of the identity's terms| over the largest term.
// The conservation row uses analytic derivatives of rho and a^n, so for
// the power family it cancels identically and only roundoff remains.
inline FrwResiduals frw_residuals(const ScaleModel& mdl, double sigma, double q, double k_curv,
                                  cplx z0, double kappa, const PhysicalConstants& pc) {
  require(mdl.n_dim >= 3, "frw_residuals: needs n >= 3");
  require(q != 0.0, "frw_residuals: q must be nonzero");
  const int n = mdl.n_dim;
  const double c = pc.c, c2 = c * c;

  const ScaleSample s = scale_eval(mdl, z0);
  const cplx rho = density_eval(mdl, sigma, z0, kappa, pc);
  const cplx p = sigma * rho * c2;
  const cplx hub2 = s.da * s.da / (c2 * s.a * s.a);
  const cplx curv = k_curv * k_curv / (q * q * s.a * s.a);
  const cplx acc = s.dda / (c2 * s.a);
  const double half = 0.5 * (n - 1);

  FrwResiduals out;
  out.friedmann =
      detail::term_residual({half * hub2, half * curv, -kappa * c2 * rho / double(n)});
  out.pressure = detail::term_residual({half * 2.0 / (n - 2) * acc, half * hub2, half * curv,
                                        kappa * p / double(n - 2)});
  out.acceleration = detail::term_residual(
      {acc, double(n - 2) / (n - 1) * kappa * rho * c2 / double(n), kappa * p / double(n - 1)});

  // d/dz0 (rho c^2 a^n) + p d/dz0 (a^n), with d rho = -n(1+sigma) rho a'/a
  const cplx drho = -double(n) * (1.0 + sigma) * rho * s.da / s.a;
  const cplx an = pow_principal(s.a, double(n));
  const cplx dan = double(n) * pow_principal(s.a, double(n - 1)) * s.da;
  out.conservation = detail::term_residual({c2 * drho * an, c2 * rho * dan, p * dan});
  return out;
}

// ell = sqrt(n(n-1)/(2 Lambda)), principal branch.
inline cplx curvature_length(int n, cplx Lambda) {
  require(n >= 2, "curvature_length: needs n >= 2");
  require(Lambda != cplx{0.0, 0.0}, "curvature_length: Lambda must be nonzero");
  return std::sqrt(0.5 * double(n) * double(n - 1) / Lambda);
}

inline cplx vilenkin_potential(cplx a, int n, double k_curv, double q, cplx Lambda,
                               const PhysicalConstants& pc) {
  require(n >= 2, "vilenkin_potential: needs n >= 2");
  require(q != 0.0, "vilenkin_potential: q must be nonzero");
  pc.validate();
  const cplx ell = curvature_length(n, Lambda);
  const cplx pre = 4.0 * double(n) * pow_principal(a, double(n - 2));
  return pc.c * pc.c * pre * pre * (k_curv * k_curv / (q * q) - a * a / (ell * ell));
}

// Momentum conjugate to a for the homogeneous reduction.
inline cplx scale_momentum(cplx a, cplx da, int n, double kappa, const PhysicalConstants& pc) {
  return 4.0 * double(n) * pow_principal(a, double(n - 2)) * da / (kappa * std::pow(pc.c, 4));
}

// Momentum form of the constraint Hamiltonian.
inline cplx vilenkin_hamiltonian(cplx a, cplx p, int n, double k_curv, double q, cplx Lambda,
                                 double kappa, const PhysicalConstants& pc) {
  require(kappa > 0.0, "vilenkin_hamiltonian: kappa must be positive");
  require(a != cplx{0.0, 0.0}, "vilenkin_hamiltonian: a must be nonzero");
  const double c = pc.c;
  const cplx pre = 2.0 * double(n) * pow_principal(a, double(n)) / (kappa * c * c);
  const cplx mom = c / (4.0 * double(n) * pow_principal(a, double(n - 1)));
  const cplx V = vilenkin_potential(a, n, k_curv, q, Lambda, pc);
  const double c4 = std::pow(c, 4);
  return pre * mom * mom * (kappa * kappa * p * p * c4 + V / c4);
}

// Velocity form; equals the momentum form when p = scale_momentum(a, da).
inline cplx vilenkin_hamiltonian_velocity(cplx a, cplx da, int n, double k_curv, double q,
                                          cplx Lambda, double kappa,
                                          const PhysicalConstants& pc) {
  require(kappa > 0.0, "vilenkin_hamiltonian_velocity: kappa must be positive");
  require(a != cplx{0.0, 0.0}, "vilenkin_hamiltonian_velocity: a must be nonzero");
  require(q != 0.0, "vilenkin_hamiltonian_velocity: q must be nonzero");
  const double c = pc.c;
  const cplx pre = 2.0 * double(n) * pow_principal(a, double(n)) / (kappa * c * c);
  const cplx hub = da / (c * a);
  const cplx curv = k_curv * k_curv / (q * q * a * a);
  return pre * (hub * hub + curv - 2.0 * Lambda / (double(n) * double(n - 1)));
}

// Scale of the bracket terms, for normalising |H| ~ 0 checks.
inline double vilenkin_scale(cplx a, cplx da, int n, double k_curv, double q, cplx Lambda,
                             double kappa, const PhysicalConstants& pc) {
  const double c = pc.c;
  const double pre = std::abs(2.0 * double(n) * pow_principal(a, double(n)) / (kappa * c * c));
  const double hub = std::norm(da / (c * a));
  const double curv = std::abs(k_curv * k_curv / (q * q * a * a));
  const double lam = std::abs(2.0 * Lambda / (double(n) * double(n - 1)));
  return pre * std::max({hub, curv, lam, 1e-30});
}

}  // namespace rayfield
