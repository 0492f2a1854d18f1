#pragma once
// Power-law nonlinearities.  The evolution equations carry
//   e^{2i(theta + w1)} sum_j lambda_j |phi|^{p_j - 1} phi
// with equation-side coefficients lambda_j; the balance ledgers instead
// use the gradient form
//   V0'(psi) = sum_j lam0_j |psi|^{p_j - 1} psi,
//   V0(psi)  = sum_j lam0_j |psi|^{p_j + 1} / (p_j + 1),
// related by lam0_j = -e^{2i(theta + w1)} lambda_j.  The conservation
// identities assume every lam0_j is real; psi_bar V0'(psi) is then
// (p+1) V0(psi) >= 0 termwise for lam0_j >= 0.

#include <vector>

#include "rayfield/core.hpp"

namespace rayfield {

struct PowerTerm {
  cplx lambda{0.0, 0.0};  // equation-side coefficient
  double p = 3.0;         // power, >= 1
};

struct NonlinearPotential {
  std::vector<PowerTerm> terms;

  bool empty() const { return terms.empty(); }
  void validate() const {
    for (const auto& t : terms) require(t.p >= 1.0, "NonlinearPotential: power must be >= 1");
  }
};

inline cplx gradient_coefficient(const PowerTerm& t, double theta, double omega1) {
  return -unit_phase(2.0 * (theta + omega1)) * t.lambda;
}

inline PowerTerm term_from_gradient(cplx lam0, double p, double theta, double omega1) {
  return PowerTerm{-unit_phase(-2.0 * (theta + omega1)) * lam0, p};
}

inline bool real_gradient_class(const NonlinearPotential& pot, double theta, double omega1,
                                double tol = 1e-10) {
  for (const auto& t : pot.terms) {
    const cplx lam0 = gradient_coefficient(t, theta, omega1);
    if (std::abs(lam0.imag()) > tol * std::max(1.0, std::abs(lam0))) return false;
  }
  return true;
}

inline cplx v0_prime(const NonlinearPotential& pot, double theta, double omega1, cplx psi) {
  cplx s{0.0, 0.0};
  const double mag = std::abs(psi);
  for (const auto& t : pot.terms)
    s += gradient_coefficient(t, theta, omega1) * std::pow(mag, t.p - 1.0) * psi;
  return s;
}

inline cplx v0_value(const NonlinearPotential& pot, double theta, double omega1, cplx psi) {
  cplx s{0.0, 0.0};
  const double mag = std::abs(psi);
  for (const auto& t : pot.terms)
    s += gradient_coefficient(t, theta, omega1) * std::pow(mag, t.p + 1.0) / (t.p + 1.0);
  return s;
}

}  // namespace rayfield
