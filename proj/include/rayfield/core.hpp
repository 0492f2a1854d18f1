#pragma once
// Shared scalar helpers.  Every multivalued complex function in this
// library (sqrt, log, pow) uses the principal branch, arg in (-pi, pi];
// call sites that must stay on one sheet across an evolution track
// continuity explicitly and raise instead of silently crossing the cut.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rayfield {

using cplx = std::complex<double>;
using std::numbers::pi;

inline constexpr cplx iu{0.0, 1.0};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// e^{i angle}
inline cplx unit_phase(double angle) { return std::polar(1.0, angle); }

inline double rel_err(cplx got, cplx want, double floor = 1e-12) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

// Principal-branch power with a hard failure on the cut: bases that land
// exactly on the negative real axis (or at zero with a non-positive
// exponent) have no single-sheet value worth returning.
inline cplx pow_principal(cplx base, cplx expo) {
  if (base == cplx{0.0, 0.0}) {
    if (expo == cplx{0.0, 0.0}) return {1.0, 0.0};
    require(expo.real() > 0.0, "pow_principal: zero base with non-positive exponent");
    return {0.0, 0.0};
  }
  require(!(base.imag() == 0.0 && base.real() < 0.0),
          "pow_principal: base on the negative-real branch cut");
  return std::pow(base, expo);
}

// True when z is real to within tol relative to its own magnitude.
inline bool nearly_real(cplx z, double tol = 1e-10) {
  return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z));
}

inline double real_checked(cplx z, const std::string& what, double tol = 1e-10) {
  if (!nearly_real(z, tol))
    throw std::domain_error(what + ": expected a real value, got imaginary part " +
                            std::to_string(z.imag()));
  return z.real();
}

}  // namespace rayfield
