#pragma once
// Physical constant bundle and the dimension-dependent gravitational
// coupling
//
//   kappa(n) = 2 (n-1) pi^{n/2} G / ((n-2) Gamma(n/2) c^4),   n >= 3,
//
// which reduces to the familiar 8 pi G / c^4 at n = 3 and to
// 3 pi^2 G / c^4 at n = 4.

#include "rayfield/core.hpp"

namespace rayfield {

struct PhysicalConstants {
  double c = 1.0;      // signal speed, > 0
  double m = 1.0;      // field/particle mass, >= 0
  double hbar = 1.0;   // action quantum, > 0
  double G = 1.0;      // gravitational constant, >= 0
  cplx Lambda = 0.0;   // cosmological constant (complex allowed)

  void validate() const {
    require(c > 0.0, "PhysicalConstants: c must be positive");
    require(hbar > 0.0, "PhysicalConstants: hbar must be positive");
    require(m >= 0.0, "PhysicalConstants: m must be non-negative");
    require(G >= 0.0, "PhysicalConstants: G must be non-negative");
  }
};

// Spatial dimension must be at least 3: the coupling has an (n-2) pole
// below that and the sphere-area normalisation loses meaning.
inline double kappa_dimension(int n, const PhysicalConstants& pc) {
  pc.validate();
  if (n < 3) throw std::domain_error("kappa_dimension: requires n >= 3");
  const double c4 = pc.c * pc.c * pc.c * pc.c;
  return 2.0 * (n - 1) * std::pow(pi, 0.5 * n) * pc.G /
         ((n - 2) * std::tgamma(0.5 * n) * c4);
}

}  // namespace rayfield
