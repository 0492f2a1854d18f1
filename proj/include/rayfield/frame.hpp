#pragma once
// Axis rotation frames.  Each coordinate axis carries an angle w in
// (-pi/2, pi/2]; the complex coordinate along that axis is
// z = e^{i w} x with x real, so derivatives pull back as
// d/dz = e^{-i w} d/dx.  w = pi/2 runs the axis up the imaginary
// direction (the classic t -> i t substitution); intermediate angles
// interpolate between oscillatory and diffusive behaviour.
//
// The two-axis mixing matrix
//
//   [ cos(theta)              i e^{+i w} sin(theta) ]
//   [ i e^{-i w} sin(theta)   cos(theta)            ]
//
// has unit determinant for every complex theta and real w.  At w = pi/2
// with real theta it is a Euclidean rotation; at w = 0 with imaginary
// theta it is a symmetric boost.

#include <array>

#include "rayfield/core.hpp"

namespace rayfield {

// One time axis (angle omega0) plus n_dim spatial axes sharing omega1.
struct RotationFrame {
  double omega0 = 0.0;
  double omega1 = 0.0;
  int n_dim = 1;

  void validate() const {
    require(n_dim >= 1, "RotationFrame: n_dim must be at least 1");
    auto in_range = [](double w) { return w > -0.5 * pi && w <= 0.5 * pi; };
    require(in_range(omega0), "RotationFrame: omega0 outside (-pi/2, pi/2]");
    require(in_range(omega1), "RotationFrame: omega1 outside (-pi/2, pi/2]");
  }
};

// e^{i w^axis}: axis 0 is time, axes 1..n_dim share omega1.
inline cplx ray_phase(const RotationFrame& fr, int axis) {
  fr.validate();
  if (axis == 0) return unit_phase(fr.omega0);
  if (axis >= 1 && axis <= fr.n_dim) return unit_phase(fr.omega1);
  throw std::out_of_range("ray_phase: axis outside [0, n_dim]");
}

using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline cplx det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline Mat2 frame_transform_matrix(cplx theta, double w) {
  const cplx ct = std::cos(theta);
  const cplx st = std::sin(theta);
  return Mat2{{{ct, iu * unit_phase(w) * st}, {iu * unit_phase(-w) * st, ct}}};
}

}  // namespace rayfield
