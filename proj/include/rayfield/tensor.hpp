#pragma once
// Curvature toolkit for diagonal metrics sampled along axis rays.
// A point has coordinates z^a = e^{i w^a} x^a with x^a real, so a
// directional derivative along axis a is
//
//   d/dz^a f = e^{-i w^a} * (d/ds) f(z + s e^{i w^a} e_a) |_{s=0},
//
// approximated by central differences on the real parameter s
// (2nd order by default, 4th order switchable).  Steps are relative:
// the stencil for axis a uses step * max(1, |z^a|).
//
// Conventions, fixed across the library:
//   Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{bd} - d_d g_{bc})
//   R^d_{abc}    = d_b Gamma^d_{ac} - d_c Gamma^d_{ab}
//                  + Gamma^d_{eb} Gamma^e_{ac} - Gamma^d_{ec} Gamma^e_{ab}
//   Ric_{ab}     = R^c_{abc}              (contraction on the LAST slot)
//   R            = g^{ab} Ric_{ab},  G_{ab} = Ric_{ab} - g_{ab} R / 2
// The last-slot Ricci contraction makes constant-curvature examples come
// out negative: an exponential scale factor e^{H z^0} in n spatial
// dimensions has R = -n(n+1) H^2 / c^2.

#include <functional>
#include <vector>

#include "rayfield/frame.hpp"

namespace rayfield {

enum class StencilOrder { second, fourth };

// Diagonal metric g_{aa}(z), a = 0..n_dim, evaluated at complex points.
// The frame supplies the ray direction of each axis for differentiation;
// frame.n_dim must match n_dim.
struct MetricDescription {
  int n_dim = 3;
  RotationFrame frame;
  std::function<std::vector<cplx>(const std::vector<cplx>&)> diag;

  int dim() const { return n_dim + 1; }
  void validate() const {
    require(n_dim >= 1, "MetricDescription: n_dim must be at least 1");
    require(frame.n_dim == n_dim, "MetricDescription: frame.n_dim mismatch");
    frame.validate();
    require(static_cast<bool>(diag), "MetricDescription: missing diag evaluator");
  }
};

namespace detail {

inline int t2(int D, int a, int b) { return a * D + b; }
inline int t3(int D, int a, int b, int c) { return (a * D + b) * D + c; }
inline int t4(int D, int a, int b, int c, int d) { return ((a * D + b) * D + c) * D + d; }

// Central-difference derivative of a vector-valued function along the
// ray of one axis.  fn maps a point to a flat vector of fixed length.
template <class F>
std::vector<cplx> ray_derivative(F&& fn, std::vector<cplx> z, int axis, cplx dir,
                                 double step, StencilOrder order) {
  const double h = step * std::max(1.0, std::abs(z[axis]));
  const cplx base = z[axis];
  auto at = [&](double s) {
    z[axis] = base + s * h * dir;
    return fn(z);
  };
  std::vector<cplx> out;
  if (order == StencilOrder::second) {
    const auto fp = at(1.0), fm = at(-1.0);
    out.resize(fp.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (fp[i] - fm[i]) / (2.0 * h * dir);
  } else {
    const auto f2p = at(2.0), fp = at(1.0), fm = at(-1.0), f2m = at(-2.0);
    out.resize(fp.size());
    for (size_t i = 0; i < out.size(); ++i)
      out[i] = (-f2p[i] + 8.0 * fp[i] - 8.0 * fm[i] + f2m[i]) / (12.0 * h * dir);
  }
  return out;
}

}  // namespace detail

// Gamma^a_{bc}, flat layout (a*D + b)*D + c, symmetric in (b, c).
inline std::vector<cplx> christoffel(const MetricDescription& metric,
                                     const std::vector<cplx>& z, double step = 1e-4,
                                     StencilOrder order = StencilOrder::second) {
  metric.validate();
  const int D = metric.dim();
  require(static_cast<int>(z.size()) == D, "christoffel: point has wrong dimension");

  const std::vector<cplx> g = metric.diag(z);
  require(static_cast<int>(g.size()) == D, "christoffel: diag evaluator wrong size");
  for (const cplx& ga : g) require(ga != cplx{0.0, 0.0}, "christoffel: degenerate metric entry");

  std::vector<std::vector<cplx>> dg(D);  // dg[b][a] = d_b g_{aa}
  for (int b = 0; b < D; ++b)
    dg[b] = detail::ray_derivative(metric.diag, z, b, ray_phase(metric.frame, b), step, order);

  std::vector<cplx> gamma(D * D * D, cplx{0.0, 0.0});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = b; c < D; ++c) {
        cplx s{0.0, 0.0};
        if (a == c) s += dg[b][a];
        if (a == b) s += dg[c][a];
        if (b == c) s -= dg[a][b];
        const cplx val = 0.5 * s / g[a];
        gamma[detail::t3(D, a, b, c)] = val;
        gamma[detail::t3(D, a, c, b)] = val;
      }
  return gamma;
}

struct CurvatureBundle {
  int dim = 0;
  std::vector<cplx> riemann;         // R^d_{abc}, layout t4(d, a, b, c)
  std::vector<cplx> ricci;           // Ric_{ab}, layout t2(a, b)
  cplx ricci_scalar{0.0, 0.0};
  std::vector<cplx> einstein_mixed;  // G^a_b = g^{aa} Ric_{ab} - delta^a_b R/2
};

inline CurvatureBundle curvature_suite(const MetricDescription& metric,
                                       const std::vector<cplx>& z, double step = 1e-4,
                                       StencilOrder order = StencilOrder::second) {
  metric.validate();
  const int D = metric.dim();
  using detail::t2;
  using detail::t3;
  using detail::t4;

  const std::vector<cplx> g = metric.diag(z);
  const std::vector<cplx> gamma = christoffel(metric, z, step, order);
  auto gamma_at = [&](const std::vector<cplx>& p) { return christoffel(metric, p, step, order); };

  std::vector<std::vector<cplx>> dgamma(D);  // dgamma[b] = d_b Gamma
  for (int b = 0; b < D; ++b)
    dgamma[b] = detail::ray_derivative(gamma_at, z, b, ray_phase(metric.frame, b), step, order);

  CurvatureBundle out;
  out.dim = D;
  out.riemann.assign(D * D * D * D, cplx{0.0, 0.0});
  for (int d = 0; d < D; ++d)
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        for (int c = 0; c < D; ++c) {
          cplx s = dgamma[b][t3(D, d, a, c)] - dgamma[c][t3(D, d, a, b)];
          for (int e = 0; e < D; ++e)
            s += gamma[t3(D, d, e, b)] * gamma[t3(D, e, a, c)] -
                 gamma[t3(D, d, e, c)] * gamma[t3(D, e, a, b)];
          out.riemann[t4(D, d, a, b, c)] = s;
        }

  out.ricci.assign(D * D, cplx{0.0, 0.0});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      cplx s{0.0, 0.0};
      for (int c = 0; c < D; ++c) s += out.riemann[t4(D, c, a, b, c)];
      out.ricci[t2(D, a, b)] = s;
    }

  for (int a = 0; a < D; ++a) out.ricci_scalar += out.ricci[t2(D, a, a)] / g[a];

  out.einstein_mixed.assign(D * D, cplx{0.0, 0.0});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      cplx s = out.ricci[t2(D, a, b)] / g[a];
      if (a == b) s -= 0.5 * out.ricci_scalar;
      out.einstein_mixed[t2(D, a, b)] = s;
    }
  return out;
}

// Max |nabla_a g_bc| with the explicit d_a g_bc term re-estimated at half
// step.  Christoffel symbols are built from the full-step derivatives, so
// the cancellation is not algebraic and the residual measures the actual
// stencil truncation, shrinking as O(h^2) (or O(h^4)) on smooth metrics.
inline double metric_compat_residual(const MetricDescription& metric,
                                     const std::vector<cplx>& z, double step = 1e-4,
                                     StencilOrder order = StencilOrder::second) {
  metric.validate();
  const int D = metric.dim();
  using detail::t3;

  const std::vector<cplx> g = metric.diag(z);
  const std::vector<cplx> gamma = christoffel(metric, z, step, order);
  std::vector<std::vector<cplx>> dg(D);
  for (int b = 0; b < D; ++b)
    dg[b] = detail::ray_derivative(metric.diag, z, b, ray_phase(metric.frame, b), 0.5 * step, order);

  double worst = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        // nabla_a g_bc, diagonal metric: only the d = b and d = c terms act.
        cplx r = (b == c) ? dg[a][b] : cplx{0.0, 0.0};
        r -= gamma[t3(D, b, a, c)] * g[b];
        r -= gamma[t3(D, c, a, b)] * g[c];
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

// Scalar profile with its first two derivatives supplied in closed form.
struct RayScalar {
  cplx value{0.0, 0.0};
  cplx d1{0.0, 0.0};
  cplx d2{0.0, 0.0};
};
using ScalarProfile = std::function<RayScalar(cplx)>;

struct IsotropicReport {
  int dim = 0;
  std::vector<cplx> numeric;  // mixed Einstein from the stencil pipeline
  std::vector<cplx> closed;   // mixed Einstein from the closed forms
  double max_rel_residual = 0.0;
};

// Isotropic line element -c^2 (dz^0)^2 + e^{h(z^0)} e^{f(r)} sum (dz^j)^2,
// r^2 = sum (z^j)^2.  The closed mixed components are
//   G^0_0 = (n-1)/(2c^2) { n/4 h'^2
//           - c^2 e^{-h-f} (f'' + (n-1) f'/r + (n-2)/4 f'^2) }
//   G^j_k = delta^j_k [ (n-1)/(2c^2) (h'' + n/4 h'^2)
//           - (n-2)/2 e^{-h-f} (f'' + (n-2) f'/r + (n-3)/4 f'^2) ]
//           + (n-2)/2 e^{-h-f} (f'' - f'/r - f'^2/2) z^j z^k / r^2
//   G^0_j = G^j_0 = 0
// and are compared against the finite-difference curvature pipeline.
inline IsotropicReport verify_isotropic_forms(int n, double c, const ScalarProfile& h_of_t,
                                              const ScalarProfile& f_of_r,
                                              const RotationFrame& frame,
                                              const std::vector<cplx>& z, double step = 1e-3,
                                              StencilOrder order = StencilOrder::fourth) {
  require(n >= 2, "verify_isotropic_forms: needs n >= 2");
  require(c > 0.0, "verify_isotropic_forms: c must be positive");
  require(static_cast<int>(z.size()) == n + 1, "verify_isotropic_forms: bad point");

  MetricDescription metric;
  metric.n_dim = n;
  metric.frame = frame;
  metric.diag = [n, c, &h_of_t, &f_of_r](const std::vector<cplx>& p) {
    cplx r2{0.0, 0.0};
    for (int j = 1; j <= n; ++j) r2 += p[j] * p[j];
    const cplx spatial = std::exp(h_of_t(p[0]).value + f_of_r(std::sqrt(r2)).value);
    std::vector<cplx> d(n + 1, spatial);
    d[0] = -c * c;
    return d;
  };

  IsotropicReport rep;
  rep.dim = n + 1;
  rep.numeric = curvature_suite(metric, z, step, order).einstein_mixed;

  cplx r2{0.0, 0.0};
  for (int j = 1; j <= n; ++j) r2 += z[j] * z[j];
  const cplx r = std::sqrt(r2);
  require(r != cplx{0.0, 0.0}, "verify_isotropic_forms: r = 0 is a coordinate singularity");

  const RayScalar hs = h_of_t(z[0]);
  const RayScalar fs = f_of_r(r);
  const cplx emhf = std::exp(-hs.value - fs.value);
  const double c2 = c * c;

  const cplx radial0 = fs.d2 + double(n - 1) * fs.d1 / r + 0.25 * double(n - 2) * fs.d1 * fs.d1;
  const cplx radial1 = fs.d2 + double(n - 2) * fs.d1 / r + 0.25 * double(n - 3) * fs.d1 * fs.d1;
  const cplx traceless = fs.d2 - fs.d1 / r - 0.5 * fs.d1 * fs.d1;

  const int D = n + 1;
  rep.closed.assign(D * D, cplx{0.0, 0.0});
  rep.closed[0] = 0.5 * double(n - 1) / c2 *
                  (0.25 * double(n) * hs.d1 * hs.d1 - c2 * emhf * radial0);
  const cplx diag_part = 0.5 * double(n - 1) / c2 * (hs.d2 + 0.25 * double(n) * hs.d1 * hs.d1) -
                         0.5 * double(n - 2) * emhf * radial1;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      cplx v = 0.5 * double(n - 2) * emhf * traceless * z[j] * z[k] / r2;
      if (j == k) v += diag_part;
      rep.closed[detail::t2(D, j, k)] = v;
    }

  double scale = 0.0;
  for (const cplx& v : rep.closed) scale = std::max(scale, std::abs(v));
  const double denom = std::max(scale, 1e-12);
  for (int i = 0; i < D * D; ++i)
    rep.max_rel_residual =
        std::max(rep.max_rel_residual, std::abs(rep.numeric[i] - rep.closed[i]) / denom);
  return rep;
}

// Residual of the defining identity f'' - f'/r - f'^2/2 = 0 for the
// closed spatial profile e^f = q^2 (1 + k2 r^2/4)^{-2}; analytically zero,
// returned value is pure roundoff.
inline cplx f_residual(cplx q, cplx k2, cplx r) {
  require(q != cplx{0.0, 0.0}, "f_residual: q must be nonzero");
  require(r != cplx{0.0, 0.0}, "f_residual: r = 0 is a coordinate singularity");
  const cplx den = 1.0 + 0.25 * k2 * r * r;
  require(std::abs(den) > 1e-14, "f_residual: 1 + k2 r^2/4 = 0 pole");
  const cplx fp = -k2 * r / den;
  const cplx fpp = -k2 * (1.0 - 0.25 * k2 * r * r) / (den * den);
  return fpp - fp / r - 0.5 * fp * fp;
}

struct VolumeElement {
  cplx det{0.0, 0.0};
  cplx root{0.0, 0.0};  // principal sqrt(-det), arg in (-pi, pi]
};

inline VolumeElement metric_volume(const MetricDescription& metric, const std::vector<cplx>& z) {
  metric.validate();
  const std::vector<cplx> g = metric.diag(z);
  VolumeElement v;
  v.det = cplx{1.0, 0.0};
  for (const cplx& ga : g) v.det *= ga;
  v.root = std::sqrt(-v.det);
  return v;
}

}  // namespace rayfield
