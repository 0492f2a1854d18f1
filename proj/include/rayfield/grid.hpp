#pragma once
// Periodic complex field on a uniform box.  Active axes carry
// power-of-two point counts; node j of axis i sits at x = j L_i / N_i.
// Spectral operators use wavenumbers k = 2 pi m / L with
// m in [-N/2, N/2), so the Laplacian is exact on every resolved mode.
// FFTW backs the transforms through a per-shape plan cache; the inverse
// transform is normalised by 1/N.

#include <fftw3.h>

#include <array>
#include <map>
#include <mutex>
#include <vector>

#include "rayfield/core.hpp"

namespace rayfield {

struct GridSpec {
  int n_dim = 1;
  std::array<int, 3> points{64, 1, 1};
  std::array<double, 3> extent{2.0 * pi, 2.0 * pi, 2.0 * pi};

  void validate() const {
    require(n_dim >= 1 && n_dim <= 3, "GridSpec: n_dim must be 1, 2, or 3");
    for (int i = 0; i < 3; ++i) {
      if (i < n_dim) {
        const int N = points[i];
        require(N >= 2 && (N & (N - 1)) == 0, "GridSpec: active axes need power-of-two points");
        require(extent[i] > 0.0, "GridSpec: extent must be positive");
      } else {
        require(points[i] == 1, "GridSpec: inactive axes must have one point");
      }
    }
  }

  size_t size() const { return size_t(points[0]) * points[1] * points[2]; }
  double dx(int axis) const { return extent[axis] / points[axis]; }
  double node(int axis, int index) const { return index * dx(axis); }
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < n_dim; ++i) v *= dx(i);
    return v;
  }
  // wavenumber of FFT bin `index` on `axis`
  double wavenumber(int axis, int index) const {
    const int N = points[axis];
    const int m = (index < N / 2) ? index : index - N;
    return 2.0 * pi * m / extent[axis];
  }
};

using FieldData = std::vector<cplx>;

namespace detail {

struct FftPlans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<cplx> buf;
};

// One cached in-place plan pair per grid shape, guarded by a single lock
// (plan creation and execution share the cache buffer).
inline void fft_run(const GridSpec& g, FieldData& io, int sign) {
  static std::map<std::array<int, 3>, FftPlans> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);

  auto& pl = cache[g.points];
  if (!pl.fwd) {
    pl.buf.resize(g.size());
    int n[3] = {g.points[0], g.points[1], g.points[2]};
    auto* raw = reinterpret_cast<fftw_complex*>(pl.buf.data());
    pl.fwd = fftw_plan_dft(g.n_dim, n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    pl.bwd = fftw_plan_dft(g.n_dim, n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    require(pl.fwd && pl.bwd, "fft: plan creation failed");
  }
  std::copy(io.begin(), io.end(), pl.buf.begin());
  fftw_execute(sign == FFTW_FORWARD ? pl.fwd : pl.bwd);
  std::copy(pl.buf.begin(), pl.buf.end(), io.begin());
}

}  // namespace detail

inline void fft_forward(const GridSpec& g, FieldData& io) {
  require(io.size() == g.size(), "fft_forward: size mismatch");
  detail::fft_run(g, io, FFTW_FORWARD);
}

inline void fft_inverse(const GridSpec& g, FieldData& io) {
  require(io.size() == g.size(), "fft_inverse: size mismatch");
  detail::fft_run(g, io, FFTW_BACKWARD);
  const double inv = 1.0 / double(g.size());
  for (cplx& v : io) v *= inv;
}

// Apply a diagonal Fourier multiplier m(k0, k1, k2).
template <class Mult>
FieldData spectral_apply(const GridSpec& g, const FieldData& f, Mult&& mult) {
  FieldData hat = f;
  fft_forward(g, hat);
  size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0) {
    const double k0 = g.n_dim >= 1 ? g.wavenumber(0, i0) : 0.0;
    for (int i1 = 0; i1 < g.points[1]; ++i1) {
      const double k1 = g.n_dim >= 2 ? g.wavenumber(1, i1) : 0.0;
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        const double k2 = g.n_dim >= 3 ? g.wavenumber(2, i2) : 0.0;
        hat[idx] *= mult(k0, k1, k2);
      }
    }
  }
  fft_inverse(g, hat);
  return hat;
}

inline FieldData laplacian(const GridSpec& g, const FieldData& f) {
  return spectral_apply(g, f, [](double k0, double k1, double k2) {
    return cplx{-(k0 * k0 + k1 * k1 + k2 * k2), 0.0};
  });
}

inline FieldData derivative(const GridSpec& g, const FieldData& f, int axis) {
  require(axis >= 0 && axis < g.n_dim, "derivative: axis out of range");
  return spectral_apply(g, f, [axis](double k0, double k1, double k2) {
    const double k[3] = {k0, k1, k2};
    return iu * k[axis];
  });
}

inline double max_abs(const FieldData& f) {
  double m = 0.0;
  for (const cplx& v : f) m = std::max(m, std::abs(v));
  return m;
}

// sum f dV (trapezoid = exact midpoint sum on a periodic grid)
inline cplx grid_integral(const GridSpec& g, const FieldData& f) {
  cplx s{0.0, 0.0};
  for (const cplx& v : f) s += v;
  return s * g.cell_volume();
}

inline double norm_sq(const GridSpec& g, const FieldData& f) {
  double s = 0.0;
  for (const cplx& v : f) s += std::norm(v);
  return s * g.cell_volume();
}

inline double rel_l2_distance(const GridSpec& g, const FieldData& a, const FieldData& b) {
  require(a.size() == b.size(), "rel_l2_distance: size mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace rayfield
