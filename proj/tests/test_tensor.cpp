#include <catch2/catch_amalgamated.hpp>

#include "rayfield/tensor.hpp"

using namespace rayfield;

namespace {

MetricDescription minkowski(int n, double c) {
  MetricDescription m;
  m.n_dim = n;
  m.frame.n_dim = n;
  m.diag = [n, c](const std::vector<cplx>&) {
    std::vector<cplx> d(n + 1, cplx{1.0, 0.0});
    d[0] = -c * c;
    return d;
  };
  return m;
}

// Flat homogeneous metric diag(-c^2, a^2, ..., a^2) with a(z0) supplied.
MetricDescription homogeneous(int n, double c, std::function<cplx(cplx)> a) {
  MetricDescription m;
  m.n_dim = n;
  m.frame.n_dim = n;
  m.diag = [n, c, a](const std::vector<cplx>& z) {
    std::vector<cplx> d(n + 1, a(z[0]) * a(z[0]));
    d[0] = -c * c;
    return d;
  };
  return m;
}

}  // namespace

TEST_CASE("flat metric has vanishing connection and curvature") {
  auto m = minkowski(3, 1.7);
  const std::vector<cplx> z{0.2, 0.5, -0.3, 0.9};
  for (cplx g : christoffel(m, z)) CHECK(std::abs(g) < 1e-12);
  auto cb = curvature_suite(m, z);
  for (cplx r : cb.riemann) CHECK(std::abs(r) < 1e-12);
  CHECK(std::abs(cb.ricci_scalar) < 1e-12);
  for (cplx g : cb.einstein_mixed) CHECK(std::abs(g) < 1e-12);
}

TEST_CASE("homogeneous metric connection: Gamma^j_{0k} = a'/a, Gamma^0_{jk} = a a'/c^2") {
  const double c = 1.3;
  auto a = [](cplx t) { return 1.0 + 0.3 * t + 0.1 * t * t; };
  auto da = [](cplx t) { return 0.3 + 0.2 * t; };
  auto m = homogeneous(3, c, a);
  const std::vector<cplx> z{0.4, 0.0, 0.0, 0.0};
  auto g = christoffel(m, z, 1e-4, StencilOrder::fourth);
  const int D = 4;
  const cplx av = a(z[0]), dav = da(z[0]);
  for (int j = 1; j < D; ++j)
    for (int k = 1; k < D; ++k) {
      const cplx want = (j == k) ? dav / av : cplx{0.0, 0.0};
      CHECK(std::abs(g[detail::t3(D, j, 0, k)] - want) < 1e-10);
      CHECK(std::abs(g[detail::t3(D, 0, j, k)] - ((j == k) ? av * dav / (c * c) : cplx{})) < 1e-10);
    }
  // time-time and purely spatial symbols vanish for a homogeneous a(z^0)
  CHECK(std::abs(g[detail::t3(D, 0, 0, 0)]) < 1e-12);
  CHECK(std::abs(g[detail::t3(D, 1, 1, 1)]) < 1e-12);
}

TEST_CASE("connection is symmetric in its lower pair") {
  auto a = [](cplx t) { return std::exp(0.4 * t); };
  auto m = homogeneous(2, 1.0, a);
  const std::vector<cplx> z{0.3, 0.7, -0.2};
  auto g = christoffel(m, z);
  const int D = 3;
  for (int i = 0; i < D; ++i)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        CHECK(g[detail::t3(D, i, b, c)] == g[detail::t3(D, i, c, b)]);
}

TEST_CASE("curvature is antisymmetric in the last index pair") {
  auto a = [](cplx t) { return std::exp(0.5 * t); };
  auto m = homogeneous(3, 1.2, a);
  const std::vector<cplx> z{0.25, 0.4, 0.8, -0.6};
  auto cb = curvature_suite(m, z);
  const int D = 4;
  for (int d = 0; d < D; ++d)
    for (int aa = 0; aa < D; ++aa)
      for (int b = 0; b < D; ++b)
        for (int c = 0; c < D; ++c)
          CHECK(std::abs(cb.riemann[detail::t4(D, d, aa, b, c)] +
                         cb.riemann[detail::t4(D, d, aa, c, b)]) < 1e-14);
}

TEST_CASE("exponential scale factor: R = -n(n+1) H^2 / c^2") {
  const double H = 0.7, c = 1.3;
  auto m = homogeneous(3, c, [H](cplx t) { return std::exp(H * t); });
  const std::vector<cplx> z{0.3, 0.2, -0.5, 0.4};
  auto cb = curvature_suite(m, z, 1e-2, StencilOrder::fourth);
  const double want = -12.0 * H * H / (c * c);
  CHECK(rel_err(cb.ricci_scalar, want) < 1e-7);
  // mixed Einstein tensor is (n(n-1)/2) H^2/c^2 times the identity
  const double gww = 3.0 * H * H / (c * c);
  const int D = 4;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      const cplx want_ab = (a == b) ? cplx{gww, 0.0} : cplx{0.0, 0.0};
      CHECK(std::abs(cb.einstein_mixed[detail::t2(D, a, b)] - want_ab) < 1e-6 * gww);
    }
}

TEST_CASE("general homogeneous Einstein components match hand forms") {
  // G^0_0 = n(n-1)/2 (a'/a)^2 / c^2,  G^j_k = (n-1)[a''/a + (n-2)/2 (a'/a)^2]/c^2
  const double c = 1.1;
  auto a = [](cplx t) { return 1.0 + 0.3 * t + 0.1 * t * t; };
  auto m = homogeneous(3, c, a);
  const cplx t0{0.4, 0.0};
  const cplx av = a(t0), dav = 0.3 + 0.2 * t0, ddav = 0.2;
  const std::vector<cplx> z{t0, 0.1, 0.2, 0.3};
  auto cb = curvature_suite(m, z, 1e-3, StencilOrder::fourth);
  const cplx A = dav / av;
  const cplx g00 = 3.0 * A * A / (c * c);
  const cplx gjk = 2.0 * (ddav / av + 0.5 * A * A) / (c * c);
  CHECK(rel_err(cb.einstein_mixed[detail::t2(4, 0, 0)], g00) < 1e-8);
  for (int j = 1; j < 4; ++j) CHECK(rel_err(cb.einstein_mixed[detail::t2(4, j, j)], gjk) < 1e-8);
  CHECK(std::abs(cb.einstein_mixed[detail::t2(4, 0, 1)]) < 1e-10);
}

TEST_CASE("rotated time axis differentiates along the imaginary direction") {
  const double H = 0.8;
  MetricDescription m = homogeneous(2, 1.0, [H](cplx t) { return std::exp(H * t); });
  m.frame.omega0 = 0.5 * pi;
  const std::vector<cplx> z{cplx{0.0, 0.3}, 0.5, -0.2};  // z^0 = i * 0.3 on the rotated ray
  auto g = christoffel(m, z, 1e-4, StencilOrder::fourth);
  CHECK(std::abs(g[detail::t3(3, 1, 0, 1)] - cplx{H, 0.0}) < 1e-9);
}

TEST_CASE("metric compatibility residual shrinks at second order") {
  auto a = [](cplx t) { return std::exp(0.6 * t); };
  auto m = homogeneous(2, 1.0, a);
  const std::vector<cplx> z{0.2, 0.4, 0.1};
  const double r1 = metric_compat_residual(m, z, 2e-2);
  const double r2 = metric_compat_residual(m, z, 1e-2);
  CHECK(r1 < 1e-3);
  CHECK(r2 < 0.35 * r1);  // O(h^2): halving the step quarters the residual
}

TEST_CASE("isotropic closed forms match the stencil pipeline") {
  const int n = 3;
  const double c = 1.2;
  ScalarProfile h = [](cplx t) { return RayScalar{0.6 * t, 0.6, 0.0}; };

  SECTION("curved spatial profile from the closed solution family") {
    const double q = 1.3, k2 = 0.8;
    ScalarProfile f = [q, k2](cplx r) {
      const cplx den = 1.0 + 0.25 * k2 * r * r;
      return RayScalar{2.0 * std::log(q) - 2.0 * std::log(den), -k2 * r / den,
                       -k2 * (1.0 - 0.25 * k2 * r * r) / (den * den)};
    };
    RotationFrame fr;
    fr.n_dim = n;
    auto rep = verify_isotropic_forms(n, c, h, f, fr, {0.3, 0.5, 0.7, 0.4}, 1e-3,
                                      StencilOrder::fourth);
    CHECK(rep.max_rel_residual < 1e-7);
  }

  SECTION("generic gaussian-like profile keeps the traceless block") {
    ScalarProfile f = [](cplx r) { return RayScalar{0.3 * r * r, 0.6 * r, 0.6}; };
    RotationFrame fr;
    fr.n_dim = n;
    auto rep = verify_isotropic_forms(n, c, h, f, fr, {0.2, 0.6, -0.3, 0.5}, 1e-3,
                                      StencilOrder::fourth);
    CHECK(rep.max_rel_residual < 1e-7);
    // the traceless z^j z^k block is genuinely nonzero here
    cplx offdiag = rep.closed[detail::t2(4, 1, 2)];
    CHECK(std::abs(offdiag) > 1e-3);
  }
}

TEST_CASE("closed spatial profile identity residual is pure roundoff") {
  CHECK(std::abs(f_residual(1.3, 0.8, 0.7)) < 1e-14);
  CHECK(std::abs(f_residual(0.9, -0.5, 1.4)) < 1e-14);
  CHECK(std::abs(f_residual(2.0, cplx{0.3, 0.1}, cplx{0.8, -0.2})) < 1e-14);
}

TEST_CASE("closed spatial profile rejects singular inputs") {
  CHECK_THROWS_AS(f_residual(1.0, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(f_residual(0.0, 0.5, 1.0), std::invalid_argument);
  // pole: 1 + k2 r^2 / 4 = 0 at k2 = -4, r = 1
  CHECK_THROWS_AS(f_residual(1.0, -4.0, 1.0), std::invalid_argument);
}

TEST_CASE("volume element uses the principal root of -det") {
  auto m = minkowski(3, 2.0);
  auto v = metric_volume(m, {0.0, 0.0, 0.0, 0.0});
  CHECK(rel_err(v.det, -4.0) < 1e-15);
  CHECK(rel_err(v.root, 2.0) < 1e-15);

  MetricDescription mc;
  mc.n_dim = 1;
  mc.frame.n_dim = 1;
  mc.diag = [](const std::vector<cplx>&) { return std::vector<cplx>{cplx{-1.0, 0.0}, iu}; };
  auto vc = metric_volume(mc, {0.0, 0.0});
  CHECK(rel_err(vc.det, -iu) < 1e-15);          // det = -i
  CHECK(rel_err(vc.root, std::polar(1.0, pi / 4)) < 1e-15);  // sqrt(i), principal
}

TEST_CASE("degenerate metric entries are rejected") {
  MetricDescription m;
  m.n_dim = 1;
  m.frame.n_dim = 1;
  m.diag = [](const std::vector<cplx>& z) { return std::vector<cplx>{z[0], cplx{1.0, 0.0}}; };
  CHECK_THROWS_AS(christoffel(m, {0.0, 0.5}), std::invalid_argument);
}
