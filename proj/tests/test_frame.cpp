#include <catch2/catch_amalgamated.hpp>

#include "rayfield/constants.hpp"
#include "rayfield/frame.hpp"

using namespace rayfield;

TEST_CASE("coupling constant at n = 3 is 8 pi G / c^4") {
  PhysicalConstants pc;
  pc.G = 2.3;
  pc.c = 1.7;
  const double c4 = std::pow(pc.c, 4);
  CHECK(kappa_dimension(3, pc) == Catch::Approx(8.0 * pi * pc.G / c4).epsilon(1e-14));
}

TEST_CASE("coupling constant at n = 4 is 3 pi^2 G / c^4") {
  PhysicalConstants pc;
  pc.G = 0.9;
  pc.c = 2.1;
  const double c4 = std::pow(pc.c, 4);
  CHECK(kappa_dimension(4, pc) == Catch::Approx(3.0 * pi * pi * pc.G / c4).epsilon(1e-14));
}

TEST_CASE("coupling constant at n = 5: Gamma(5/2) = 3 sqrt(pi)/4 collapses to 32 pi^2/9") {
  PhysicalConstants pc;  // G = c = 1
  CHECK(kappa_dimension(5, pc) == Catch::Approx(32.0 * pi * pi / 9.0).epsilon(1e-14));
}

TEST_CASE("coupling constant rejects n < 3") {
  PhysicalConstants pc;
  CHECK_THROWS_AS(kappa_dimension(2, pc), std::domain_error);
  CHECK_THROWS_AS(kappa_dimension(1, pc), std::domain_error);
  CHECK_THROWS_AS(kappa_dimension(0, pc), std::domain_error);
}

TEST_CASE("coupling constant decreases with c") {
  PhysicalConstants slow, fast;
  slow.c = 1.0;
  fast.c = 2.0;
  CHECK(kappa_dimension(3, fast) < kappa_dimension(3, slow));
}

TEST_CASE("constants bundle validation") {
  PhysicalConstants pc;
  CHECK_NOTHROW(pc.validate());
  pc.c = 0.0;
  CHECK_THROWS_AS(pc.validate(), std::invalid_argument);
  pc = PhysicalConstants{};
  pc.hbar = -1.0;
  CHECK_THROWS_AS(pc.validate(), std::invalid_argument);
  pc = PhysicalConstants{};
  pc.m = -0.5;
  CHECK_THROWS_AS(pc.validate(), std::invalid_argument);
  pc = PhysicalConstants{};
  pc.G = -2.0;
  CHECK_THROWS_AS(pc.validate(), std::invalid_argument);
}

TEST_CASE("frame angle domain is the half-open interval (-pi/2, pi/2]") {
  RotationFrame fr;
  fr.omega0 = 0.5 * pi;
  CHECK_NOTHROW(fr.validate());
  fr.omega0 = -0.5 * pi;  // open at the lower end: same ray as +pi/2
  CHECK_THROWS_AS(fr.validate(), std::invalid_argument);
  fr.omega0 = 0.5 * pi + 0.1;
  CHECK_THROWS_AS(fr.validate(), std::invalid_argument);
  fr = RotationFrame{};
  fr.n_dim = 0;
  CHECK_THROWS_AS(fr.validate(), std::invalid_argument);
}

TEST_CASE("ray phase per axis") {
  RotationFrame fr;
  fr.omega0 = 0.0;
  fr.omega1 = 0.5 * pi;
  fr.n_dim = 2;
  CHECK(std::abs(ray_phase(fr, 0) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(ray_phase(fr, 1) - iu) < 1e-15);
  CHECK(std::abs(ray_phase(fr, 2) - iu) < 1e-15);
  CHECK_THROWS_AS(ray_phase(fr, 3), std::out_of_range);
  CHECK_THROWS_AS(ray_phase(fr, -1), std::out_of_range);
}

TEST_CASE("mixing matrix at w = pi/2 with real angle is a rotation") {
  const double th = 0.7;
  Mat2 m = frame_transform_matrix(th, 0.5 * pi);
  CHECK(std::abs(m[0][0] - std::cos(th)) < 1e-15);
  CHECK(std::abs(m[0][1] + std::sin(th)) < 1e-15);
  CHECK(std::abs(m[1][0] - std::sin(th)) < 1e-15);
  CHECK(std::abs(m[1][1] - std::cos(th)) < 1e-15);
}

TEST_CASE("mixing matrix at w = 0 with imaginary angle is a symmetric boost") {
  Mat2 m = frame_transform_matrix(cplx{0.0, 0.6}, 0.0);
  CHECK(std::abs(m[0][0] - std::cosh(0.6)) < 1e-15);
  CHECK(std::abs(m[0][1] + std::sinh(0.6)) < 1e-15);
  CHECK(std::abs(m[1][0] + std::sinh(0.6)) < 1e-15);
  CHECK(std::abs(m[1][1] - std::cosh(0.6)) < 1e-15);
}

TEST_CASE("mixing matrix has unit determinant for complex angles") {
  const cplx thetas[] = {{0.3, 0.0}, {1.2, 0.7}, {-2.0, 0.1}, {0.0, -1.5}, {2.9, -0.4}};
  const double ws[] = {0.0, 0.3, 0.25 * pi, 0.5 * pi, -0.4};
  for (cplx th : thetas)
    for (double w : ws)
      CHECK(std::abs(det2(frame_transform_matrix(th, w)) - 1.0) < 1e-13);
}
