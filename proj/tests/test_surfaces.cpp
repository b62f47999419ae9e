#include <catch2/catch_amalgamated.hpp>

#include "hypcs/scenario.hpp"
#include "hypcs/surfaces.hpp"

using namespace hypcs;

namespace {
TubeParams small_tube() {
  TubeParams p;
  p.n0 = 32;
  p.n1 = 32;
  return p;
}
}  // namespace

TEST_CASE("fundamental forms of the Fermi tube") {
  const TubeParams p = small_tube();
  const auto geom = fundamental_forms(tube_surface(p));
  const auto chart = tube_collar(p);

  const double th = std::tanh(1.0), cth = 1.0 / th;
  for (int i : {0, 7, 19})
    for (int j : {0, 11, 30}) {
      const Vec2 ev = real_eigenvalues_2x2(geom.B_at(i, j));
      CHECK(ev[0] == Catch::Approx(-cth).margin(1e-6));
      CHECK(ev[1] == Catch::Approx(-th).margin(1e-6));
      CHECK((geom.I_at(i, j) - chart.I0(0, 0)).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((geom.B_at(i, j) - chart.B0(0, 0)).cwiseAbs().maxCoeff() < 1e-6);
      CHECK(std::abs(geom.Kint(i, j)) < 1e-7);  // flat torus
    }
  CHECK(gauss_equation_residual(geom) < 1e-6);
  CHECK(self_adjointness_residual(geom) < 1e-8);
  CHECK(check_convexity(geom));
}

TEST_CASE("orientation reversal flips convexity") {
  TubeParams p = small_tube();
  SurfaceChart chart = tube_surface(p);
  chart.normal_sign = -chart.normal_sign;
  const auto geom = fundamental_forms(chart);
  const Vec2 ev = real_eigenvalues_2x2(geom.B_at(3, 5));
  CHECK(ev[1] == Catch::Approx(1.0 / std::tanh(1.0)).margin(1e-6));
  CHECK_FALSE(check_convexity(geom));
}

TEST_CASE("totally geodesic plane has vanishing shape operator") {
  FuchsianParams p;
  p.n0 = 48;
  p.n1 = 16;
  const auto collar = fuchsian_collar(p);
  SurfaceChart chart;
  chart.spec = collar.spec;
  auto embed = collar.embed;
  chart.fn = [embed](double a, double b) { return embed(a, b, 0.0); };
  chart.normal_sign = collar.orient;
  const auto geom = fundamental_forms(chart);
  for (int i : {5, 20, 40})
    for (int j : {0, 9}) CHECK(geom.B_at(i, j).cwiseAbs().maxCoeff() < 1e-7);

  // hyperbolic plane: K = -1, Gauss equation det(0) - 1 = K (interior nodes)
  for (int i = 4; i < p.n0 - 4; ++i)
    for (int j = 0; j < p.n1; ++j) {
      CHECK(geom.Kint(i, j) == Catch::Approx(-1.0).margin(1e-6));
      CHECK(std::abs(geom.B_at(i, j).determinant() - 1.0 - geom.Kint(i, j)) < 1e-6);
    }
}

TEST_CASE("surface quadrature") {
  const TubeParams p = small_tube();
  const auto geom = fundamental_forms(tube_surface(p));
  const int n0 = geom.spec.a0.n, n1 = geom.spec.a1.n;

  SECTION("area of the tube u0=1, L=2") {
    const double area = integrate_surface(GridD::Ones(n0, n1), geom);
    const double expect = 2.0 * pi * p.L * std::cosh(1.0) * std::sinh(1.0);
    CHECK(area == Catch::Approx(expect).epsilon(1e-10));
    CHECK(area == Catch::Approx(22.7882).margin(5e-5));
  }
  SECTION("zero density") {
    CHECK(integrate_surface(GridD::Zero(n0, n1), geom) == 0.0);
  }
  SECTION("mean curvature integral") {
    GridD H(n0, n1);
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) H(i, j) = geom.B_at(i, j).trace();
    const double expect = -(std::tanh(1.0) + 1.0 / std::tanh(1.0)) * 2.0 * pi * p.L *
                          std::cosh(1.0) * std::sinh(1.0);
    CHECK(integrate_surface(H, geom) == Catch::Approx(expect).epsilon(1e-8));
    CHECK(integrate_surface(H, geom) == Catch::Approx(-47.2776).margin(5e-4));
  }
  SECTION("grid mismatch is rejected") {
    CHECK_THROWS_AS(integrate_surface(GridD::Ones(n0 + 1, n1), geom), std::invalid_argument);
  }
  SECTION("doubling the grid leaves smooth integrals unchanged") {
    TubeParams fine = p;
    fine.n0 = 2 * p.n0;
    fine.n1 = 2 * p.n1;
    const auto geom2 = fundamental_forms(tube_surface(fine));
    const double a1 = integrate_surface(GridD::Ones(n0, n1), geom);
    const double a2 = integrate_surface(GridD::Ones(2 * n0, 2 * n1), geom2);
    CHECK(std::abs(a1 - a2) < 1e-8);
  }
}

TEST_CASE("degenerate charts are rejected") {
  SurfaceChart chart;
  chart.spec.a0 = Axis{8, true, 0.0, 1.0};
  chart.spec.a1 = Axis{8, true, 0.0, 1.0};
  chart.fn = [](double a, double b) {
    AmbientJet jet;
    jet.p = HyperbolicPoint{a, b, 1.0};
    jet.t0 = Vec3(1, 0, 0);
    jet.t1 = Vec3(1, 0, 0);  // rank 1
    return jet;
  };
  CHECK_THROWS_AS(fundamental_forms(chart), std::domain_error);
}
