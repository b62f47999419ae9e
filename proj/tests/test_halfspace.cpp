#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "hypcs/halfspace.hpp"
#include "test_util.hpp"

using namespace hypcs;

TEST_CASE("half-space metric") {
  CHECK((metric_at(base_point()) - Mat3::Identity()).norm() == 0.0);
  CHECK((metric_at({0, 0, 2}) - 0.25 * Mat3::Identity()).norm() < 1e-15);
  CHECK(norm({5, -3, 0.5}, Vec3(0, 0, 1)) == Catch::Approx(2.0));
  CHECK_THROWS_AS(metric_at({0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(metric_at({0, 0, -1}), std::domain_error);
}

TEST_CASE("moebius action on points") {
  SECTION("identity") {
    std::mt19937 rng(7);
    for (int k = 0; k < 5; ++k) {
      const auto p = testutil::random_point(rng);
      const auto q = apply_isometry(IsometryMatrix(), p);
      CHECK(distance(p, q) < 1e-14);
    }
  }
  SECTION("parabolic translation") {
    IsometryMatrix g;
    g.m << 1, 1, 0, 1;
    const auto q = apply_isometry(g, base_point());
    CHECK(q.x1 == Catch::Approx(1.0));
    CHECK(q.x2 == Catch::Approx(0.0).margin(1e-15));
    CHECK(q.t == Catch::Approx(1.0));
  }
  SECTION("dilation z -> 2z") {
    IsometryMatrix g;
    g.m << std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    const auto q = apply_isometry(g, base_point());
    CHECK(std::abs(q.x1) + std::abs(q.x2) < 1e-15);
    CHECK(q.t == Catch::Approx(2.0));
  }
  SECTION("degenerate matrix rejected") {
    IsometryMatrix g;
    g.m << 1, 0, 0, 0;
    CHECK_THROWS_AS(apply_isometry(g, base_point()), std::domain_error);
  }
}

TEST_CASE("isometries preserve distances and the metric") {
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto g = testutil::random_isometry(rng);
    const auto p = testutil::random_point(rng);
    const auto q = testutil::random_point(rng);
    CHECK(std::abs(distance(apply_isometry(g, p), apply_isometry(g, q)) - distance(p, q)) <
          1e-9);

    const auto [gp, diff] = apply_isometry_with_differential(g, p);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Vec3 v(u(rng), u(rng), u(rng));
    CHECK(std::abs(norm(gp, diff * v) - norm(p, v)) < 1e-10);
  }
}

TEST_CASE("frame-to-isometry identification") {
  SECTION("standard frame maps to the identity") {
    const auto g = frame_to_isometry(standard_frame_at(base_point()));
    CHECK((g.m - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("scaled frame at (0,0,2) gives the dilation") {
    const auto g = frame_to_isometry(standard_frame_at({0, 0, 2}));
    Mat2c expect;
    expect << std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    CHECK((g.m - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("rotation about the vertical is elliptic diag(e^{ia/2}, e^{-ia/2})") {
    const double alpha = 0.73;
    OrthonormalFrame3 f = standard_frame_at(base_point());
    f.components = f.components * axis_rotation(2, alpha);
    const auto g = frame_to_isometry(f);
    Mat2c expect;
    expect << std::exp(cplx(0, alpha / 2)), 0, 0, std::exp(cplx(0, -alpha / 2));
    CHECK((g.m - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("recovers a random isometry from the pushed standard frame, up to sign") {
    std::mt19937 rng(3);
    for (int k = 0; k < 20; ++k) {
      auto g = testutil::random_isometry(rng);
      const auto [gp, diff] = apply_isometry_with_differential(g, base_point());
      OrthonormalFrame3 f;
      f.base = gp;
      f.components = diff;  // pushed standard frame (components of identity columns)
      const auto h = frame_to_isometry(f);
      const double same = (h.m - g.m).cwiseAbs().maxCoeff();
      const double flip = (h.m + g.m).cwiseAbs().maxCoeff();
      CHECK(std::min(same, flip) < 1e-9);
    }
  }
  SECTION("non-orthonormal input rejected") {
    OrthonormalFrame3 f = standard_frame_at(base_point());
    f.components(0, 0) = 2.0;
    CHECK_THROWS_AS(frame_to_isometry(f), std::domain_error);
  }
}

TEST_CASE("geodesic normal flow") {
  SECTION("vertical geodesic") {
    const auto [q, diff] = normal_flow(base_point(), Vec3(0, 0, 1), 1.3);
    CHECK(q.t == Catch::Approx(std::exp(1.3)));
    CHECK(std::abs(q.x1) + std::abs(q.x2) < 1e-12);
  }
  SECTION("zero time is the identity") {
    const auto p = HyperbolicPoint{0.3, -0.2, 1.7};
    const auto [q, diff] = normal_flow(p, Vec3(0, 0, p.t), 0.0);
    CHECK(distance(p, q) < 1e-12);
    CHECK((diff - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("horizontal direction runs along the unit semicircle") {
    const double r = 0.9;
    const auto [q, diff] = normal_flow(base_point(), Vec3(1, 0, 0), r);
    CHECK(q.x1 == Catch::Approx(std::tanh(r)).epsilon(1e-10));
    CHECK(q.t == Catch::Approx(1.0 / std::cosh(r)).epsilon(1e-10));
  }
  SECTION("flowing r then -r returns the start") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
      const auto p = testutil::random_point(rng);
      Vec3 n(u(rng), u(rng), u(rng));
      n /= norm(p, n);
      const auto [q, d1] = normal_flow(p, n, 0.8);
      // transported direction at q
      const Vec3 nq = d1 * n;
      const auto [back, d2] = normal_flow(q, nq, -0.8);
      CHECK(distance(p, back) < 1e-9);
    }
  }
}

TEST_CASE("fermi embedding") {
  FermiChart chart{2.0, 0.0};
  SECTION("radius is the distance from the axis point") {
    for (double u0 : {0.4, 1.0, 2.3}) {
      const auto p = fermi_embed(chart, u0, 0.0, 0.0);
      CHECK(distance(p, base_point()) == Catch::Approx(u0).epsilon(1e-10));
    }
  }
  SECTION("nonpositive radius rejected") {
    CHECK_THROWS_AS(fermi_embed(chart, 0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(fermi_embed(chart, -1.0, 0.0, 0.0), std::domain_error);
  }
  SECTION("pullback metric is du^2 + cosh^2 u ds^2 + sinh^2 u dtheta^2") {
    const double u0 = 1.0, s0 = 0.35, th0 = 1.1;
    const double h = 1e-5;
    auto emb = [&](double u, double s, double th) {
      return fermi_embed(chart, u, s, th).coords();
    };
    const Vec3 Tu = (emb(u0 + h, s0, th0) - emb(u0 - h, s0, th0)) / (2 * h);
    const Vec3 Ts = (emb(u0, s0 + h, th0) - emb(u0, s0 - h, th0)) / (2 * h);
    const Vec3 Tt = (emb(u0, s0, th0 + h) - emb(u0, s0, th0 - h)) / (2 * h);
    const auto p = fermi_embed(chart, u0, s0, th0);
    CHECK(inner(p, Tu, Tu) == Catch::Approx(1.0).margin(1e-6));
    CHECK(inner(p, Ts, Ts) == Catch::Approx(std::cosh(1.0) * std::cosh(1.0)).margin(1e-6));
    CHECK(inner(p, Tt, Tt) == Catch::Approx(std::sinh(1.0) * std::sinh(1.0)).margin(1e-6));
    CHECK(std::abs(inner(p, Tu, Ts)) < 1e-6);
    CHECK(std::abs(inner(p, Tu, Tt)) < 1e-6);
    CHECK(std::abs(inner(p, Ts, Tt)) < 1e-6);

    const auto tang = fermi_tangents(chart, u0, s0, th0);
    CHECK((tang.d_u - Tu).norm() < 1e-6);
    CHECK((tang.d_s - Ts).norm() < 1e-6);
    CHECK((tang.d_theta - Tt).norm() < 1e-6);
  }
}

TEST_CASE("constant curvature -1 from finite differences of the metric") {
  // Christoffels from central differences of metric_at, curvature from
  // central differences of the Christoffels; compared against the
  // constant-curvature form in a random orthonormal frame.
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-4;

  auto metric_c = [](const Vec3& c) { return metric_at({c[0], c[1], c[2]}); };
  auto gamma_fd = [&](const Vec3& c) {
    std::array<Mat3, 3> dg;
    for (int a = 0; a < 3; ++a) {
      Vec3 e = Vec3::Zero();
      e[a] = h;
      dg[a] = (metric_c(c + e) - metric_c(c - e)) / (2 * h);
    }
    const Mat3 ginv = metric_c(c).inverse();
    std::array<Mat3, 3> gam{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    for (int cidx = 0; cidx < 3; ++cidx)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          double sum = 0;
          for (int d = 0; d < 3; ++d)
            sum += 0.5 * ginv(cidx, d) * (dg[a](b, d) + dg[b](a, d) - dg[d](a, b));
          gam[cidx](a, b) = sum;
        }
    return gam;
  };

  for (int trial = 0; trial < 3; ++trial) {
    const auto p = testutil::random_point(rng);
    const Vec3 c = p.coords();

    // closed form matches FD
    const auto gfd = gamma_fd(c);
    const auto gcl = christoffel(p);
    for (int k = 0; k < 3; ++k) CHECK((gfd[k] - gcl[k]).cwiseAbs().maxCoeff() < 1e-6);

    // Riemann tensor R^d_{c,ab} by FD of Christoffels
    std::array<std::array<Mat3, 3>, 3> dgam;
    for (int a = 0; a < 3; ++a) {
      Vec3 e = Vec3::Zero();
      e[a] = h;
      const auto gp = gamma_fd(c + e), gm = gamma_fd(c - e);
      for (int d = 0; d < 3; ++d) dgam[a][d] = (gp[d] - gm[d]) / (2 * h);
    }
    auto riem = [&](int d, int cc, int a, int b) {
      double v = dgam[a][d](b, cc) - dgam[b][d](a, cc);
      for (int e = 0; e < 3; ++e)
        v += gcl[d](a, e) * gcl[e](b, cc) - gcl[d](b, e) * gcl[e](a, cc);
      return v;
    };

    // random orthonormal frame at p
    const Vec3 axis = Vec3(u(rng), u(rng), u(rng)).normalized();
    const Mat3 E = p.t * Eigen::AngleAxisd(u(rng), axis).toRotationMatrix();
    const Mat3 g = metric_at(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            double om = 0;  // Omega^i_j(E_k, E_l)
            for (int d = 0; d < 3; ++d)
              for (int cc = 0; cc < 3; ++cc)
                for (int a = 0; a < 3; ++a)
                  for (int b = 0; b < 3; ++b)
                    om += (E.col(i).transpose() * g)(d) * riem(d, cc, a, b) * E(cc, j) *
                          E(a, k) * E(b, l);
            const double expect = -(double((i == k) && (j == l)) - double((i == l) && (j == k)));
            CHECK(std::abs(om - expect) < 1e-5);
          }
  }
}
