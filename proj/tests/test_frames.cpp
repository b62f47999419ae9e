#include <catch2/catch_amalgamated.hpp>

#include "hypcs/cartan.hpp"
#include "hypcs/frames.hpp"
#include "hypcs/scenario.hpp"

using namespace hypcs;

namespace {
TubeParams small_tube() {
  TubeParams p;
  p.n0 = 24;
  p.n1 = 24;
  return p;
}
const std::vector<double> test_radii{0.0, 0.3, 0.7, 1.2, 2.0, 3.1};
}  // namespace

TEST_CASE("adapted frame is orthonormal, oriented, and constant") {
  const auto chart = tube_collar(small_tube());
  const auto metric = chart.hyperbolic_metric();
  const FrameField fermi = fermi_frame(chart);
  for (double r : test_radii) {
    CHECK(frame_orthonormality_defect(metric, fermi, 0.3, 0.8, r) < 1e-12);
    const Mat3 m = fermi(0.3, 0.8, r);
    CHECK(m(2, 2) == 1.0);  // E3 = d_r
    CHECK(std::abs(m(2, 0)) + std::abs(m(2, 1)) == 0.0);
  }
  CHECK(verify_constant(chart, fermi, test_radii) < 1e-9);
}

TEST_CASE("constant frame construction") {
  const auto chart = tube_collar(small_tube());
  SECTION("reproduces the Fermi frame from its base slice") {
    const FrameField fermi = fermi_frame(chart);
    auto basefn = fermi.comps;
    const FrameField rebuilt =
        constant_frame(chart, [basefn](double a, double b) { return basefn(a, b, 0.0); });
    for (double r : test_radii)
      CHECK((rebuilt(0.15, 0.6, r) - fermi(0.15, 0.6, r)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("r = 0 slice equals the input") {
    const FrameField tilted = tilted_frame(chart, 0.3);
    const FrameField twisted = twisted_frame(chart, 1, 2);
    const FrameField fermi = fermi_frame(chart);
    const Mat3 expect =
        fermi(0.4, 0.9, 0.0) * (axis_rotation(2, 2.0 * pi * (0.4 + 2 * 0.9)));
    CHECK((twisted(0.4, 0.9, 0.0) - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(tilted(0.4, 0.9, 0.0).determinant() -
                   fermi(0.4, 0.9, 0.0).determinant()) < 1e-12);
  }
  SECTION("twisted and tilted frames are constant and orthonormal") {
    const auto metric = chart.hyperbolic_metric();
    for (const FrameField& f : {twisted_frame(chart, 1, 0), tilted_frame(chart, 0.3)}) {
      CHECK(verify_constant(chart, f, test_radii) < 1e-9);
      for (double r : test_radii)
        CHECK(frame_orthonormality_defect(metric, f, 0.7, 0.2, r) < 1e-12);
    }
  }
  SECTION("a twisted leaf rotation propagates to the rotated Fermi frame") {
    const FrameField twisted = twisted_frame(chart, 1, 2);
    const FrameField fermi = fermi_frame(chart);
    for (double r : test_radii) {
      const double a = 0.3, b = 0.65;
      const double alpha = 2.0 * pi * (a + 2 * b);
      const Mat3 expect = fermi(a, b, r) * axis_rotation(2, alpha);
      CHECK((twisted(a, b, r) - expect).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("verify_constant detects r-dependent rotations") {
  const auto chart = tube_collar(small_tube());
  const FrameField fermi = fermi_frame(chart);
  auto basefn = fermi.comps;
  const double rate = 0.3;
  const FrameField drifting{[basefn, rate](double a, double b, double r) {
    return Mat3(basefn(a, b, r) * axis_rotation(2, rate * r));
  }};
  const double dev = verify_constant(chart, drifting, test_radii);
  const double r_max = test_radii.back();
  const double expect = (axis_rotation(2, rate * r_max) - Mat3::Identity()).norm();
  CHECK(dev == Catch::Approx(expect).epsilon(1e-6));
}

TEST_CASE("gauge between frame fields") {
  const auto chart = tube_collar(small_tube());
  const FrameField fermi = fermi_frame(chart);
  SECTION("identity gauge") {
    const FrameField g = gauge_between(fermi, fermi);
    CHECK((g(0.2, 0.5, 1.0) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-13);
  }
  SECTION("twist shows up as the rotation about the third axis") {
    const FrameField tw = twisted_frame(chart, 1, 0);
    const FrameField g = gauge_between(fermi, tw);
    const double a = 0.35, b = 0.1;
    CHECK((g(a, b, 1.3) - axis_rotation(2, 2.0 * pi * a)).cwiseAbs().maxCoeff() < 1e-11);
  }
  SECTION("gauge between constant frames is r-independent") {
    const FrameField g = gauge_between(fermi, tilted_frame(chart, 0.4));
    for (double r : test_radii)
      CHECK((g(0.6, 0.8, r) - g(0.6, 0.8, 0.0)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("frame at infinity") {
  const auto chart = tube_collar(small_tube());
  const auto warped = chart.warped_metric();
  SECTION("Fermi frame maps to the flat frame of the warped model") {
    const FrameField inf = frame_at_infinity(chart, fermi_frame(chart));
    const Mat3 m = inf(0.4, 0.25, 0.0);
    CHECK(m(2, 2) == 1.0);
    CHECK(std::abs(m(2, 0)) + std::abs(m(2, 1)) == 0.0);
    // tangential vectors are unit for I_inf = (1/2) e^{2 u0} (ds^2 + dth^2)
    CHECK(frame_orthonormality_defect(warped, inf, 0.4, 0.25, 0.0) < 1e-12);
  }
  SECTION("normal components are preserved") {
    const FrameField tilt = tilted_frame(chart, 0.3);
    const FrameField inf = frame_at_infinity(chart, tilt);
    for (double r : {0.0, 1.0, 2.5}) {
      const Mat3 a = tilt(0.15, 0.75, r), b = inf(0.15, 0.75, r);
      CHECK((a.row(2) - b.row(2)).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(frame_orthonormality_defect(warped, inf, 0.15, 0.75, r) < 1e-9);
    }
  }
  SECTION("gauge at infinity equals the gauge downstairs") {
    const FrameField f1 = twisted_frame(chart, 1, 1), f2 = tilted_frame(chart, 0.25);
    const FrameField g = gauge_between(f1, f2);
    const FrameField ginf = gauge_between(frame_at_infinity(chart, f1),
                                          frame_at_infinity(chart, f2));
    for (double r : {0.0, 0.9, 2.2})
      CHECK((g(0.3, 0.55, r) - ginf(0.3, 0.55, r)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("radially parallel in the warped model") {
    const ChartDiff diff(chart.spec);
    for (const FrameField& f : {fermi_frame(chart), tilted_frame(chart, 0.3),
                                twisted_frame(chart, 1, 2)}) {
      const FrameField inf = frame_at_infinity(chart, f);
      const CartanLeaf leaf(warped, inf, diff, 0.8);
      for (int i : {2, 11})
        for (int j : {5, 17}) {
          const CartanNode n = leaf.node(i, j);
          const auto gam = n.christoffel();
          for (int k = 0; k < 3; ++k)
            CHECK(n.covariant_dE(2, k, gam).cwiseAbs().maxCoeff() < 1e-5);
        }
    }
  }
}
