#pragma once

// Frame fields on collars, in foliation coordinates: a frame field assigns
// to each (a, b, r) an oriented orthonormal triple, stored as the 3x3 matrix
// of chart components (columns) in the basis (d_a, d_b, d_r).
//
// The central construction is the constant frame: the comparison gauge g_r
// obtained by pushing the leaf-r restriction down with A_r is independent
// of r.  Constant frames are produced in closed form by applying A_r^{-1}
// to the tangential part of a base frame.

#include <functional>

#include "hypcs/collar.hpp"

namespace hypcs {

struct FrameField {
  std::function<Mat3(double, double, double)> comps;

  Mat3 operator()(double a, double b, double r) const { return comps(a, b, r); }
};

inline double frame_orthonormality_defect(const CollarMetric& metric, const FrameField& f,
                                          double a, double b, double r) {
  const Mat3 m = f(a, b, r);
  const Mat3 gram = m.transpose() * metric.metric3(a, b, r) * m;
  return (gram - Mat3::Identity()).cwiseAbs().maxCoeff();
}

// Leaf-adapted oriented orthonormal frame: Gram-Schmidt of (d_a, d_b) in the
// leaf metric, third vector d_r.  On the plain tube this is the Fermi frame
// (e_s, e_theta, d_u).
inline FrameField adapted_frame(const CollarChart& chart) {
  auto i0 = chart.I0;
  auto b0 = chart.B0;
  const double orient = chart.orient;
  return FrameField{[i0, b0, orient](double a, double b, double r) {
    const Mat2 I = propagate_at(i0(a, b), b0(a, b), r).I;
    Vec2 e1(1.0 / std::sqrt(I(0, 0)), 0.0);
    Vec2 e2(-I(0, 1) / I(0, 0), 1.0);
    e2 /= std::sqrt(e2.dot(I * e2));
    if (orient * (e1[0] * e2[1] - e1[1] * e2[0]) < 0.0) e2 = -e2;
    Mat3 m = Mat3::Zero();
    m.col(0).head<2>() = e1;
    m.col(1).head<2>() = e2;
    m(2, 2) = 1.0;
    return m;
  }};
}

// Extends a base-leaf frame to the collar as a constant frame: tangential
// components are mapped by A_r^{-1}, the normal component is carried along
// the flow unchanged.
inline FrameField constant_frame(const CollarChart& chart,
                                 const std::function<Mat3(double, double)>& base) {
  auto b0 = chart.B0;
  return FrameField{[b0, base](double a, double b, double r) {
    const Mat2 A = std::cosh(r) * Mat2::Identity() - std::sinh(r) * b0(a, b);
    const Mat2 Ainv = A.inverse();
    Mat3 m = base(a, b);
    m.topRows<2>() = (Ainv * m.topRows<2>()).eval();
    return m;
  }};
}

inline FrameField fermi_frame(const CollarChart& chart) {
  // already constant: A_r^{-1} rescales the Gram-Schmidt directions
  return adapted_frame(chart);
}

// Base frame rotated about E3 by alpha(a,b) = 2 pi (n0 a + n1 b), then
// extended as a constant frame.  Winding numbers keep the rotation well
// defined on the quotient torus.
inline FrameField twisted_frame(const CollarChart& chart, int n0, int n1) {
  const FrameField base = adapted_frame(chart);
  auto basefn = base.comps;
  auto rotated = [basefn, n0, n1](double a, double b) {
    const double alpha = 2.0 * pi * (n0 * a + n1 * b);
    return Mat3(basefn(a, b, 0.0) * axis_rotation(2, alpha));
  };
  return constant_frame(chart, rotated);
}

// Base frame tilted by the leaf-constant angle beta: E3 is rotated toward
// the tangent direction at angle psi(a,b) = 2 pi (a + b), so the normal
// components vary over the leaf.  Extended as a constant frame.
inline FrameField tilted_frame(const CollarChart& chart, double beta) {
  const FrameField base = adapted_frame(chart);
  auto basefn = base.comps;
  auto rotated = [basefn, beta](double a, double b) {
    const double psi = 2.0 * pi * (a + b);
    const Mat3 rot =
        axis_rotation(2, psi) * axis_rotation(1, -beta) * axis_rotation(2, -psi);
    return Mat3(basefn(a, b, 0.0) * rot);
  };
  return constant_frame(chart, rotated);
}

// Comparison gauge of Definition-style constancy: push the leaf-r frame down
// with A_r and express it in the base frame; returns g_r at one node.
inline Mat3 comparison_gauge(const CollarChart& chart, const FrameField& field, double a,
                             double b, double r) {
  const Mat2 A = std::cosh(r) * Mat2::Identity() - std::sinh(r) * chart.B0(a, b);
  Mat3 pushed = field(a, b, r);
  pushed.topRows<2>() = (A * pushed.topRows<2>()).eval();
  const Mat3 base = field(a, b, 0.0);
  return base.inverse() * pushed;
}

// Max over nodes and radii of ||g_r - g_0||_F.
inline double verify_constant(const CollarChart& chart, const FrameField& field,
                              const std::vector<double>& radii) {
  double worst = 0.0;
  for (int i = 0; i < chart.spec.a0.n; ++i)
    for (int j = 0; j < chart.spec.a1.n; ++j) {
      const double a = chart.spec.a0.node(i), b = chart.spec.a1.node(j);
      const Mat3 g0 = comparison_gauge(chart, field, a, b, 0.0);
      for (double r : radii) {
        const Mat3 gr = comparison_gauge(chart, field, a, b, r);
        worst = std::max(worst, (gr - g0).norm());
      }
    }
  return worst;
}

// Pointwise rotation g with fieldB = fieldA . g.
inline FrameField gauge_between(const FrameField& fieldA, const FrameField& fieldB) {
  auto fa = fieldA.comps;
  auto fb = fieldB.comps;
  return FrameField{[fa, fb](double a, double b, double r) {
    return Mat3(fa(a, b, r).inverse() * fb(a, b, r));
  }};
}

// Frame at infinity on the warped collar: tangential parts mapped by
// V_r^{-1}, normal component kept; orthonormal for dr^2 + e^{2r} I_inf.
inline FrameField frame_at_infinity(const CollarChart& chart, const FrameField& field) {
  auto i0 = chart.I0;
  auto b0 = chart.B0;
  auto f = field.comps;
  return FrameField{[i0, b0, f](double a, double b, double r) {
    const auto leaf = propagate_at(i0(a, b), b0(a, b), r);
    const Mat2 Vinv = std::sqrt(2.0) * (Mat2::Identity() - leaf.B).inverse();
    Mat3 m = f(a, b, r);
    m.topRows<2>() = (Vinv * m.topRows<2>()).eval();
    return m;
  }};
}

}  // namespace hypcs
