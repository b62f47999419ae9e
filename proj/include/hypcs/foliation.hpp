#pragma once

// Equidistant foliation of a convex surface: closed-form propagation of the
// leaf data (I_r, B_r) through A_r = cosh(r) I - sinh(r) B, the rescaled
// metric at infinity with its conformal equivalence, the warped collar model
// carrying the frame at infinity, and the normal-hit map of graph surfaces
// onto the boundary plane.

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hypcs/surfaces.hpp"

namespace hypcs {

struct CollarSpec {
  double inner_margin = 0.0;  // epsilon: all leaves r > -epsilon stay regular
  double r_max = 4.0;
  int n_r = 17;  // radii 0, dr, ..., r_max

  std::vector<double> radii() const {
    std::vector<double> out(n_r);
    for (int k = 0; k < n_r; ++k) out[k] = r_max * k / (n_r - 1);
    return out;
  }
};

// Pointwise propagation. A_r must stay positive definite; for convex B
// (eigenvalues <= 0) this holds for all r >= 0 and down to the focal radius.
struct PropagatedSample {
  Mat2 I, B, A;
  double da;
};

inline PropagatedSample propagate_at(const Mat2& I0, const Mat2& B0, double r) {
  const double ch = std::cosh(r), sh = std::sinh(r);
  PropagatedSample out;
  out.A = ch * Mat2::Identity() - sh * B0;
  const Vec2 bev = real_eigenvalues_2x2(B0);
  if (ch - sh * bev[0] <= 0.0 || ch - sh * bev[1] <= 0.0)
    throw std::domain_error("propagate: focal radius reached, A_r is singular");
  out.I = out.A.transpose() * I0 * out.A;
  out.B = -out.A.inverse() * (sh * Mat2::Identity() - ch * B0);
  out.da = std::sqrt(out.I.determinant());
  return out;
}

// Largest epsilon such that A_r is regular for all r > -epsilon, from the
// most negative B eigenvalue; the collar uses half of it.
inline double focal_margin(const LeafGeometry& geom) {
  double most_negative = 0.0;
  for (int i = 0; i < geom.spec.a0.n; ++i)
    for (int j = 0; j < geom.spec.a1.n; ++j)
      most_negative = std::min(most_negative, real_eigenvalues_2x2(geom.B_at(i, j)).minCoeff());
  if (most_negative >= 0.0) return std::numeric_limits<double>::infinity();
  return std::atanh(std::min(1.0 / (-most_negative), 1.0 - 1e-12));
}

struct PropagatedLeaf {
  LeafGeometry geom;
  GridD A11, A12, A21, A22;

  Mat2 A_at(int i, int j) const {
    Mat2 m;
    m << A11(i, j), A12(i, j), A21(i, j), A22(i, j);
    return m;
  }
};

inline PropagatedLeaf propagate(const LeafGeometry& base, double r) {
  PropagatedLeaf out;
  out.geom.spec = base.spec;
  out.geom.orient = base.orient;
  out.geom.resize();
  const int n0 = base.spec.a0.n, n1 = base.spec.a1.n;
  out.A11.setZero(n0, n1);
  out.A12.setZero(n0, n1);
  out.A21.setZero(n0, n1);
  out.A22.setZero(n0, n1);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) {
      const auto s = propagate_at(base.I_at(i, j), base.B_at(i, j), r);
      out.geom.set_I(i, j, s.I);
      out.geom.set_B(i, j, s.B);
      out.geom.da(i, j) = s.da;
      out.A11(i, j) = s.A(0, 0);
      out.A12(i, j) = s.A(0, 1);
      out.A21(i, j) = s.A(1, 0);
      out.A22(i, j) = s.A(1, 1);
    }
  out.geom.Kint = brioschi_curvature(base.spec, out.geom.I11, out.geom.I12, out.geom.I22);
  return out;
}

// Metric at infinity I_inf = (1/2) I((I-B) . , (I-B) . ) and the bundle map
// V = (I-B)/sqrt(2); the warped collar metric is dr^2 + e^{2r} I_inf.
struct InfinitySample {
  Mat2 I_inf, V;
  double da_inf;
};

inline InfinitySample metric_at_infinity_at(const Mat2& I0, const Mat2& B0) {
  const Mat2 imb = Mat2::Identity() - B0;
  if (std::abs(imb.determinant()) < 1e-14)
    throw std::domain_error("metric_at_infinity: I - B is singular");
  InfinitySample out;
  out.V = imb / std::sqrt(2.0);
  out.I_inf = 0.5 * imb.transpose() * I0 * imb;
  if (out.I_inf(0, 0) <= 0.0 || out.I_inf.determinant() <= 0.0)
    throw std::domain_error("metric_at_infinity: metric is not positive definite");
  out.da_inf = std::sqrt(out.I_inf.determinant());
  return out;
}

struct InfinityGeometry {
  ChartSpec spec;
  double orient = 1.0;
  GridD I11, I12, I22, da;
  GridD V11, V12, V21, V22;

  Mat2 I_at(int i, int j) const {
    Mat2 m;
    m << I11(i, j), I12(i, j), I12(i, j), I22(i, j);
    return m;
  }
  Mat2 V_at(int i, int j) const {
    Mat2 m;
    m << V11(i, j), V12(i, j), V21(i, j), V22(i, j);
    return m;
  }
};

inline InfinityGeometry metric_at_infinity(const LeafGeometry& base) {
  InfinityGeometry out;
  out.spec = base.spec;
  out.orient = base.orient;
  const int n0 = base.spec.a0.n, n1 = base.spec.a1.n;
  for (GridD* g : {&out.I11, &out.I12, &out.I22, &out.da, &out.V11, &out.V12, &out.V21,
                   &out.V22})
    g->setZero(n0, n1);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) {
      const auto s = metric_at_infinity_at(base.I_at(i, j), base.B_at(i, j));
      out.I11(i, j) = s.I_inf(0, 0);
      out.I12(i, j) = 0.5 * (s.I_inf(0, 1) + s.I_inf(1, 0));
      out.I22(i, j) = s.I_inf(1, 1);
      out.da(i, j) = s.da_inf;
      out.V11(i, j) = s.V(0, 0);
      out.V12(i, j) = s.V(0, 1);
      out.V21(i, j) = s.V(1, 0);
      out.V22(i, j) = s.V(1, 1);
    }
  return out;
}

// Max-norm residual of I_r^inf = e^{2r} I^inf (leaves compared through the
// foliation projection, which is the chart identity).
inline double conformal_check(const LeafGeometry& base, double r) {
  const PropagatedLeaf leaf = propagate(base, r);
  const double e2r = std::exp(2.0 * r);
  double worst = 0.0;
  for (int i = 0; i < base.spec.a0.n; ++i)
    for (int j = 0; j < base.spec.a1.n; ++j) {
      const auto inf_r = metric_at_infinity_at(leaf.geom.I_at(i, j), leaf.geom.B_at(i, j));
      const auto inf_0 = metric_at_infinity_at(base.I_at(i, j), base.B_at(i, j));
      worst = std::max(worst, (inf_r.I_inf - e2r * inf_0.I_inf).cwiseAbs().maxCoeff());
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Normal-hit map of a graph surface t = f(x1, x2) onto the boundary plane:
// the geodesic ray normal to the surface lands at
//   w^{-1}(x) = x + f / (1 + sqrt(|df|^2 + 1)) * df.

using GraphFn = std::function<double(double, double)>;

inline Vec2 normal_hit_map(const GraphFn& f, const Vec2& x, double h = 1e-5) {
  const double fv = f(x[0], x[1]);
  if (!(fv > 0.0)) throw std::domain_error("normal_hit: graph must stay above the boundary");
  const double f1 = (f(x[0] + h, x[1]) - f(x[0] - h, x[1])) / (2 * h);
  const double f2 = (f(x[0], x[1] + h) - f(x[0], x[1] - h)) / (2 * h);
  const double w = std::sqrt(f1 * f1 + f2 * f2 + 1.0);
  return x + fv / (1.0 + w) * Vec2(f1, f2);
}

inline Mat2 normal_hit_differential(const GraphFn& f, const Vec2& x, double h = 1e-5) {
  Mat2 d;
  for (int k = 0; k < 2; ++k) {
    Vec2 e = Vec2::Zero();
    e[k] = h;
    const Vec2 plus = normal_hit_map(f, x + e, h);
    const Vec2 minus = normal_hit_map(f, x - e, h);
    d.col(k) = (plus - minus) / (2 * h);
  }
  return d;
}

// Chart functor of a graph surface, oriented by the upward normal (toward
// the conformal boundary at infinity).
inline ChartFn graph_chart_fn(const GraphFn& f, double h = 1e-5) {
  return [f, h](double a, double b) {
    AmbientJet jet;
    const double fv = f(a, b);
    const double f1 = (f(a + h, b) - f(a - h, b)) / (2 * h);
    const double f2 = (f(a, b + h) - f(a, b - h)) / (2 * h);
    jet.p = HyperbolicPoint{a, b, fv};
    jet.t0 = Vec3(1.0, 0.0, f1);
    jet.t1 = Vec3(0.0, 1.0, f2);
    return jet;
  };
}

}  // namespace hypcs
