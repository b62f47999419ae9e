#pragma once

// Parametrized surface charts in the upper half space: first/second
// fundamental forms, convexity checks, intrinsic curvature via the Brioschi
// formula, and tensor quadrature.
//
// Sign conventions: surfaces are oriented by a unit normal N and the
// Weingarten map is B(X) = -nabla_X N, so convex surfaces (tubes oriented
// outward) have negative semidefinite B and the Gauss equation reads
// K_int = det B - 1.

#include <functional>
#include <stdexcept>

#include "hypcs/grid.hpp"
#include "hypcs/halfspace.hpp"

namespace hypcs {

// Embedding jet at one chart parameter: point plus the two coordinate
// tangent vectors (with respect to the chart parameters themselves).
struct AmbientJet {
  HyperbolicPoint p;
  Vec3 t0 = Vec3::Zero();
  Vec3 t1 = Vec3::Zero();
};

using ChartFn = std::function<AmbientJet(double, double)>;

struct SurfaceChart {
  ChartSpec spec;
  ChartFn fn;
  double normal_sign = 1.0;  // flips the cross-product normal to the outward side
  double fd_step = 1e-5;     // parameter step for embedding derivatives
};

// Pointwise fundamental data of an embedded chart.
struct LeafSample {
  Mat2 I;      // first fundamental form in the chart basis
  Mat2 B;      // Weingarten map, B(X) = -nabla_X N
  double da;   // area density sqrt(det I)
  Vec3 N;      // unit normal (ambient coordinates)
  double orient;  // sign of det[t0, t1, N]
};

namespace detail {

inline Vec3 unit_normal(const AmbientJet& jet, double sign) {
  // The metric is conformal to the Euclidean one, so the Euclidean cross
  // product of the tangents is hyperbolically orthogonal to both.
  const Vec3 raw = jet.t0.cross(jet.t1);
  const double n = norm(jet.p, raw);
  if (!(n > 1e-14)) throw std::domain_error("fundamental_forms: degenerate tangent basis");
  return sign * raw / n;
}

}  // namespace detail

inline LeafSample fundamental_forms_at(const ChartFn& fn, double a, double b, double sign,
                                       double h) {
  const AmbientJet jet = fn(a, b);
  LeafSample out;
  out.I(0, 0) = inner(jet.p, jet.t0, jet.t0);
  out.I(0, 1) = out.I(1, 0) = inner(jet.p, jet.t0, jet.t1);
  out.I(1, 1) = inner(jet.p, jet.t1, jet.t1);
  const double det = out.I.determinant();
  if (!(det > 1e-14)) throw std::domain_error("fundamental_forms: degenerate metric");
  out.da = std::sqrt(det);
  out.N = detail::unit_normal(jet, sign);
  out.orient = (jet.t0.cross(jet.t1).dot(out.N) > 0.0) ? 1.0 : -1.0;

  // dN along the chart axes by central differences of the normal field.
  const auto gam = christoffel(jet.p);
  Mat2 II;  // II(a,b) = I(B(t_a), t_b) with B = -nabla N
  const Vec3 np = detail::unit_normal(fn(a + h, b), sign);
  const Vec3 nm = detail::unit_normal(fn(a - h, b), sign);
  const Vec3 nq = detail::unit_normal(fn(a, b + h), sign);
  const Vec3 nr = detail::unit_normal(fn(a, b - h), sign);
  const Vec3 dN[2] = {(np - nm) / (2 * h), (nq - nr) / (2 * h)};
  const Vec3 tang[2] = {jet.t0, jet.t1};
  for (int i = 0; i < 2; ++i) {
    Vec3 covar = dN[i];
    for (int c = 0; c < 3; ++c) covar[c] += tang[i].transpose() * gam[c] * out.N;
    for (int j = 0; j < 2; ++j) II(i, j) = -inner(jet.p, covar, tang[j]);
  }
  // B in the chart basis: I(B(t_i), t_j) = II(i, j)  =>  B = I^{-1} II^T.
  out.B = out.I.inverse() * II.transpose();
  return out;
}

// Per-node fundamental data of a chart, plus intrinsic curvature.
struct LeafGeometry {
  ChartSpec spec;
  double orient = 1.0;
  GridD I11, I12, I22;
  GridD B11, B12, B21, B22;
  GridD Kint;  // intrinsic Gaussian curvature (Brioschi)
  GridD da;

  Mat2 I_at(int i, int j) const {
    Mat2 m;
    m << I11(i, j), I12(i, j), I12(i, j), I22(i, j);
    return m;
  }
  Mat2 B_at(int i, int j) const {
    Mat2 m;
    m << B11(i, j), B12(i, j), B21(i, j), B22(i, j);
    return m;
  }
  void set_I(int i, int j, const Mat2& m) {
    I11(i, j) = m(0, 0);
    I12(i, j) = 0.5 * (m(0, 1) + m(1, 0));
    I22(i, j) = m(1, 1);
  }
  void set_B(int i, int j, const Mat2& m) {
    B11(i, j) = m(0, 0);
    B12(i, j) = m(0, 1);
    B21(i, j) = m(1, 0);
    B22(i, j) = m(1, 1);
  }
  void resize() {
    const int n0 = spec.a0.n, n1 = spec.a1.n;
    for (GridD* g : {&I11, &I12, &I22, &B11, &B12, &B21, &B22, &Kint, &da})
      g->setZero(n0, n1);
  }
};

// Brioschi formula for the intrinsic Gaussian curvature of a gridded metric.
inline GridD brioschi_curvature(const ChartSpec& spec, const GridD& E, const GridD& F,
                                const GridD& G) {
  const ChartDiff diff(spec);
  const GridD Eu = diff.along0(E), Ev = diff.along1(E);
  const GridD Fu = diff.along0(F), Fv = diff.along1(F);
  const GridD Gu = diff.along0(G), Gv = diff.along1(G);
  const GridD Evv = diff.along1_2(E), Guu = diff.along0_2(G), Fuv = diff.along1(Fu);
  GridD K(E.rows(), E.cols());
  for (int i = 0; i < E.rows(); ++i)
    for (int j = 0; j < E.cols(); ++j) {
      Mat3 m1, m2;
      m1 << -0.5 * Evv(i, j) + Fuv(i, j) - 0.5 * Guu(i, j), 0.5 * Eu(i, j),
          Fu(i, j) - 0.5 * Ev(i, j),  //
          Fv(i, j) - 0.5 * Gu(i, j), E(i, j), F(i, j),  //
          0.5 * Gv(i, j), F(i, j), G(i, j);
      m2 << 0.0, 0.5 * Ev(i, j), 0.5 * Gu(i, j),  //
          0.5 * Ev(i, j), E(i, j), F(i, j),       //
          0.5 * Gu(i, j), F(i, j), G(i, j);
      const double den = E(i, j) * G(i, j) - F(i, j) * F(i, j);
      K(i, j) = (m1.determinant() - m2.determinant()) / (den * den);
    }
  return K;
}

inline LeafGeometry fundamental_forms(const SurfaceChart& chart) {
  LeafGeometry geom;
  geom.spec = chart.spec;
  geom.resize();
  const int n0 = chart.spec.a0.n, n1 = chart.spec.a1.n;
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) {
      const auto s = fundamental_forms_at(chart.fn, chart.spec.a0.node(i),
                                          chart.spec.a1.node(j), chart.normal_sign,
                                          chart.fd_step);
      geom.set_I(i, j, s.I);
      geom.set_B(i, j, s.B);
      geom.da(i, j) = s.da;
      if (i == 0 && j == 0) geom.orient = s.orient;
    }
  geom.Kint = brioschi_curvature(geom.spec, geom.I11, geom.I12, geom.I22);
  return geom;
}

inline bool check_convexity(const LeafGeometry& geom, double tol = 1e-8) {
  for (int i = 0; i < geom.spec.a0.n; ++i)
    for (int j = 0; j < geom.spec.a1.n; ++j) {
      const Vec2 ev = real_eigenvalues_2x2(geom.B_at(i, j));
      if (ev[0] > tol || ev[1] > tol) return false;
    }
  return true;
}

inline double integrate_surface(const GridD& density, const LeafGeometry& geom) {
  if (density.rows() != geom.da.rows() || density.cols() != geom.da.cols())
    throw std::invalid_argument("integrate_surface: grid mismatch");
  const ChartDiff diff(geom.spec);
  return diff.integrate(density.cwiseProduct(geom.da));
}

// Residuals used by the self-check suites.
inline double gauss_equation_residual(const LeafGeometry& geom) {
  double worst = 0.0;
  for (int i = 0; i < geom.spec.a0.n; ++i)
    for (int j = 0; j < geom.spec.a1.n; ++j) {
      const double lhs = geom.B_at(i, j).determinant() - 1.0;
      worst = std::max(worst, std::abs(lhs - geom.Kint(i, j)));
    }
  return worst;
}

inline double self_adjointness_residual(const LeafGeometry& geom) {
  double worst = 0.0;
  for (int i = 0; i < geom.spec.a0.n; ++i)
    for (int j = 0; j < geom.spec.a1.n; ++j) {
      const Mat2 ib = geom.I_at(i, j) * geom.B_at(i, j);
      worst = std::max(worst, std::abs(ib(0, 1) - ib(1, 0)));
    }
  return worst;
}

}  // namespace hypcs
