#pragma once

// Upper half-space model of hyperbolic 3-space: metric, isometries as
// PSL2(C) matrices acting by quaternion Moebius transformations, the
// frame-to-isometry identification, geodesic normal flow, and Fermi
// coordinates around a closed geodesic (solid-torus quotients).

#include <cmath>
#include <stdexcept>
#include <string>

#include "hypcs/linalg.hpp"

namespace hypcs {

struct HyperbolicPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double t = 1.0;  // height, > 0

  Vec3 coords() const { return Vec3(x1, x2, t); }
};

inline const HyperbolicPoint& base_point() {
  static const HyperbolicPoint j{0.0, 0.0, 1.0};
  return j;
}

struct TangentVector3 {
  HyperbolicPoint base;
  Vec3 components = Vec3::Zero();  // coordinate basis (d/dx1, d/dx2, d/dt)
};

// Metric (dx1^2 + dx2^2 + dt^2) / t^2 in the coordinate basis.
inline Mat3 metric_at(const HyperbolicPoint& p) {
  if (!(p.t > 0.0)) throw std::domain_error("metric_at: height must be positive");
  return Mat3::Identity() / (p.t * p.t);
}

inline double inner(const HyperbolicPoint& p, const Vec3& v, const Vec3& w) {
  return v.dot(w) / (p.t * p.t);
}

inline double norm(const HyperbolicPoint& p, const Vec3& v) {
  return std::sqrt(inner(p, v, v));
}

inline double distance(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  const double dx1 = p.x1 - q.x1, dx2 = p.x2 - q.x2, dt = p.t - q.t;
  const double arg = 1.0 + (dx1 * dx1 + dx2 * dx2 + dt * dt) / (2.0 * p.t * q.t);
  return std::acosh(arg);
}

// Christoffel symbols of the half-space metric: Gamma[c](a,b) = Gamma^c_ab.
// Nonzero: G^1_13 = G^2_23 = G^3_33 = -1/t, G^3_11 = G^3_22 = 1/t.
inline std::array<Mat3, 3> christoffel(const HyperbolicPoint& p) {
  if (!(p.t > 0.0)) throw std::domain_error("christoffel: height must be positive");
  const double it = 1.0 / p.t;
  std::array<Mat3, 3> g{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  g[0](0, 2) = g[0](2, 0) = -it;
  g[1](1, 2) = g[1](2, 1) = -it;
  g[2](0, 0) = g[2](1, 1) = it;
  g[2](2, 2) = -it;
  return g;
}

// Hamilton quaternions; points of the half space embed as x1 + x2 i + t j.
struct Quat {
  double w = 0, x = 0, y = 0, z = 0;

  static Quat from_complex(cplx c) { return {c.real(), c.imag(), 0.0, 0.0}; }
  static Quat from_point(const HyperbolicPoint& p) { return {p.x1, p.x2, p.t, 0.0}; }
  static Quat from_vector(const Vec3& v) { return {v[0], v[1], v[2], 0.0}; }

  Quat conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  Quat inverse() const {
    const double n2 = norm2();
    if (n2 <= 0.0) throw std::domain_error("Quat::inverse: zero quaternion");
    Quat c = conj();
    return {c.w / n2, c.x / n2, c.y / n2, c.z / n2};
  }
  friend Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quat operator+(const Quat& a, const Quat& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
};

// Orientation-preserving isometry, stored as a 2x2 complex matrix of
// determinant 1 (identified with its negation).
struct IsometryMatrix {
  Mat2c m = Mat2c::Identity();

  IsometryMatrix() = default;
  explicit IsometryMatrix(const Mat2c& mat) : m(mat) {}

  void normalize_det() {
    const cplx d = m.determinant();
    if (std::abs(d) < 1e-14) throw std::domain_error("IsometryMatrix: degenerate matrix");
    m /= std::sqrt(d);
  }

  // Deterministic representative of {g, -g}: first entry (row-major) of
  // modulus > 1e-9 gets positive real part, positive imaginary on ties.
  void normalize_sign() {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const cplx v = m(i, j);
        if (std::abs(v) > 1e-9) {
          if (v.real() < -1e-12 || (std::abs(v.real()) <= 1e-12 && v.imag() < 0.0)) m = -m;
          return;
        }
      }
  }

  friend IsometryMatrix operator*(const IsometryMatrix& a, const IsometryMatrix& b) {
    return IsometryMatrix(a.m * b.m);
  }
};

namespace detail {
inline void check_isometry(const IsometryMatrix& g) {
  if (std::abs(g.m.determinant() - cplx(1.0, 0.0)) > 1e-8)
    throw std::domain_error("isometry matrix must have unit determinant");
}
}  // namespace detail

inline HyperbolicPoint apply_isometry(const IsometryMatrix& g, const HyperbolicPoint& p) {
  detail::check_isometry(g);
  const Quat P = Quat::from_point(p);
  const Quat a = Quat::from_complex(g.m(0, 0)), b = Quat::from_complex(g.m(0, 1));
  const Quat c = Quat::from_complex(g.m(1, 0)), d = Quat::from_complex(g.m(1, 1));
  const Quat num = a * P + b;
  const Quat den = c * P + d;
  const Quat out = num * den.inverse();
  if (!(out.y > 0.0)) throw std::domain_error("apply_isometry: image left the upper half space");
  return {out.w, out.x, out.y};
}

// Image point together with the exact differential in coordinate bases.
// d g_P (V) = (a - g(P) c) V (cP + d)^{-1}.
inline std::pair<HyperbolicPoint, Mat3> apply_isometry_with_differential(
    const IsometryMatrix& g, const HyperbolicPoint& p) {
  detail::check_isometry(g);
  const Quat P = Quat::from_point(p);
  const Quat a = Quat::from_complex(g.m(0, 0)), b = Quat::from_complex(g.m(0, 1));
  const Quat c = Quat::from_complex(g.m(1, 0)), d = Quat::from_complex(g.m(1, 1));
  const Quat den_inv = (c * P + d).inverse();
  const Quat img = (a * P + b) * den_inv;
  if (!(img.y > 0.0))
    throw std::domain_error("apply_isometry: image left the upper half space");
  const Quat lead = a + Quat{-1, 0, 0, 0} * (img * c);
  Mat3 diff;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = 1.0;
    const Quat dv = lead * Quat::from_vector(e) * den_inv;
    diff.col(k) = Vec3(dv.w, dv.x, dv.y);
  }
  return {HyperbolicPoint{img.w, img.x, img.y}, diff};
}

struct OrthonormalFrame3 {
  HyperbolicPoint base;
  Mat3 components = Mat3::Identity();  // columns = E1,E2,E3 in the coordinate basis

  Vec3 vector(int i) const { return components.col(i); }
};

inline OrthonormalFrame3 standard_frame_at(const HyperbolicPoint& p) {
  OrthonormalFrame3 f;
  f.base = p;
  f.components = Mat3::Identity() * p.t;
  return f;
}

inline double orthonormality_defect(const OrthonormalFrame3& f) {
  const Mat3 gram = f.components.transpose() * metric_at(f.base) * f.components;
  return (gram - Mat3::Identity()).cwiseAbs().maxCoeff();
}

// Lift of a rotation of the tangent space at the base point j = (0,0,1) to
// the unit quaternion / SU(2) matrix whose Moebius action realizes it.  The
// generator map sends the rotation vector (v1,v2,v3) to
//   (1/2) [[i v3, i v1 - v2], [i v1 + v2, -i v3]].
inline Mat2c su2_from_rotation(const Mat3& rot) {
  const Eigen::AngleAxisd aa(project_to_rotation(rot));
  const Vec3 v = aa.angle() * aa.axis();
  const double psi = v.norm();
  Mat2c gen;
  gen << cplx(0.0, v[2]), cplx(-v[1], v[0]), cplx(v[1], v[0]), cplx(0.0, -v[2]);
  gen *= 0.5;
  const double half = psi / 2.0;
  const double sinc = (psi < 1e-12) ? 1.0 : std::sin(half) / half;
  return std::cos(half) * Mat2c::Identity() + sinc * gen;
}

// Unique (up to sign) g with g(j) = base(f) and differential mapping the
// standard frame at j onto f.
inline IsometryMatrix frame_to_isometry(const OrthonormalFrame3& f, double tol = 1e-6) {
  if (orthonormality_defect(f) > tol)
    throw std::domain_error("frame_to_isometry: frame is not orthonormal");
  if (f.components.determinant() <= 0.0)
    throw std::domain_error("frame_to_isometry: frame is not oriented");
  Mat2c g0;
  const double st = std::sqrt(f.base.t);
  g0 << st, cplx(f.base.x1, f.base.x2) / st, 0.0, 1.0 / st;
  const Mat3 rot = f.components / f.base.t;
  IsometryMatrix g(g0 * su2_from_rotation(rot));
  g.normalize_sign();
  return g;
}

// Geodesic flow from p with (unit) initial direction n: the point at
// arclength r and the differential of the isometry translating along the
// geodesic (= parallel transport on the geodesic itself).
inline std::pair<HyperbolicPoint, Mat3> normal_flow(const HyperbolicPoint& p, const Vec3& n,
                                                    double r) {
  const double nn = norm(p, n);
  if (std::abs(nn - 1.0) > 1e-8) throw std::domain_error("normal_flow: direction must be unit");

  // Hyperbolic orthonormal frames at p are t * (coordinate-orthonormal triples).
  const Vec3 n_unit = n / n.norm();
  Vec3 seed = (std::abs(n_unit[0]) < 0.9) ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 b = (seed - seed.dot(n_unit) * n_unit).normalized();
  const Vec3 c = n_unit.cross(b);

  OrthonormalFrame3 f;
  f.base = p;
  f.components.col(0) = p.t * b;
  f.components.col(1) = p.t * c;
  f.components.col(2) = p.t * n_unit;
  const IsometryMatrix g = frame_to_isometry(f);

  Mat2c dil;
  dil << std::exp(r / 2.0), 0.0, 0.0, std::exp(-r / 2.0);
  const IsometryMatrix translate(g.m * dil * g.m.inverse());
  return apply_isometry_with_differential(translate, p);
}

// Fermi coordinates (u, s, theta) about the vertical axis geodesic:
//   F = e^s (tanh u cos theta, tanh u sin theta, sech u),
// with the solid-torus identification (u, s, theta) ~ (u, s + L, theta + phi).
struct FermiChart {
  double length = 1.0;        // translation length L of the core geodesic, > 0
  double twist_angle = 0.0;   // rotation angle phi of the loxodromic
};

inline HyperbolicPoint fermi_embed(const FermiChart&, double u, double s_len, double theta) {
  if (!(u > 0.0)) throw std::domain_error("fermi_embed: radius must be positive");
  const double es = std::exp(s_len);
  const double th = std::tanh(u), se = 1.0 / std::cosh(u);
  return {es * th * std::cos(theta), es * th * std::sin(theta), es * se};
}

struct FermiTangents {
  Vec3 d_u, d_s, d_theta;  // coordinate tangents of the embedding
};

inline FermiTangents fermi_tangents(const FermiChart&, double u, double s_len, double theta) {
  const double es = std::exp(s_len);
  const double th = std::tanh(u), se = 1.0 / std::cosh(u);
  const double ct = std::cos(theta), st = std::sin(theta);
  FermiTangents out;
  out.d_u = es * Vec3(se * se * ct, se * se * st, -se * th);
  out.d_s = es * Vec3(th * ct, th * st, se);
  out.d_theta = es * Vec3(-th * st, th * ct, 0.0);
  return out;
}

}  // namespace hypcs
