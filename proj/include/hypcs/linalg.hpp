#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

namespace hypcs {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

inline constexpr double pi = std::numbers::pi;

// Orthonormal basis of so(3) for the pairing -tr(ab)/2: rotation generators
// about the three coordinate axes.
inline const Mat3& so3_L1() {
  static const Mat3 m = (Mat3() << 0, 0, 0, 0, 0, -1, 0, 1, 0).finished();
  return m;
}
inline const Mat3& so3_L2() {
  static const Mat3 m = (Mat3() << 0, 0, 1, 0, 0, 0, -1, 0, 0).finished();
  return m;
}
inline const Mat3& so3_L3() {
  static const Mat3 m = (Mat3() << 0, -1, 0, 1, 0, 0, 0, 0, 0).finished();
  return m;
}

inline Mat3 so3_hat(const Vec3& v) {
  return v[0] * so3_L1() + v[1] * so3_L2() + v[2] * so3_L3();
}

inline Vec3 so3_vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

// Ad-invariant pairing <a,b> = -tr(ab)/(8 pi^2) used for all Chern-Simons
// densities, on so(3) and (complexified) on sl2.
inline double ad_pairing(const Mat3& a, const Mat3& b) {
  return -(a * b).trace() / (8.0 * pi * pi);
}
inline cplx ad_pairing(const Mat2c& a, const Mat2c& b) {
  return -(a * b).trace() / (8.0 * pi * pi);
}

inline Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }
inline Mat2c commutator(const Mat2c& a, const Mat2c& b) { return a * b - b * a; }

// sl2(C) basis {h, e, f} and the dual component extraction for a traceless
// matrix m = h_c*h + e_c*e + f_c*f.
inline const Mat2c& sl2_h() {
  static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
  return m;
}
inline const Mat2c& sl2_e() {
  static const Mat2c m = (Mat2c() << 0, 1, 0, 0).finished();
  return m;
}
inline const Mat2c& sl2_f() {
  static const Mat2c m = (Mat2c() << 0, 0, 1, 0).finished();
  return m;
}
inline Vec3 sl2_components_re(const Mat2c& m) {
  return Vec3(m(0, 0).real(), m(0, 1).real(), m(1, 0).real());
}
inline cplx sl2_h_comp(const Mat2c& m) { return m(0, 0); }
inline cplx sl2_e_comp(const Mat2c& m) { return m(0, 1); }
inline cplx sl2_f_comp(const Mat2c& m) { return m(1, 0); }

// Eigenvalues of a 2x2 matrix that is self-adjoint w.r.t. some SPD metric
// (hence has real spectrum), via trace/determinant.
inline Vec2 real_eigenvalues_2x2(const Mat2& b) {
  const double tr = b.trace();
  const double det = b.determinant();
  double disc = tr * tr / 4.0 - det;
  if (disc < 0.0 && disc > -1e-12) disc = 0.0;
  const double s = std::sqrt(std::max(disc, 0.0));
  return Vec2(tr / 2.0 - s, tr / 2.0 + s);
}

// Nearest rotation matrix (polar factor); keeps numerically drifting frames
// inside SO(3) before log/exp maps.
inline Mat3 project_to_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0) {
    Mat3 flip = Mat3::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

// Rotation by angle about a coordinate axis (0,1,2), right-hand rule.
inline Mat3 axis_rotation(int axis, double angle) {
  Vec3 v = Vec3::Zero();
  v[axis] = 1.0;
  return Eigen::AngleAxisd(angle, v).toRotationMatrix();
}

}  // namespace hypcs
