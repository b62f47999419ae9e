#pragma once

// Concrete collar scenarios.
//
// Tube: the solid-torus quotient of the half space by a loxodromic with
// translation length L and rotation angle phi; the base surface is the
// Fermi tube of radius u0 about the core geodesic, and the chart uses unit
// square parameters (a, b) with s = L a, theta = 2 pi b + phi a, so the
// quotient identification becomes plain double periodicity.
//
// Fuchsian band: the equidistant collar of a totally geodesic vertical
// plane (B = 0) around the same core geodesic; the band direction is not
// periodic.

#include "hypcs/collar.hpp"

namespace hypcs {

struct TubeParams {
  double u0 = 1.0;   // Fermi radius of the base tube
  double L = 2.0;    // core translation length
  double phi = 0.0;  // core rotation angle
  int n0 = 64;
  int n1 = 64;
  double fd_step = 1e-4;
};

inline CollarChart tube_collar(const TubeParams& p) {
  if (!(p.u0 > 0.0) || !(p.L > 0.0)) throw std::invalid_argument("tube_collar: u0, L must be > 0");
  CollarChart c;
  c.spec.a0 = Axis{p.n0, true, 0.0, 1.0};
  c.spec.a1 = Axis{p.n1, true, 0.0, 1.0};
  c.fd_step = p.fd_step;

  const FermiChart fermi{p.L, p.phi};
  const double u0 = p.u0, L = p.L, phi = p.phi;

  c.embed = [fermi, u0, L, phi](double a, double b, double r) {
    const double s = L * a, th = 2.0 * pi * b + phi * a;
    AmbientJet jet;
    jet.p = fermi_embed(fermi, u0 + r, s, th);
    const auto t = fermi_tangents(fermi, u0 + r, s, th);
    jet.t0 = L * t.d_s + phi * t.d_theta;
    jet.t1 = 2.0 * pi * t.d_theta;
    return jet;
  };
  c.normal = [fermi, u0, L, phi](double a, double b, double r) {
    const double s = L * a, th = 2.0 * pi * b + phi * a;
    const auto t = fermi_tangents(fermi, u0 + r, s, th);
    const auto p = fermi_embed(fermi, u0 + r, s, th);
    return Vec3(t.d_u / norm(p, t.d_u));
  };

  const double ch = std::cosh(u0), sh = std::sinh(u0);
  const double th_u = std::tanh(u0), cth_u = 1.0 / th_u;
  Mat2 I0, B0;
  I0 << L * L * ch * ch + phi * phi * sh * sh, 2.0 * pi * phi * sh * sh,  //
      2.0 * pi * phi * sh * sh, 4.0 * pi * pi * sh * sh;
  B0 << -th_u, 0.0,  //
      (phi / (2.0 * pi)) * (th_u - cth_u), -cth_u;
  c.I0 = [I0](double, double) { return I0; };
  c.B0 = [B0](double, double) { return B0; };

  // chart handedness relative to the outward-oriented leaves
  {
    const auto jet = c.embed(0.1, 0.2, 0.0);
    const Vec3 nu = c.normal(0.1, 0.2, 0.0);
    c.orient = (jet.t0.cross(jet.t1).dot(nu) > 0.0) ? 1.0 : -1.0;
  }
  return c;
}

inline SurfaceChart tube_surface(const TubeParams& p, double r = 0.0) {
  const CollarChart c = tube_collar(p);
  SurfaceChart s;
  s.spec = c.spec;
  auto embed = c.embed;
  s.fn = [embed, r](double a, double b) { return embed(a, b, r); };
  // outward normal: flip the cross-product normal on left-handed charts
  s.normal_sign = c.orient;
  return s;
}

struct FuchsianParams {
  double width = 1.0;  // band |u'| <= width along the plane
  double L = 2.0;      // translation length of the quotient cylinder
  int n0 = 64;
  int n1 = 64;
  double fd_step = 1e-4;
};

inline CollarChart fuchsian_collar(const FuchsianParams& p) {
  CollarChart c;
  c.spec.a0 = Axis{p.n0, false, -p.width, p.width};
  c.spec.a1 = Axis{p.n1, true, 0.0, 1.0};
  c.fd_step = p.fd_step;
  const double L = p.L;

  // Equidistant leaves of the vertical plane x2 = 0: the point of the plane
  // at band coordinate u' and length coordinate sigma flows to
  //   (e^{L sigma} tanh u', t0 tanh r, t0 sech r),   t0 = e^{L sigma} sech u'.
  c.embed = [L](double u, double b, double r) {
    const double es = std::exp(L * b);
    const double thu = std::tanh(u), seu = 1.0 / std::cosh(u);
    const double thr = std::tanh(r), ser = 1.0 / std::cosh(r);
    AmbientJet jet;
    jet.p = HyperbolicPoint{es * thu, es * seu * thr, es * seu * ser};
    jet.t0 = es * Vec3(seu * seu, -seu * thu * thr, -seu * thu * ser);
    jet.t1 = L * jet.p.coords();
    return jet;
  };
  c.normal = [L](double u, double b, double r) {
    const double es = std::exp(L * b);
    const double seu = 1.0 / std::cosh(u);
    const double thr = std::tanh(r), ser = 1.0 / std::cosh(r);
    const Vec3 v = es * seu * Vec3(0.0, ser * ser, -ser * thr);
    const double t = es * seu * ser;
    return Vec3(v / (v.norm() / t));
  };

  c.I0 = [L](double u, double) {
    Mat2 m;
    m << 1.0, 0.0, 0.0, L * L * std::cosh(u) * std::cosh(u);
    return m;
  };
  c.B0 = [](double, double) { return Mat2::Zero(); };
  {
    const auto jet = c.embed(0.1, 0.2, 0.0);
    const Vec3 nu = c.normal(0.1, 0.2, 0.0);
    c.orient = (jet.t0.cross(jet.t1).dot(nu) > 0.0) ? 1.0 : -1.0;
  }
  return c;
}

}  // namespace hypcs
