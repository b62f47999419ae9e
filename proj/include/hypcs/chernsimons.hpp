#pragma once

// Chern-Simons 3-form machinery.  All densities are coefficients against
// da_r wedge dr: a 3-form evaluated on the coordinate triple (d_a, d_b, d_r)
// divided by orient * sqrt(det I_r).
//
// SO(3): cs(omega) = <omega wedge Omega> - (1/6) <omega wedge [omega wedge
// omega]> with the pairing -tr(ab)/(8 pi^2) and the constant-curvature
// curvature forms Omega^i_j = -eps^i wedge eps^j.
//
// PSL2(C): the frame-to-isometry identification turns a frame field into a
// developing map D; the pullback of the flat Chern-Simons form is computed
// from the Maurer-Cartan values mu = D^{-1} dD as
//   (density of 4 i pi^2 cs) = (i/2) tr(mu_a [mu_b, mu_r]) / (orient da).

#include "hypcs/cartan.hpp"

namespace hypcs {

// ---------------------------------------------------------------------------
// SO(3) side

// cs evaluated on a vector triple from the connection values om[i] = omega(v_i)
// and the curvature values curv[0] = Omega(v_2,v_3), curv[1] = Omega(v_1,v_3),
// curv[2] = Omega(v_1,v_2).
inline double so3_cs_value(const Mat3 om[3], const Mat3 curv[3]) {
  return ad_pairing(om[0], curv[0]) - ad_pairing(om[1], curv[1]) +
         ad_pairing(om[2], curv[2]) - ad_pairing(om[0], commutator(om[1], om[2]));
}

// Constant-curvature curvature value Omega(v, w) = -eps(v) eps(w)^T + eps(w) eps(v)^T.
inline Mat3 constant_curvature_value(const Vec3& eps_v, const Vec3& eps_w) {
  return -(eps_v * eps_w.transpose() - eps_w * eps_v.transpose());
}

inline double so3_cs_density(const CartanNode& n) {
  Mat3 om[3];
  Vec3 eps[3];
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = 1.0;
    om[axis] = n.omega_coord(e);
    eps[axis] = n.GM.transpose() * e;
  }
  const Mat3 curv[3] = {constant_curvature_value(eps[1], eps[2]),
                        constant_curvature_value(eps[0], eps[2]),
                        constant_curvature_value(eps[0], eps[1])};
  return so3_cs_value(om, curv) / (n.orient * n.da);
}

inline bool frame_is_adapted(const CartanNode& n, double tol = 1e-8) {
  return std::abs(n.M(2, 0)) < tol && std::abs(n.M(2, 1)) < tol &&
         std::abs(n.M(0, 2)) < tol && std::abs(n.M(1, 2)) < tol &&
         std::abs(n.M(2, 2) - 1.0) < tol;
}

// Reduced density (1/4 pi^2) K_r omega^1_2(d_r) for leaf-adapted frames,
// with K_r = det B_r - 1 by the Gauss equation.
inline double adapted_reduction_density(const CartanNode& n, double tol = 1e-8) {
  if (!frame_is_adapted(n, tol))
    throw std::domain_error("adapted_reduction: frame is not leaf-adapted");
  const double Kr = n.levi_civita_B().determinant() - 1.0;
  const Mat3 om_r = n.omega_coord(Vec3(0, 0, 1));
  // orientation factor of the frame coarea eps^1 wedge eps^2 against da
  const Vec3 e1 = n.GM.transpose() * Vec3(1, 0, 0);
  const Vec3 e2 = n.GM.transpose() * Vec3(0, 1, 0);
  const double w = (e1[0] * e2[1] - e1[1] * e2[0]) / (n.orient * n.da);
  return Kr * om_r(0, 1) * w / (4.0 * pi * pi);
}

// ---------------------------------------------------------------------------
// Gauge transformation terms

struct GaugeNode {
  Mat3 g;
  Mat3 dg[3];

  Mat3 mu(int axis) const { return g.transpose() * dg[axis]; }
};

class GaugeLeaf {
 public:
  GaugeLeaf(const FrameField& gauge, const ChartDiff& diff, const ChartSpec& spec, double r,
            double fd_step = 1e-4)
      : spec_(spec) {
    const int n0 = spec.a0.n, n1 = spec.a1.n;
    const double h = fd_step * std::max(1.0, std::abs(r));
    GridD val[9], dr[9];
    for (auto& g : val) g.resize(n0, n1);
    for (auto& g : dr) g.resize(n0, n1);
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) {
        const double a = spec.a0.node(i), b = spec.a1.node(j);
        const Mat3 m = gauge(a, b, r);
        const Mat3 mp = gauge(a, b, r + h);
        const Mat3 mm = gauge(a, b, r - h);
        for (int c = 0; c < 3; ++c)
          for (int k = 0; k < 3; ++k) {
            val[3 * c + k](i, j) = m(c, k);
            dr[3 * c + k](i, j) = (mp(c, k) - mm(c, k)) / (2.0 * h);
          }
      }
    for (int q = 0; q < 9; ++q) {
      val_[q] = val[q];
      d0_[q] = diff.along0(val[q]);
      d1_[q] = diff.along1(val[q]);
      dr_[q] = dr[q];
    }
  }

  GaugeNode node(int i, int j) const {
    GaugeNode n;
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 3; ++k) {
        n.g(c, k) = val_[3 * c + k](i, j);
        n.dg[0](c, k) = d0_[3 * c + k](i, j);
        n.dg[1](c, k) = d1_[3 * c + k](i, j);
        n.dg[2](c, k) = dr_[3 * c + k](i, j);
      }
    return n;
  }

 private:
  ChartSpec spec_;
  GridD val_[9], d0_[9], d1_[9], dr_[9];
};

// The boundary 2-form Theta = <Ad_{g^{-1}} omega wedge g^* mu> evaluated on
// coordinate pairs, and the Wess-Zumino density (1/6)<mu wedge [mu wedge mu]>.
struct GaugeTermValues {
  double theta01 = 0.0;  // Theta(d_a, d_b)
  double theta02 = 0.0;  // Theta(d_a, d_r)
  double theta12 = 0.0;  // Theta(d_b, d_r)
  double wz_density = 0.0;
};

inline GaugeTermValues gauge_transform_terms_at(const CartanNode& ref, const GaugeNode& gn) {
  Mat3 om[3], ad_om[3], mu[3];
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = 1.0;
    om[axis] = ref.omega_coord(e);
    ad_om[axis] = gn.g.transpose() * om[axis] * gn.g;
    mu[axis] = gn.mu(axis);
  }
  auto theta = [&](int x, int y) {
    return ad_pairing(ad_om[x], mu[y]) - ad_pairing(ad_om[y], mu[x]);
  };
  GaugeTermValues out;
  out.theta01 = theta(0, 1);
  out.theta02 = theta(0, 2);
  out.theta12 = theta(1, 2);
  out.wz_density = ad_pairing(mu[0], commutator(mu[1], mu[2])) / (ref.orient * ref.da);
  return out;
}

// ---------------------------------------------------------------------------
// PSL2(C) side: developing map and its Maurer-Cartan values

inline Mat2c developing_matrix(const CollarChart& chart, const FrameField& field, double a,
                               double b, double r) {
  if (!chart.has_embedding())
    throw std::domain_error("developing_matrix: collar has no ambient embedding");
  const AmbientJet jet = chart.embed(a, b, r);
  Mat3 J;
  J.col(0) = jet.t0;
  J.col(1) = jet.t1;
  J.col(2) = chart.normal(a, b, r);
  OrthonormalFrame3 f;
  f.base = jet.p;
  f.components = J * field(a, b, r);
  return frame_to_isometry(f).m;
}

namespace detail {
// Nearest-sign continuation of the two-fold matrix lift.
inline Mat2c sign_match(const Mat2c& m, const Mat2c& reference) {
  const double same = (m - reference).cwiseAbs().sum();
  const double flip = (m + reference).cwiseAbs().sum();
  return (flip < same) ? Mat2c(-m) : m;
}
}  // namespace detail

struct DevelopingNode {
  Mat2c D;
  Mat2c mu[3];  // D^{-1} dD along (a, b, r)
};

class DevelopingLeaf {
 public:
  DevelopingLeaf(const CollarChart& chart, const FrameField& field, double r,
                 double fd_step = 1e-4)
      : spec_(chart.spec), orient_(chart.orient) {
    const int n0 = spec_.a0.n, n1 = spec_.a1.n;
    nodes_.resize(static_cast<size_t>(n0) * n1);
    da_.resize(n0, n1);
    const double hr = fd_step * std::max(1.0, std::abs(r));
    const double ha = fd_step, hb = fd_step;
    Mat2c prev = Mat2c::Identity();
    bool have_prev = false;
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) {
        const double a = spec_.a0.node(i), b = spec_.a1.node(j);
        Mat2c D = developing_matrix(chart, field, a, b, r);
        if (have_prev) {
          D = detail::sign_match(D, prev);  // row-major sweep keeps the lift continuous
        } else {
          IsometryMatrix g(D);
          g.normalize_sign();
          D = g.m;
          have_prev = true;
        }
        prev = D;

        DevelopingNode node;
        node.D = D;
        const Mat2c Dinv = D.inverse();
        auto fd = [&](double da_, double db_, double dr_, double h) {
          const Mat2c plus = detail::sign_match(
              developing_matrix(chart, field, a + da_, b + db_, r + dr_), D);
          const Mat2c minus = detail::sign_match(
              developing_matrix(chart, field, a - da_, b - db_, r - dr_), D);
          return Mat2c(Dinv * (plus - minus) / (2.0 * h));
        };
        node.mu[0] = fd(ha, 0, 0, ha);
        node.mu[1] = fd(0, hb, 0, hb);
        node.mu[2] = fd(0, 0, hr, hr);
        nodes_[static_cast<size_t>(i) * n1 + j] = node;
        da_(i, j) = propagate_at(chart.I0(a, b), chart.B0(a, b), r).da;
      }
  }

  const DevelopingNode& node(int i, int j) const {
    return nodes_[static_cast<size_t>(i) * spec_.a1.n + j];
  }

  // density of 4 i pi^2 sigma^* cs against da_r wedge dr
  cplx psl2_density(int i, int j) const {
    const DevelopingNode& n = node(i, j);
    const cplx t = (n.mu[0] * (n.mu[1] * n.mu[2] - n.mu[2] * n.mu[1])).trace();
    return cplx(0.0, 0.5) * t / (orient_ * da_(i, j));
  }

 private:
  ChartSpec spec_;
  double orient_;
  std::vector<DevelopingNode> nodes_;
  GridD da_;
};

// ---------------------------------------------------------------------------
// Decomposition of the PSL2(C) form: pointwise residuals of
//   (4 i pi^2 cs density) = 1 - (1/4) dXi + i pi^2 (SO(3) cs density)
// with Xi = sum_cyc eps^i wedge omega^j_k, whose leaf restriction equals
// -(H_bar - H^s) da.

inline double xi_value(const CartanNode& n, int axis_x, int axis_y) {
  Vec3 ex = Vec3::Zero(), ey = Vec3::Zero();
  ex[axis_x] = 1.0;
  ey[axis_y] = 1.0;
  const Vec3 ep_x = n.GM.transpose() * ex;
  const Vec3 ep_y = n.GM.transpose() * ey;
  const Mat3 om_x = n.omega_coord(ex);
  const Mat3 om_y = n.omega_coord(ey);
  double v = 0.0;
  for (auto [i, j, k] : {std::array<int, 3>{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})
    v += ep_x[i] * om_y(j, k) - ep_y[i] * om_x(j, k);
  return v;
}

// Residual of the leaf identity  -Xi(d_a, d_b) / (orient da) = H_bar - H^s.
inline double exact_form_leaf_residual(const CartanNode& n) {
  const double lhs = -xi_value(n, 0, 1) / (n.orient * n.da);
  const double rhs = n.levi_civita_B().trace() - weitzenbock_shape(n).H;
  return std::abs(lhs - rhs);
}

class DecompositionSlice {
 public:
  DecompositionSlice(const CollarChart& chart, const FrameField& field, const ChartDiff& diff,
                     double r, double fd_step = 1e-4)
      : spec_(chart.spec),
        metric_(chart.hyperbolic_metric()),
        h_(fd_step * std::max(1.0, std::abs(r))),
        at_(metric_, field, diff, r),
        up_(metric_, field, diff, r + h_),
        dn_(metric_, field, diff, r - h_),
        dev_(chart, field, r, fd_step) {
    const int n0 = spec_.a0.n, n1 = spec_.a1.n;
    GridD xi_br(n0, n1), xi_ar(n0, n1);
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) {
        const CartanNode n = at_.node(i, j);
        xi_ar(i, j) = xi_value(n, 0, 2);
        xi_br(i, j) = xi_value(n, 1, 2);
      }
    d0_xi_br_ = diff.along0(xi_br);
    d1_xi_ar_ = diff.along1(xi_ar);
  }

  struct Residuals {
    cplx lhs;            // psl2 density
    cplx rhs_wedge;      // via the finite-difference exterior derivative of Xi
    cplx rhs_curvature;  // via the mean-curvature form of the exact term
    double r_wedge() const { return std::abs(lhs - rhs_wedge); }
    double r_curvature() const { return std::abs(lhs - rhs_curvature); }
  };

  Residuals at(int i, int j) const {
    const CartanNode n = at_.node(i, j);
    const CartanNode nu = up_.node(i, j);
    const CartanNode nd = dn_.node(i, j);

    const double dr_xi_ab = (xi_value(nu, 0, 1) - xi_value(nd, 0, 1)) / (2.0 * h_);
    // leaf restriction of Xi written through the mean curvatures
    auto leaf_xi = [](const CartanNode& m) {
      return -(m.levi_civita_B().trace() - weitzenbock_shape(m).H) * m.orient * m.da;
    };
    const double dr_xi_ab_curv = (leaf_xi(nu) - leaf_xi(nd)) / (2.0 * h_);

    const double dxi_tangential = d0_xi_br_(i, j) - d1_xi_ar_(i, j);
    const double so3 = so3_cs_density(n);

    Residuals out;
    out.lhs = dev_.psl2_density(i, j);
    const double norm = n.orient * n.da;
    out.rhs_wedge = cplx(1.0 - 0.25 * (dxi_tangential + dr_xi_ab) / norm, pi * pi * so3);
    out.rhs_curvature =
        cplx(1.0 - 0.25 * (dxi_tangential + dr_xi_ab_curv) / norm, pi * pi * so3);
    return out;
  }

  const CartanLeaf& base_leaf() const { return at_; }

 private:
  ChartSpec spec_;
  CollarMetric metric_;
  double h_;
  CartanLeaf at_, up_, dn_;
  DevelopingLeaf dev_;
  GridD d0_xi_br_, d1_xi_ar_;
};

}  // namespace hypcs
