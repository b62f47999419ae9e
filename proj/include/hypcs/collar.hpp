#pragma once

// Collar of an equidistant foliation in foliation-adapted coordinates
// (a, b, r): the ambient metric splits as I_r(a,b) + dr^2 with I_r given in
// closed form by the propagation matrices A_r.  The same chart carries the
// warped model at infinity, whose leaf metric is e^{2r} I_inf(a,b); both are
// exposed through the common CollarMetric interface so the frame and
// connection machinery runs unchanged on either.

#include <functional>

#include "hypcs/foliation.hpp"

namespace hypcs {

using LeafMetricFn = std::function<Mat2(double, double, double)>;  // (a,b,r) -> I_r
using EmbedFn = std::function<AmbientJet(double, double, double)>;  // leaf-r chart jet
using NormalFn = std::function<Vec3(double, double, double)>;       // unit normal = d/dr

struct CollarMetric {
  ChartSpec spec;
  double orient = 1.0;  // sign of da(d_a, d_b) relative to the oriented leaf
  LeafMetricFn leaf_metric;
  double fd_step = 1e-4;

  Mat3 metric3(double a, double b, double r) const {
    Mat3 g = Mat3::Identity();
    g.topLeftCorner<2, 2>() = leaf_metric(a, b, r);
    return g;
  }
};

struct CollarChart {
  ChartSpec spec;
  double orient = 1.0;
  std::function<Mat2(double, double)> I0;
  std::function<Mat2(double, double)> B0;
  EmbedFn embed;    // may be empty for synthetic collars
  NormalFn normal;  // may be empty for synthetic collars
  double fd_step = 1e-4;

  bool has_embedding() const { return static_cast<bool>(embed); }

  Mat2 leaf_metric_at(double a, double b, double r) const {
    return propagate_at(I0(a, b), B0(a, b), r).I;
  }

  CollarMetric hyperbolic_metric() const {
    CollarMetric m;
    m.spec = spec;
    m.orient = orient;
    m.fd_step = fd_step;
    auto i0 = I0;
    auto b0 = B0;
    m.leaf_metric = [i0, b0](double a, double b, double r) {
      return propagate_at(i0(a, b), b0(a, b), r).I;
    };
    return m;
  }

  // Warped model W: leaf metric e^{2r} I_inf with the same underlying chart.
  CollarMetric warped_metric() const {
    CollarMetric m;
    m.spec = spec;
    m.orient = orient;
    m.fd_step = fd_step;
    auto i0 = I0;
    auto b0 = B0;
    m.leaf_metric = [i0, b0](double a, double b, double r) -> Mat2 {
      const Mat2 iinf = metric_at_infinity_at(i0(a, b), b0(a, b)).I_inf;
      return std::exp(2.0 * r) * iinf;
    };
    return m;
  }
};

// Gridded metric data of one leaf plus first derivatives: spectral (or FD)
// along the chart axes, central differences of step fd_step radially.
struct MetricSlice {
  Mat2 I;
  Mat2 dI[3];  // derivative of I along (a, b, r)

  Mat3 G() const {
    Mat3 g = Mat3::Identity();
    g.topLeftCorner<2, 2>() = I;
    return g;
  }
  Mat3 dG(int axis) const {
    Mat3 g = Mat3::Zero();
    g.topLeftCorner<2, 2>() = dI[axis];
    return g;
  }
};

class MetricLeaf {
 public:
  MetricLeaf(const CollarMetric& m, const ChartDiff& diff, double r) : spec_(m.spec) {
    const int n0 = spec_.a0.n, n1 = spec_.a1.n;
    GridD comp[3];
    for (auto& g : comp) g.resize(n0, n1);
    GridD dr_comp[3];
    for (auto& g : dr_comp) g.resize(n0, n1);
    const double h = m.fd_step * std::max(1.0, std::abs(r));
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) {
        const double a = spec_.a0.node(i), b = spec_.a1.node(j);
        const Mat2 I = m.leaf_metric(a, b, r);
        const Mat2 Ip = m.leaf_metric(a, b, r + h);
        const Mat2 Im = m.leaf_metric(a, b, r - h);
        comp[0](i, j) = I(0, 0);
        comp[1](i, j) = 0.5 * (I(0, 1) + I(1, 0));
        comp[2](i, j) = I(1, 1);
        const Mat2 dr = (Ip - Im) / (2.0 * h);
        dr_comp[0](i, j) = dr(0, 0);
        dr_comp[1](i, j) = 0.5 * (dr(0, 1) + dr(1, 0));
        dr_comp[2](i, j) = dr(1, 1);
      }
    for (int c = 0; c < 3; ++c) {
      val_[c] = comp[c];
      d0_[c] = diff.along0(comp[c]);
      d1_[c] = diff.along1(comp[c]);
      dr_[c] = dr_comp[c];
    }
  }

  MetricSlice at(int i, int j) const {
    MetricSlice s;
    s.I << val_[0](i, j), val_[1](i, j), val_[1](i, j), val_[2](i, j);
    s.dI[0] << d0_[0](i, j), d0_[1](i, j), d0_[1](i, j), d0_[2](i, j);
    s.dI[1] << d1_[0](i, j), d1_[1](i, j), d1_[1](i, j), d1_[2](i, j);
    s.dI[2] << dr_[0](i, j), dr_[1](i, j), dr_[1](i, j), dr_[2](i, j);
    return s;
  }

  // Christoffel symbols Gamma^c_{ab} of I_r + dr^2 at a node.
  std::array<Mat3, 3> christoffel(int i, int j) const {
    const MetricSlice s = at(i, j);
    const Mat3 g = s.G();
    const Mat3 ginv = g.inverse();
    const Mat3 dg[3] = {s.dG(0), s.dG(1), s.dG(2)};
    std::array<Mat3, 3> gam{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          double sum = 0.0;
          for (int d = 0; d < 3; ++d)
            sum += 0.5 * ginv(c, d) * (dg[a](b, d) + dg[b](a, d) - dg[d](a, b));
          gam[c](a, b) = sum;
        }
    return gam;
  }

 private:
  ChartSpec spec_;
  GridD val_[3], d0_[3], d1_[3], dr_[3];
};

}  // namespace hypcs
