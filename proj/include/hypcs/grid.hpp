#pragma once

// Structured-grid utilities: periodic spectral differentiation matrices,
// finite-difference matrices for non-periodic axes, and tensor-product
// quadrature weights.  Gridded fields are stored as Eigen matrices with
// axis 0 along rows and axis 1 along columns.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hypcs/linalg.hpp"

namespace hypcs {

using GridD = Eigen::MatrixXd;
using GridC = Eigen::MatrixXcd;

struct Axis {
  int n = 0;
  bool periodic = true;
  double x0 = 0.0;
  double x1 = 1.0;  // for periodic axes the period; node spacing (x1-x0)/n

  double spacing() const { return periodic ? (x1 - x0) / n : (x1 - x0) / (n - 1); }
  double node(int i) const { return x0 + spacing() * i; }
};

namespace detail {

// Fornberg weights for the m-th derivative at point z from the given nodes.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = c[i][m];
  return out;
}

}  // namespace detail

// Differentiation matrix for the axis: spectral for periodic axes, 5-point
// finite differences (one-sided near the ends) otherwise.
inline Eigen::MatrixXd diff_matrix(const Axis& ax, int order = 1) {
  const int n = ax.n;
  if (n < 5) throw std::invalid_argument("diff_matrix: need at least 5 nodes");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  if (ax.periodic) {
    const double scale = 2.0 * pi / (ax.x1 - ax.x0);
    if (order == 1) {
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          if (k == j) continue;
          const double arg = pi * (k - j) / n;
          const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
          d(k, j) = (n % 2 == 0) ? 0.5 * sign / std::tan(arg) : 0.5 * sign / std::sin(arg);
        }
      d *= scale;
    } else if (order == 2) {
      const Eigen::MatrixXd d1 = diff_matrix(ax, 1);
      d = d1 * d1;
    } else {
      throw std::invalid_argument("diff_matrix: order must be 1 or 2");
    }
  } else {
    if (order > 2) throw std::invalid_argument("diff_matrix: order must be 1 or 2");
    const int width = 5;
    for (int k = 0; k < n; ++k) {
      int lo = std::max(0, std::min(k - width / 2, n - width));
      std::vector<double> nodes(width);
      for (int j = 0; j < width; ++j) nodes[j] = ax.node(lo + j);
      const auto w = detail::fd_weights(ax.node(k), nodes, order);
      for (int j = 0; j < width; ++j) d(k, lo + j) = w[j];
    }
  }
  return d;
}

inline Eigen::VectorXd quadrature_weights(const Axis& ax) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(ax.n, ax.spacing());
  if (!ax.periodic) {
    w[0] *= 0.5;
    w[ax.n - 1] *= 0.5;
  }
  return w;
}

struct ChartSpec {
  Axis a0{64, true, 0.0, 1.0};
  Axis a1{64, true, 0.0, 1.0};

  bool same_grid(const ChartSpec& o) const {
    return a0.n == o.a0.n && a1.n == o.a1.n && a0.periodic == o.a0.periodic &&
           a1.periodic == o.a1.periodic;
  }
};

// Cached derivative operators for a chart: d0 acts from the left, d1 from
// the right (transposed).
struct ChartDiff {
  Eigen::MatrixXd d0, d1t, d0_2, d1t_2;
  Eigen::VectorXd w0, w1;

  explicit ChartDiff(const ChartSpec& s)
      : d0(diff_matrix(s.a0, 1)),
        d1t(diff_matrix(s.a1, 1).transpose()),
        d0_2(diff_matrix(s.a0, 2)),
        d1t_2(diff_matrix(s.a1, 2).transpose()),
        w0(quadrature_weights(s.a0)),
        w1(quadrature_weights(s.a1)) {}

  GridD along0(const GridD& f) const { return d0 * f; }
  GridD along1(const GridD& f) const { return f * d1t; }
  GridD along0_2(const GridD& f) const { return d0_2 * f; }
  GridD along1_2(const GridD& f) const { return f * d1t_2; }

  double integrate(const GridD& f) const { return w0.dot(f * w1); }
};

// Gauss-Legendre nodes/weights on [a, b].
inline void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                           std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      const double dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
    }
    const double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = 0.5 * (a + b) + 0.5 * (b - a) * t;
    w[i] = (b - a) / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace hypcs
