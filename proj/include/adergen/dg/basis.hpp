#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace adergen::dg {

/// Gauss-Legendre nodes and weights on [0,1], ascending.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    // Legendre roots come out descending in t; store ascending on [0,1].
    x[n - 1 - i] = 0.5 * (1.0 + t);
    w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

/// Lagrange basis on the given nodes evaluated at x.
inline std::vector<double> lagrange_values(const std::vector<double>& nodes, double x) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> phi(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (k != j) phi[j] *= (x - nodes[k]) / (nodes[j] - nodes[k]);
  return phi;
}

/// Operators of the nodal Gauss-Legendre basis of order N on the unit interval.
///
/// Matrices marked column-major are stored for the matmul convention
/// C(i,j) = sum_k A(i + k*ldA) * B(k + j*ldB).
struct BasisTables {
  int N = 0;
  int n = 0;
  std::vector<double> nodes, weights;
  std::vector<double> D;       // row-major, D[i*n+j] = phi_j'(x_i)
  std::vector<double> FL, FR;  // phi_j(0), phi_j(1)
  std::vector<double> dudxT;   // column-major B(j,i) = D[i][j]: derivative of nodal values
  std::vector<double> Kvol;    // column-major B(i,m) = w_i D[i][m] / w_m: weak volume term
  std::vector<double> sL, sR;  // FL[m]/w_m, FR[m]/w_m
  std::vector<double> K1;      // row-major time stiffness K1[k][l] = phi_k(1)phi_l(1) - w_l phi_k'(x_l)
  std::vector<double> iK1W;    // row-major K1^{-1}[k][l] * w_l

  int nodes_per_cell(int d) const {
    int r = 1;
    for (int i = 0; i < d; ++i) r *= n;
    return r;
  }
};

inline BasisTables precompute_basis(int N) {
  if (N < 1 || N > 9) throw std::invalid_argument("order must be in 1..9");
  BasisTables b;
  b.N = N;
  b.n = N + 1;
  const int n = b.n;
  gauss_legendre(n, b.nodes, b.weights);

  std::vector<double> lambda(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (k != j) lambda[j] /= (b.nodes[j] - b.nodes[k]);
  b.D.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      b.D[i * n + j] = (lambda[j] / lambda[i]) / (b.nodes[i] - b.nodes[j]);
      diag -= b.D[i * n + j];
    }
    b.D[i * n + i] = diag;
  }
  b.FL = lagrange_values(b.nodes, 0.0);
  b.FR = lagrange_values(b.nodes, 1.0);

  b.dudxT.assign(n * n, 0.0);
  b.Kvol.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b.dudxT[j + i * n] = b.D[i * n + j];
      b.Kvol[i + j * n] = b.weights[i] * b.D[i * n + j] / b.weights[j];
    }
  b.sL.resize(n);
  b.sR.resize(n);
  for (int m = 0; m < n; ++m) {
    b.sL[m] = b.FL[m] / b.weights[m];
    b.sR[m] = b.FR[m] / b.weights[m];
  }

  Eigen::MatrixXd K1(n, n);
  b.K1.resize(n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      K1(k, l) = b.FR[k] * b.FR[l] - b.weights[l] * b.D[l * n + k];
      b.K1[k * n + l] = K1(k, l);
    }
  Eigen::MatrixXd iK1 = K1.fullPivLu().inverse();
  b.iK1W.resize(n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) b.iK1W[k * n + l] = iK1(k, l) * b.weights[l];
  return b;
}

/// Plain-text dump for debugging.
inline std::string dump(const BasisTables& b) {
  std::string out;
  char buf[64];
  auto row = [&](const char* name, const std::vector<double>& v) {
    out += name;
    for (double x : v) {
      std::snprintf(buf, sizeof buf, " %.17g", x);
      out += buf;
    }
    out += "\n";
  };
  out += "N " + std::to_string(b.N) + "\n";
  row("nodes", b.nodes);
  row("weights", b.weights);
  row("D", b.D);
  row("FL", b.FL);
  row("FR", b.FR);
  row("iK1W", b.iK1W);
  return out;
}

}  // namespace adergen::dg
