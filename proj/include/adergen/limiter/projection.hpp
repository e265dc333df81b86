#pragma once

#include <vector>

#include <Eigen/Dense>

#include "adergen/dg/basis.hpp"
#include "adergen/dg/config.hpp"

namespace adergen::limiter {

/// 1D operators between the nodal DG basis (n = N+1 nodes) and m = 2N+1 equal
/// subcells. Row-major.
struct Projection1D {
  int n = 0, m = 0;
  std::vector<double> P;  // m x n: subcell means of each basis function
  std::vector<double> R;  // n x m: conservation-constrained least-squares inverse
};

inline Projection1D projection_1d(const dg::BasisTables& b) {
  Projection1D p;
  p.n = b.n;
  p.m = 2 * b.N + 1;
  const int n = p.n, m = p.m;
  // n-point Gauss is exact for the degree-N basis on each subcell.
  Eigen::MatrixXd P(m, n);
  for (int a = 0; a < m; ++a) {
    for (int j = 0; j < n; ++j) P(a, j) = 0.0;
    for (int g = 0; g < n; ++g) {
      auto phi = dg::lagrange_values(b.nodes, (a + b.nodes[g]) / m);
      for (int j = 0; j < n; ++j) P(a, j) += b.weights[g] * phi[j];
    }
  }
  // min |P x - y|^2 subject to sum_j w_j x_j = mean(y), solved via the KKT system.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + 1, n + 1);
  K.topLeftCorner(n, n) = P.transpose() * P;
  for (int j = 0; j < n; ++j) K(j, n) = K(n, j) = b.weights[j];
  Eigen::MatrixXd rhs(n + 1, m);
  rhs.topRows(n) = P.transpose();
  rhs.row(n).setConstant(1.0 / m);
  Eigen::MatrixXd sol = K.fullPivLu().solve(rhs);

  p.P.resize(m * n);
  p.R.resize(n * m);
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < n; ++j) p.P[a * n + j] = P(a, j);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < m; ++a) p.R[j * m + a] = sol(j, a);
  return p;
}

/// Apply a rows x cols row-major matrix along `axis` of a [point][qPad] array
/// whose per-axis extents are `dims`. Sums run over the old axis index in
/// ascending order.
inline void apply_along_axis(const double* in, const int* dims, int nd, int axis, const double* M, int rows,
                             int qPad, double* out) {
  int lower = 1, upper = 1;
  for (int a = 0; a < axis; ++a) lower *= dims[a];
  for (int a = axis + 1; a < nd; ++a) upper *= dims[a];
  const int cols = dims[axis];
  for (int u = 0; u < upper; ++u)
    for (int r = 0; r < rows; ++r)
      for (int l = 0; l < lower; ++l) {
        double* o = out + ((u * rows + r) * lower + l) * qPad;
        for (int v = 0; v < qPad; ++v) o[v] = 0.0;
        for (int k = 0; k < cols; ++k) {
          const double c = M[r * cols + k];
          const double* x = in + ((u * cols + k) * lower + l) * qPad;
          for (int v = 0; v < qPad; ++v) o[v] += c * x[v];
        }
      }
}

/// Tensor-product application of a 1D operator along the first `nd` axes.
inline void apply_tensor(const double* in, int nd, int from, int to, const double* M, int qPad, double* out) {
  if (nd == 0) {
    for (int v = 0; v < qPad; ++v) out[v] = in[v];
    return;
  }
  int dims[3] = {from, from, from};
  std::vector<double> a(in, in + static_cast<std::size_t>(ipow(from, nd)) * qPad), b;
  for (int axis = 0; axis < nd; ++axis) {
    int size = 1;
    for (int i = 0; i < nd; ++i) size *= (i == axis ? to : dims[i]);
    b.assign(static_cast<std::size_t>(size) * qPad, 0.0);
    apply_along_axis(a.data(), dims, nd, axis, M, to, qPad, b.data());
    dims[axis] = to;
    a.swap(b);
  }
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
}

/// Dense d-dimensional matrices (Kronecker products), for verification.
struct ProjectionPair {
  int rowsP = 0, colsP = 0;
  Eigen::MatrixXd P;  // (2N+1)^d x (N+1)^d
  Eigen::MatrixXd R;  // (N+1)^d x (2N+1)^d
};

inline ProjectionPair compute_projection_matrices(int N, int d) {
  auto b = dg::precompute_basis(N);
  auto p = projection_1d(b);
  Eigen::MatrixXd P1(p.m, p.n), R1(p.n, p.m);
  for (int a = 0; a < p.m; ++a)
    for (int j = 0; j < p.n; ++j) {
      P1(a, j) = p.P[a * p.n + j];
      R1(j, a) = p.R[j * p.m + a];
    }
  auto kron = [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
  };
  ProjectionPair out;
  out.P = P1;
  out.R = R1;
  // Index x fastest: the slower axis is the outer Kronecker factor.
  for (int i = 1; i < d; ++i) {
    out.P = kron(P1, out.P);
    out.R = kron(R1, out.R);
  }
  out.rowsP = static_cast<int>(out.P.rows());
  out.colsP = static_cast<int>(out.P.cols());
  return out;
}

}  // namespace adergen::limiter
