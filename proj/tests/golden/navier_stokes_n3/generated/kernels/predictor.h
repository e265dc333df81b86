// Generated by adergen for navier_stokes_n3. Do not edit.
// Space-time predictor (picard) and extrapolation to the faces.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <utility>

#include "adergen/dg/user_solver.hpp"
#include "constants.h"
#include "gradients.h"

namespace navier_stokes_n3::kernels {

namespace predictor_detail {

alignas(8) inline constexpr double weights[4] = {
    0.17392742256872687, 0.3260725774312732, 0.3260725774312732, 0.17392742256872687};
alignas(8) inline constexpr double FL[4] = {
    1.5267881254572666, -0.8136324494869271, 0.40076152031165047, -0.11391719628198999};
alignas(8) inline constexpr double FR[4] = {
    -0.11391719628199003, 0.40076152031165074, -0.8136324494869279, 1.5267881254572673};
// derivative operator, column-major
alignas(8) inline constexpr double dudxT[16] = {
    -6.664000472704567, 9.720308831370396, -4.217564696990358, 1.1612563383245296,
    -1.5151152295984676, -0.7688287844464168, 2.941340462561433, -0.6573964485165487,
    0.6573964485165484, -2.9413404625614343, 0.7688287844464177, 1.5151152295984684,
    -1.1612563383245287, 4.217564696990358, -9.720308831370392, 6.664000472704563};
// inverse time stiffness times weights, row-major
alignas(8) inline constexpr double iK1W[16] = {
    0.09504009418605698, -0.04706081057725054, 0.03308409318165676, -0.011631532587489078,
    0.17720653136163111, 0.1906741915282286, -0.055518331415063356, 0.017647086732774767,
    0.17810350811242537, 0.3263151032211518, 0.19067419152822895, -0.025102281069377726,
    0.16940618935282922, 0.3339017452341205, 0.3322201270240203, 0.09504009418605693};

inline void derivative0(const double* A, const double* op, double* C) {
  for (int u = 0; u < 4; ++u)
    for (int l = 0; l < 1; ++l) {
      const int base = (l + u * 4) * 4;
      const double* a = A + base;
      double* c = C + base;
// derivative0: C(4x4) = A(4x4) * B(4x4)
for (int j = 0; j < 4; ++j) {
  for (int i = 0; i < 4; ++i) c[i + j * 4] = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double bkj = op[k + j * 4];
    for (int i = 0; i < 4; ++i) c[i + j * 4] += a[i + k * 4] * bkj;
  }
}
    }
}

inline void derivative1(const double* A, const double* op, double* C) {
  for (int u = 0; u < 1; ++u)
    for (int l = 0; l < 4; ++l) {
      const int base = (l + u * 16) * 4;
      const double* a = A + base;
      double* c = C + base;
// derivative1: C(4x4) += A(4x4) * B(4x4)
for (int j = 0; j < 4; ++j) {
  for (int k = 0; k < 4; ++k) {
    const double bkj = op[k + j * 4];
    for (int i = 0; i < 4; ++i) c[i + j * 16] += a[i + k * 16] * bkj;
  }
}
    }
}

// F[dir][node][nVarPad]; padding lanes are never written.
inline void evalFlux(const adergen::UserSolver& user, const double* Q, const double* gradQ, double* flx) {
  (void)gradQ;
{
  double gradPoint[8];
  double* F[2];
  for (int i = 0; i < 16; i++) {
    for (int dir = 0; dir < 2; ++dir)
      for (int v = 0; v < 4; ++v) gradPoint[dir * 4 + v] = gradQ[dir * 64 + i * 4 + v];
    F[0] = flx+i*4;
    F[1] = flx+i*4+64;
    user.viscousFlux(Q+i*4, gradPoint, F);
  }
}
}

// R = -1/h sum_dir d/dx_dir F_dir (+ S - B gradQ)
inline void spaceOperator(const adergen::UserSolver& user, const double* Q, double invh, double h, double* flx,
                          double* grad, double* R) {
  (void)h;
  gradients(Q, h, grad);
  evalFlux(user, Q, grad, flx);
  derivative0(flx + 0, dudxT, R);
  derivative1(flx + 64, dudxT, R);
  for (int e = 0; e < nVolume; ++e) R[e] = -invh * R[e];
}

// Picard iteration on the space-time DOFs q[t][node][nVarPad].
inline int picard(const adergen::UserSolver& user, const double* luh, double dt, double h, double* qhi, double* fhi,
                  double* shi) {
  const double invh = 1.0 / h;
double q[256] __attribute__((aligned(8)));
double R[256] __attribute__((aligned(8)));
double flx[128] __attribute__((aligned(8))) = {0.};
double grad[128] __attribute__((aligned(8))) = {0.};
  double scale = 1.0;
  for (int e = 0; e < nVolume; ++e) scale = std::max(scale, std::abs(luh[e]));
  for (int t = 0; t < nDof; ++t) std::copy(luh, luh + nVolume, q + t * nVolume);

  int iterations = 0;
  double residual = 0.0;
  bool finite = true;
  for (int it = 0; it < 8 && finite; ++it) {
    for (int l = 0; l < nDof; ++l) spaceOperator(user, q + l * nVolume, invh, h, flx, grad, R + l * nVolume);
    residual = 0.0;
    for (int k = 0; k < nDof; ++k)
      for (int e = 0; e < nVolume; ++e) {
        double acc = 0.0;
        for (int l = 0; l < nDof; ++l) acc += iK1W[k * nDof + l] * R[l * nVolume + e];
        const double next = luh[e] + dt * acc;
        const double diff = std::abs(next - q[k * nVolume + e]);
        if (!std::isfinite(diff)) finite = false;
        residual = std::max(residual, diff);
        q[k * nVolume + e] = next;
      }
    iterations = it + 1;
    if (residual <= 1e-10 * scale) break;
  }
  if (!finite || !(residual <= 1e-06 * scale)) iterations = -1;

  if (iterations >= 0) {
    std::fill(qhi, qhi + nVolume, 0.0);
    std::fill(fhi, fhi + nDim * nVolume, 0.0);
    std::fill(shi, shi + nVolume, 0.0);
    for (int l = 0; l < nDof; ++l) {
      const double wl = weights[l];
      const double* ql = q + l * nVolume;
      for (int e = 0; e < nVolume; ++e) qhi[e] += wl * ql[e];
      gradients(ql, h, grad);
      evalFlux(user, ql, grad, flx);
      for (int e = 0; e < nDim * nVolume; ++e) fhi[e] += wl * flx[e];
    }
  }




  return iterations;
}


inline void extrapolate(const double* qhi, const double* fhi, double* qhbnd, double* fhbnd) {
  {
    // face 0
    double* qb = qhbnd + 0;
    double* fb = fhbnd + 0;
    const double* fd = fhi + 0;
    for (int fn = 0; fn < nFaceNodes; ++fn) {
      const int base = fn % 1 + (fn / 1) * 4;
      for (int v = 0; v < nVarPad; ++v) {
        double sq = 0.0, sf = 0.0;
        for (int j = 0; j < nDof; ++j) {
          sq += FL[j] * qhi[(base + j * 1) * nVarPad + v];
          sf += FL[j] * fd[(base + j * 1) * nVarPad + v];
        }
        qb[fn * nVarPad + v] = sq;
        fb[fn * nVarPad + v] = sf;
      }
    }
  }
  {
    // face 1
    double* qb = qhbnd + 16;
    double* fb = fhbnd + 16;
    const double* fd = fhi + 0;
    for (int fn = 0; fn < nFaceNodes; ++fn) {
      const int base = fn % 1 + (fn / 1) * 4;
      for (int v = 0; v < nVarPad; ++v) {
        double sq = 0.0, sf = 0.0;
        for (int j = 0; j < nDof; ++j) {
          sq += FR[j] * qhi[(base + j * 1) * nVarPad + v];
          sf += FR[j] * fd[(base + j * 1) * nVarPad + v];
        }
        qb[fn * nVarPad + v] = sq;
        fb[fn * nVarPad + v] = sf;
      }
    }
  }
  {
    // face 2
    double* qb = qhbnd + 32;
    double* fb = fhbnd + 32;
    const double* fd = fhi + 64;
    for (int fn = 0; fn < nFaceNodes; ++fn) {
      const int base = fn % 4 + (fn / 4) * 16;
      for (int v = 0; v < nVarPad; ++v) {
        double sq = 0.0, sf = 0.0;
        for (int j = 0; j < nDof; ++j) {
          sq += FL[j] * qhi[(base + j * 4) * nVarPad + v];
          sf += FL[j] * fd[(base + j * 4) * nVarPad + v];
        }
        qb[fn * nVarPad + v] = sq;
        fb[fn * nVarPad + v] = sf;
      }
    }
  }
  {
    // face 3
    double* qb = qhbnd + 48;
    double* fb = fhbnd + 48;
    const double* fd = fhi + 64;
    for (int fn = 0; fn < nFaceNodes; ++fn) {
      const int base = fn % 4 + (fn / 4) * 16;
      for (int v = 0; v < nVarPad; ++v) {
        double sq = 0.0, sf = 0.0;
        for (int j = 0; j < nDof; ++j) {
          sq += FR[j] * qhi[(base + j * 4) * nVarPad + v];
          sf += FR[j] * fd[(base + j * 4) * nVarPad + v];
        }
        qb[fn * nVarPad + v] = sq;
        fb[fn * nVarPad + v] = sf;
      }
    }
  }
}

}  // namespace predictor_detail

/// Returns the Picard iteration count (0 for the linear variants) or -1 on
/// non-convergence or non-finite values.
inline int spaceTimePredictor(const adergen::UserSolver& user, const double* luh, double dt, double h, double* qhi,
                              double* fhi, double* shi, double* qhbnd, double* fhbnd) {
  using namespace predictor_detail;
  const int iterations = picard(user, luh, dt, h, qhi, fhi, shi);
  if (iterations < 0) return -1;
  extrapolate(qhi, fhi, qhbnd, fhbnd);
  for (int e = 0; e < nVolume; ++e)
    if (!std::isfinite(qhi[e])) return -1;
  return iterations;
}

}  // namespace navier_stokes_n3::kernels
