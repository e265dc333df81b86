// Generated by adergen for euler_limiting_n3. Do not edit.
// Projections between the DG polynomial and the 7^2 subcell means.
#pragma once

#include <cstdlib>
#include <cstring>

#include "constants.h"

namespace euler_limiting_n3::kernels {

constexpr int nSub = 7;
constexpr int nSubcells = 49;
constexpr int nSubfaces = 7;

namespace projection_detail {

// subcell means of each basis function, 7 x 4 row-major
alignas(8) inline constexpr double P[28] = {
    1.00840412958707, -0.027232255561049953, 0.027326746726969754, -0.008498620752989714,
    0.2965527299792926, 0.8558585292698164, -0.2037133744072703, 0.051302115158161306,
    -0.025277805645814402, 0.9509724382398977, 0.09240311484062434, -0.018097747434707545,
    -0.0868928429099236, 0.5868928429099237, 0.5868928429099236, -0.08689284290992366,
    -0.018097747434707517, 0.09240311484062423, 0.9509724382398977, -0.025277805645814402,
    0.051302115158161264, -0.20371337440727022, 0.8558585292698165, 0.2965527299792927,
    -0.00849862075298981, 0.027326746726970087, -0.02723225556105073, 1.0084041295870705};
// conservative least-squares inverse, 4 x 7 row-major
alignas(8) inline constexpr double R[28] = {
    0.9169956725831679, 0.20459098461566427, -0.08164836037655057, -0.0952725985334682,
    0.010168034004919753, 0.08112330109862141, -0.035957033392354856, -0.08126052667945319,
    0.42068967678489927, 0.47345601904641704, 0.2698757731366426, 0.002786212087118143,
    -0.13497539107061368, 0.04942823669498956, 0.04942823669498941, -0.13497539107061357,
    0.0027862120871182425, 0.26987577313664246, 0.47345601904641693, 0.4206896767848992,
    -0.08126052667945312, -0.035957033392354794, 0.08112330109862123, 0.01016803400491965,
    -0.095272598533468, -0.08164836037655027, 0.20459098461566438, 0.9169956725831678};

}  // namespace projection_detail

inline void projectToSubcells(const double* luh, double* sub) {
double t0[112] __attribute__((aligned(8)));
for (int u = 0; u < 4; ++u)
    for (int r = 0; r < 7; ++r)
      for (int l = 0; l < 1; ++l) {
        double* o = t0 + ((u * 7 + r) * 1 + l) * nVarPad;
        for (int v = 0; v < nVarPad; ++v) o[v] = 0.0;
        for (int k = 0; k < 4; ++k) {
          const double c = projection_detail::P[r * 4 + k];
          const double* x = luh + ((u * 4 + k) * 1 + l) * nVarPad;
          for (int v = 0; v < nVarPad; ++v) o[v] += c * x[v];
        }
      }
for (int u = 0; u < 1; ++u)
    for (int r = 0; r < 7; ++r)
      for (int l = 0; l < 7; ++l) {
        double* o = sub + ((u * 7 + r) * 7 + l) * nVarPad;
        for (int v = 0; v < nVarPad; ++v) o[v] = 0.0;
        for (int k = 0; k < 4; ++k) {
          const double c = projection_detail::P[r * 4 + k];
          const double* x = t0 + ((u * 4 + k) * 7 + l) * nVarPad;
          for (int v = 0; v < nVarPad; ++v) o[v] += c * x[v];
        }
      }

}

inline void projectToDG(const double* sub, double* luh) {
double t0[112] __attribute__((aligned(8)));
for (int u = 0; u < 7; ++u)
    for (int r = 0; r < 4; ++r)
      for (int l = 0; l < 1; ++l) {
        double* o = t0 + ((u * 4 + r) * 1 + l) * nVarPad;
        for (int v = 0; v < nVarPad; ++v) o[v] = 0.0;
        for (int k = 0; k < 7; ++k) {
          const double c = projection_detail::R[r * 7 + k];
          const double* x = sub + ((u * 7 + k) * 1 + l) * nVarPad;
          for (int v = 0; v < nVarPad; ++v) o[v] += c * x[v];
        }
      }
for (int u = 0; u < 1; ++u)
    for (int r = 0; r < 4; ++r)
      for (int l = 0; l < 4; ++l) {
        double* o = luh + ((u * 4 + r) * 4 + l) * nVarPad;
        for (int v = 0; v < nVarPad; ++v) o[v] = 0.0;
        for (int k = 0; k < 7; ++k) {
          const double c = projection_detail::R[r * 7 + k];
          const double* x = t0 + ((u * 7 + k) * 4 + l) * nVarPad;
          for (int v = 0; v < nVarPad; ++v) o[v] += c * x[v];
        }
      }

}

inline void projectFaceToSubfaces(const double* face, double* subfaces) {
for (int u = 0; u < 1; ++u)
    for (int r = 0; r < 7; ++r)
      for (int l = 0; l < 1; ++l) {
        double* o = subfaces + ((u * 7 + r) * 1 + l) * nVarPad;
        for (int v = 0; v < nVarPad; ++v) o[v] = 0.0;
        for (int k = 0; k < 4; ++k) {
          const double c = projection_detail::P[r * 4 + k];
          const double* x = face + ((u * 4 + k) * 1 + l) * nVarPad;
          for (int v = 0; v < nVarPad; ++v) o[v] += c * x[v];
        }
      }
}

}  // namespace euler_limiting_n3::kernels
