#pragma once

namespace adergen::opt {

/// C(M x N) = A(M x K) * B(K x N) (+ C when accumulate), column-major with
/// leading dimensions. Every entry sums k in ascending order, so any loop
/// nest that keeps that order produces the same bits.
inline void matmul(int M, int K, int N, int ldA, int ldB, int ldC, const double* A, const double* B, double* C,
                   bool accumulate) {
  for (int j = 0; j < N; ++j) {
    if (!accumulate)
      for (int i = 0; i < M; ++i) C[i + j * ldC] = 0.0;
    for (int k = 0; k < K; ++k) {
      const double b = B[k + j * ldB];
      for (int i = 0; i < M; ++i) C[i + j * ldC] += A[i + k * ldA] * b;
    }
  }
}

}  // namespace adergen::opt
