#pragma once

namespace adergen {

enum class Predictor { picard = 0, ck = 1, otf = 2 };

inline constexpr int pad(int n, int w) { return w * ((n + w - 1) / w); }

inline constexpr int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// Everything a kernel implementation is specialized on.
struct KernelConfig {
  int N = 1;
  int d = 2;
  int q = 1;
  int w = 1;
  Predictor predictor = Predictor::picard;
  bool flux = true;
  bool source = false;
  bool ncp = false;
  bool viscous = false;
  bool use_flux_vect = false;
  bool limiting = false;

  int nDof() const { return N + 1; }
  int qPad() const { return pad(q, w); }
  int nDofPad() const { return pad(N + 1, w); }
  int nodes() const { return ipow(N + 1, d); }
  int faceNodes() const { return ipow(N + 1, d - 1); }
  int volume() const { return nodes() * qPad(); }
  int face() const { return faceNodes() * qPad(); }
  // Subcell grid of the limiter.
  int m() const { return 2 * N + 1; }
  int subcells() const { return ipow(2 * N + 1, d); }
  int subfaces() const { return ipow(2 * N + 1, d - 1); }
  bool needsGradients() const { return viscous || ncp; }

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

}  // namespace adergen
