#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <random>
#include <vector>

#include "adergen/dg/basis.hpp"
#include "adergen/dg/config.hpp"
#include "adergen/spec/specification.hpp"

namespace testing_helpers {

/// Nodal values of f on the cell [x0, x0+h]^d in the kernel layout.
inline std::vector<double> fill_cell(const adergen::KernelConfig& cfg, const adergen::dg::BasisTables& b,
                                     const std::vector<double>& x0, double h,
                                     const std::function<void(const double*, double*)>& f) {
  const int n = cfg.nDof(), qP = cfg.qPad();
  std::vector<double> luh(cfg.volume(), 0.0);
  std::vector<double> Q(cfg.q);
  for (int node = 0; node < cfg.nodes(); ++node) {
    double x[3] = {0, 0, 0};
    int rest = node;
    for (int a = 0; a < cfg.d; ++a) {
      x[a] = x0[a] + h * b.nodes[rest % n];
      rest /= n;
    }
    f(x, Q.data());
    for (int v = 0; v < cfg.q; ++v) luh[node * qP + v] = Q[v];
  }
  return luh;
}

inline std::vector<double> random_cell(const adergen::KernelConfig& cfg, std::mt19937_64& rng, double lo = -1.0,
                                       double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> luh(cfg.volume(), 0.0);
  for (int node = 0; node < cfg.nodes(); ++node)
    for (int v = 0; v < cfg.q; ++v) luh[node * cfg.qPad() + v] = U(rng);
  return luh;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline adergen::spec::Specification load_fixture(const std::string& name) {
  return adergen::spec::parse_spec(read_text(std::string(ADERGEN_SOURCE_DIR) + "/tests/fixtures/specs/" + name + ".json"));
}

/// Everything one predictor call produces.
struct PredictorOut {
  std::vector<double> qhi, fhi, shi, qhbnd, fhbnd;
  int iterations = 0;

  explicit PredictorOut(const adergen::KernelConfig& c)
      : qhi(c.volume()), fhi(c.d * c.volume()), shi(c.volume()), qhbnd(2 * c.d * c.face()),
        fhbnd(2 * c.d * c.face()) {}
};

}  // namespace testing_helpers
