#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adergen/runtime/mesh.hpp"
#include "adergen/runtime/solver.hpp"

namespace adergen::runtime {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_header(int q) {
  std::string h = "step,t,dt";
  for (int v = 0; v < q; ++v) h += ",sum_Q" + std::to_string(v);
  return h + ",troubled_count\n";
}

inline std::string csv_row(const StepStats& s) {
  std::string r = std::to_string(s.step) + "," + fmt17(s.t) + "," + fmt17(s.dt);
  for (double x : s.sums) r += "," + fmt17(x);
  return r + "," + std::to_string(s.troubled) + "\n";
}

/// Header line, then one "cell node var value" row per unpadded DOF, in
/// lexicographic cell order, node order, variable order.
inline std::string grid_dump(const Mesh& mesh, const KernelConfig& cfg, double t) {
  std::ostringstream os;
  os << "# t=" << fmt17(t) << " N=" << cfg.N << " d=" << cfg.d << " q=" << cfg.q << " cells_per_dim=";
  for (std::size_t a = 0; a < mesh.cells.size(); ++a) os << (a ? "x" : "") << mesh.cells[a];
  os << "\n";
  for (int c = 0; c < mesh.count(); ++c)
    for (int node = 0; node < cfg.nodes(); ++node)
      for (int v = 0; v < cfg.q; ++v)
        os << c << " " << node << " " << v << " " << fmt17(mesh.state[c].luh[node * cfg.qPad() + v]) << "\n";
  return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  if (!out) throw OutputError("write failed: " + path.string());
}

}  // namespace adergen::runtime
