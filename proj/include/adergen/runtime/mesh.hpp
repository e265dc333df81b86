#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "adergen/dg/basis.hpp"
#include "adergen/dg/config.hpp"
#include "adergen/dg/user_solver.hpp"
#include "adergen/spec/specification.hpp"

namespace adergen::runtime {

enum class LimiterStatus { ok, troubled, neighbor_of_troubled };

struct CellState {
  std::vector<double> luh;       // [node][qPad]
  std::vector<double> previous;  // last accepted state
  LimiterStatus status = LimiterStatus::ok;
  std::vector<double> sub;       // [(2N+1)^d][qPad] when the cell is held on the subgrid
};

/// Kernel specialization implied by a spec.
inline KernelConfig kernel_config(const spec::Specification& s) {
  KernelConfig c;
  c.N = s.order;
  c.d = s.dimension;
  c.q = s.quantities;
  c.w = s.optimization.vector_width;
  c.predictor = static_cast<Predictor>(static_cast<int>(s.predictor_variant));
  c.flux = s.has(spec::Term::flux);
  c.source = s.has(spec::Term::source);
  c.ncp = s.has(spec::Term::ncp);
  c.viscous = s.has(spec::Term::viscous_flux);
  c.use_flux_vect = s.optimization.use_flux_vect;
  c.limiting = s.solver_kind != spec::SolverKind::aderdg;
  return c;
}

class InadmissibleInitialData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform Cartesian grid; cells are numbered with x fastest.
struct Mesh {
  int d = 2;
  std::vector<double> origin, extent;
  std::vector<int> cells;  // per dimension
  double h = 0.0;
  spec::BoundaryMode boundary = spec::BoundaryMode::periodic;
  std::vector<CellState> state;

  int count() const { return static_cast<int>(state.size()); }

  std::array<int, 3> coords(int c) const {
    std::array<int, 3> ci{0, 0, 0};
    for (int a = 0; a < d; ++a) {
      ci[a] = c % cells[a];
      c /= cells[a];
    }
    return ci;
  }

  int index(const std::array<int, 3>& ci) const {
    int c = 0;
    for (int a = d - 1; a >= 0; --a) c = c * cells[a] + ci[a];
    return c;
  }

  /// Neighbor offset by `delta` cells along each axis; -1 outside a non-periodic domain.
  int shifted(int c, const std::array<int, 3>& delta) const {
    auto ci = coords(c);
    for (int a = 0; a < d; ++a) {
      ci[a] += delta[a];
      if (ci[a] < 0 || ci[a] >= cells[a]) {
        if (boundary != spec::BoundaryMode::periodic) return -1;
        ci[a] = (ci[a] + cells[a]) % cells[a];
      }
    }
    return index(ci);
  }

  int neighbor(int c, int dir, int side) const {
    std::array<int, 3> delta{0, 0, 0};
    delta[dir] = side == 0 ? -1 : 1;
    return shifted(c, delta);
  }

  std::array<double, 3> corner(int c) const {
    auto ci = coords(c);
    std::array<double, 3> x{0, 0, 0};
    for (int a = 0; a < d; ++a) x[a] = origin[a] + ci[a] * h;
    return x;
  }
};

/// Nodal interpolation of user.initial on every cell.
inline Mesh init_mesh(const spec::Specification& s, const UserSolver& user, const dg::BasisTables& basis) {
  const KernelConfig cfg = kernel_config(s);
  Mesh mesh;
  mesh.d = s.dimension;
  mesh.origin = s.mesh.origin;
  mesh.extent = s.mesh.extent;
  mesh.cells = s.mesh.cells_per_dim;
  mesh.h = s.mesh.h();
  mesh.boundary = s.mesh.boundary;
  int total = 1;
  for (int n : mesh.cells) total *= n;
  mesh.state.resize(total);
  const int n = cfg.nDof(), qP = cfg.qPad();
  std::vector<double> Q(cfg.q);
  for (int c = 0; c < total; ++c) {
    CellState& cell = mesh.state[c];
    cell.luh.assign(cfg.volume(), 0.0);
    const auto x0 = mesh.corner(c);
    for (int node = 0; node < cfg.nodes(); ++node) {
      double x[3] = {0, 0, 0};
      int rest = node;
      for (int a = 0; a < cfg.d; ++a) {
        x[a] = x0[a] + mesh.h * basis.nodes[rest % n];
        rest /= n;
      }
      user.initial(x, Q.data());
      if (!user.admissible(Q.data()))
        throw InadmissibleInitialData("inadmissible initial data in cell " + std::to_string(c) + " at node " +
                                      std::to_string(node));
      for (int v = 0; v < cfg.q; ++v) cell.luh[node * qP + v] = Q[v];
    }
    cell.previous = cell.luh;
  }
  return mesh;
}

}  // namespace adergen::runtime
