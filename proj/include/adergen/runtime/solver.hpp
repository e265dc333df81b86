#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "adergen/dg/basis.hpp"
#include "adergen/dg/kernels_api.hpp"
#include "adergen/dg/user_solver.hpp"
#include "adergen/runtime/mesh.hpp"
#include "adergen/spec/specification.hpp"

namespace adergen::runtime {

class StepError : public std::runtime_error {
 public:
  StepError(const std::string& kind, int step, const std::string& what)
      : std::runtime_error(kind + " at step " + std::to_string(step) + ": " + what), kind_(kind), step_(step) {}
  const std::string& kind() const { return kind_; }
  int step() const { return step_; }

 private:
  std::string kind_;
  int step_;
};

struct StepStats {
  int step = 0;
  double t = 0.0;  // time after the step
  double dt = 0.0;
  std::vector<double> sums;
  int troubled = 0;
};

/// Drives one mesh through time with any Kernels implementation.
class Solver {
 public:
  Solver(const spec::Specification& s, const UserSolver& user, const Kernels& kernels)
      : spec_(s), user_(user), k_(kernels), cfg_(kernels.config()), basis_(dg::precompute_basis(s.order)) {
    if (!(cfg_ == kernel_config(s))) throw std::invalid_argument("kernel configuration does not match the spec");
    if (user.nVar() != cfg_.q || user.nDim() != cfg_.d)
      throw std::invalid_argument("user solver shape does not match the spec");
    mesh_ = init_mesh(s, user, basis_);
    if (s.limiter) limiter_ = *s.limiter;
    fv_ = s.solver_kind == spec::SolverKind::fv;
    limiting_ = s.solver_kind == spec::SolverKind::limiting_aderdg;
    const int nc = mesh_.count();
    qhi_.assign(static_cast<std::size_t>(nc) * cfg_.volume(), 0.0);
    fhi_.assign(static_cast<std::size_t>(nc) * cfg_.d * cfg_.volume(), 0.0);
    shi_.assign(static_cast<std::size_t>(nc) * cfg_.volume(), 0.0);
    qbnd_.assign(static_cast<std::size_t>(nc) * 2 * cfg_.d * cfg_.face(), 0.0);
    fbnd_.assign(qbnd_.size(), 0.0);
    flux_.assign(qbnd_.size(), 0.0);
    if (fv_ || limiting_)
      for (int c = 0; c < nc; ++c) initSubcells(c);
  }

  const Mesh& mesh() const { return mesh_; }
  Mesh& mesh() { return mesh_; }
  const KernelConfig& config() const { return cfg_; }
  const dg::BasisTables& basis() const { return basis_; }
  double time() const { return t_; }
  int steps() const { return step_; }
  bool finished() const { return !(t_ < spec_.time.end_time); }

  /// cfl * h / (d * lambda_max * (2N+1)) over every accepted state.
  double stableTimeStep() const {
    double lmax = 0.0;
    std::vector<double> lambda(cfg_.q);
    for (const auto& cell : mesh_.state) {
      if (!fv_) lmax = std::max(lmax, k_.maxEigenvalue(user_, cell.luh.data()));
      if (!cell.sub.empty())
        for (int s = 0; s < cfg_.subcells(); ++s)
          for (int dir = 0; dir < cfg_.d; ++dir) {
            user_.eigenvalues(cell.sub.data() + s * cfg_.qPad(), dir, lambda.data());
            for (double l : lambda) lmax = std::max(lmax, std::abs(l));
          }
    }
    if (!(lmax > 0.0) || !std::isfinite(lmax))
      throw StepError("NonPropagating", step_ + 1, "maximum eigenvalue is " + std::to_string(lmax));
    return spec_.time.cfl * mesh_.h / (cfg_.d * lmax * (2 * cfg_.N + 1));
  }

  /// One step with the stable dt, clamped so the run ends exactly at end_time.
  StepStats advance() {
    double dt = stableTimeStep();
    if (t_ + dt > spec_.time.end_time) dt = spec_.time.end_time - t_;
    return step(dt);
  }

  StepStats step(double dt) {
    const int stepIndex = step_ + 1;
    int troubled = 0;
    if (fv_) {
      troubled = fvOnly(dt, stepIndex);
    } else {
      std::vector<char> failed(mesh_.count(), 0);
      predict(dt, stepIndex, failed);
      faces(dt);
      for (int c = 0; c < mesh_.count(); ++c) {
        CellState& cell = mesh_.state[c];
        cell.previous = cell.luh;
        k_.update(fhi(c), shi(c), facePtrs(c).data(), dt, mesh_.h, cell.luh.data());
      }
      if (limiting_) troubled = limiterCycle(dt, stepIndex, failed);
    }
    t_ += dt;
    step_ = stepIndex;
    StepStats st;
    st.step = step_;
    st.t = t_;
    st.dt = dt;
    st.sums = conservedSums();
    st.troubled = troubled;
    return st;
  }

  /// Integral of each quantity over the domain. Cells held on the subgrid
  /// contribute their subcell means.
  std::vector<double> conservedSums() const {
    std::vector<double> sums(cfg_.q, 0.0);
    const double vol = std::pow(mesh_.h, cfg_.d);
    const int qP = cfg_.qPad(), n = cfg_.nDof();
    for (const auto& cell : mesh_.state) {
      std::vector<double> cellSum(cfg_.q, 0.0);
      if (!cell.sub.empty()) {
        for (int s = 0; s < cfg_.subcells(); ++s)
          for (int v = 0; v < cfg_.q; ++v) cellSum[v] += cell.sub[s * qP + v];
        for (int v = 0; v < cfg_.q; ++v) cellSum[v] /= cfg_.subcells();
      } else {
        for (int node = 0; node < cfg_.nodes(); ++node) {
          double w = 1.0;
          int rest = node;
          for (int a = 0; a < cfg_.d; ++a) {
            w *= basis_.weights[rest % n];
            rest /= n;
          }
          for (int v = 0; v < cfg_.q; ++v) cellSum[v] += w * cell.luh[node * qP + v];
        }
      }
      for (int v = 0; v < cfg_.q; ++v) sums[v] += vol * cellSum[v];
    }
    return sums;
  }

  /// The accepted state is admissible: DG nodes of cells on the DG path and
  /// subcell means of cells held on the subgrid.
  bool acceptedStateAdmissible() const {
    const int qP = cfg_.qPad();
    for (const auto& cell : mesh_.state) {
      if (!cell.sub.empty()) {
        for (int s = 0; s < cfg_.subcells(); ++s)
          if (!admissible(cell.sub.data() + s * qP)) return false;
      } else {
        for (int node = 0; node < cfg_.nodes(); ++node)
          if (!admissible(cell.luh.data() + node * qP)) return false;
      }
    }
    return true;
  }

 private:
  double* qhi(int c) { return qhi_.data() + static_cast<std::size_t>(c) * cfg_.volume(); }
  double* fhi(int c) { return fhi_.data() + static_cast<std::size_t>(c) * cfg_.d * cfg_.volume(); }
  double* shi(int c) { return shi_.data() + static_cast<std::size_t>(c) * cfg_.volume(); }
  double* qbnd(int c, int f) { return qbnd_.data() + (static_cast<std::size_t>(c) * 2 * cfg_.d + f) * cfg_.face(); }
  double* fbnd(int c, int f) { return fbnd_.data() + (static_cast<std::size_t>(c) * 2 * cfg_.d + f) * cfg_.face(); }
  double* flux(int c, int f) { return flux_.data() + (static_cast<std::size_t>(c) * 2 * cfg_.d + f) * cfg_.face(); }

  std::vector<const double*> facePtrs(int c) {
    std::vector<const double*> p(2 * cfg_.d);
    for (int f = 0; f < 2 * cfg_.d; ++f) p[f] = flux(c, f);
    return p;
  }

  bool admissible(const double* Q) const {
    for (int v = 0; v < cfg_.q; ++v)
      if (!std::isfinite(Q[v])) return false;
    return user_.admissible(Q);
  }

  void predict(double dt, int stepIndex, std::vector<char>& failed) {
    for (int c = 0; c < mesh_.count(); ++c) {
      const double* luh = mesh_.state[c].luh.data();
      int it = k_.predictor(user_, luh, dt, mesh_.h, qhi(c), fhi(c), shi(c), qbnd(c, 0), fbnd(c, 0));
      if (it >= 0) continue;
      if (!limiting_)
        throw StepError("NonConvergence", stepIndex, "predictor failed in cell " + std::to_string(c));
      // Frozen-in-time face data; the cell is recomputed by the limiter.
      failed[c] = 1;
      it = k_.predictor(user_, luh, 0.0, mesh_.h, qhi(c), fhi(c), shi(c), qbnd(c, 0), fbnd(c, 0));
      std::fill(shi(c), shi(c) + cfg_.volume(), 0.0);
      if (it < 0) {
        std::fill(qbnd(c, 0), qbnd(c, 0) + 2 * cfg_.d * cfg_.face(), 0.0);
        std::fill(fbnd(c, 0), fbnd(c, 0) + 2 * cfg_.d * cfg_.face(), 0.0);
      }
    }
  }

  /// Riemann problems on every face; boundary faces see a ghost state.
  void faces(double dt) {
    const int q = cfg_.q, fsize = cfg_.face();
    std::vector<double> ghostQ(fsize), ghostF(fsize), Fin(q), Fout(q), discard(fsize);
    for (int c = 0; c < mesh_.count(); ++c)
      for (int dir = 0; dir < cfg_.d; ++dir) {
        const int r = mesh_.neighbor(c, dir, 1);
        if (r >= 0) {
          k_.riemann(user_, qbnd(c, 2 * dir + 1), qbnd(r, 2 * dir), fbnd(c, 2 * dir + 1), fbnd(r, 2 * dir), dir,
                     mesh_.h, flux(c, 2 * dir + 1), flux(r, 2 * dir));
        } else {
          boundaryGhost(c, 2 * dir + 1, t_ + 0.5 * dt, ghostQ, ghostF, Fin, Fout);
          k_.riemann(user_, qbnd(c, 2 * dir + 1), ghostQ.data(), fbnd(c, 2 * dir + 1), ghostF.data(), dir, mesh_.h,
                     flux(c, 2 * dir + 1), discard.data());
        }
        if (mesh_.neighbor(c, dir, 0) < 0) {
          boundaryGhost(c, 2 * dir, t_ + 0.5 * dt, ghostQ, ghostF, Fin, Fout);
          k_.riemann(user_, ghostQ.data(), qbnd(c, 2 * dir), ghostF.data(), fbnd(c, 2 * dir), dir, mesh_.h,
                     discard.data(), flux(c, 2 * dir));
        }
      }
  }

  // Ghost flux = inside time-averaged flux + F(ghost) - F(inside trace), so a
  // copying boundary reproduces the inside data exactly.
  void boundaryGhost(int c, int face, double t, std::vector<double>& gQ, std::vector<double>& gF,
                     std::vector<double>& Fin, std::vector<double>& Fout) {
    const int qP = cfg_.qPad(), q = cfg_.q, n = cfg_.nDof(), dir = face / 2;
    const auto x0 = mesh_.corner(c);
    const double* inQ = qbnd(c, face);
    const double* inF = fbnd(c, face);
    std::fill(gQ.begin(), gQ.end(), 0.0);
    std::fill(gF.begin(), gF.end(), 0.0);
    for (int fn = 0; fn < cfg_.faceNodes(); ++fn) {
      double x[3] = {0, 0, 0};
      int rest = fn;
      for (int a = 0; a < cfg_.d; ++a) {
        if (a == dir) {
          x[a] = x0[a] + (face % 2) * mesh_.h;
        } else {
          x[a] = x0[a] + mesh_.h * basis_.nodes[rest % n];
          rest /= n;
        }
      }
      const double* qi = inQ + fn * qP;
      double* qo = gQ.data() + fn * qP;
      user_.boundary(x, t, face, qi, qo);
      for (int v = 0; v < q; ++v) gF[fn * qP + v] = inF[fn * qP + v];
      if (cfg_.flux) {
        user_.fluxDir(qi, dir, Fin.data());
        user_.fluxDir(qo, dir, Fout.data());
        for (int v = 0; v < q; ++v) gF[fn * qP + v] += Fout[v] - Fin[v];
      }
    }
  }

  // ---- subcell limiting -------------------------------------------------

  // Subgrid start state: projected DG data, or quadrature averages of the
  // initial data where the projection is inadmissible (a jump inside a cell).
  void initSubcells(int c) {
    CellState& cell = mesh_.state[c];
    const int qP = cfg_.qPad(), m = cfg_.m(), n = cfg_.nDof();
    std::vector<double> sub = project(cell.luh);
    bool ok = true;
    for (int s = 0; s < cfg_.subcells() && ok; ++s) ok = admissible(sub.data() + s * qP);
    if (!ok) {
      std::fill(sub.begin(), sub.end(), 0.0);
      const auto x0 = mesh_.corner(c);
      const double hs = mesh_.h / m;
      std::vector<double> Q(cfg_.q);
      const int points = ipow(n, cfg_.d);
      for (int s = 0; s < cfg_.subcells(); ++s)
        for (int g = 0; g < points; ++g) {
          double x[3] = {0, 0, 0}, w = 1.0;
          int rs = s, rg = g;
          for (int a = 0; a < cfg_.d; ++a) {
            x[a] = x0[a] + hs * (rs % m + basis_.nodes[rg % n]);
            w *= basis_.weights[rg % n];
            rs /= m;
            rg /= n;
          }
          user_.initial(x, Q.data());
          for (int v = 0; v < cfg_.q; ++v) sub[s * qP + v] += w * Q[v];
        }
      k_.projectToDG(sub.data(), cell.luh.data());
      cell.previous = cell.luh;
    }
    if (fv_ || !ok) {
      cell.sub = std::move(sub);
      cell.status = LimiterStatus::troubled;
    }
  }

  int subIndex(int dir, int t, int i) const {
    const int m = cfg_.m();
    const int stride = ipow(m, dir);
    return t % stride + i * stride + (t / stride) * stride * m;
  }

  std::vector<double> project(const std::vector<double>& luh) const {
    std::vector<double> sub(static_cast<std::size_t>(cfg_.subcells()) * cfg_.qPad(), 0.0);
    k_.projectToSubcells(luh.data(), sub.data());
    return sub;
  }

  int limiterCycle(double dt, int stepIndex, const std::vector<char>& failed) {
    const int nc = mesh_.count(), qP = cfg_.qPad(), q = cfg_.q;
    // Old-state subcell means: the FV buffer where one exists.
    oldSub_.assign(nc, {});
    for (int c = 0; c < nc; ++c) {
      const CellState& cell = mesh_.state[c];
      oldSub_[c] = cell.sub.empty() ? project(cell.previous) : cell.sub;
    }
    std::vector<double> lo(static_cast<std::size_t>(nc) * q), hi(lo.size()), clo(q), chi(q);
    for (int c = 0; c < nc; ++c) k_.subcellMinMax(oldSub_[c].data(), lo.data() + c * q, hi.data() + c * q);

    std::vector<char> troubled(nc, 0);
    std::vector<std::vector<double>> cand(nc);
    for (int c = 0; c < nc; ++c) {
      const CellState& cell = mesh_.state[c];
      bool bad = failed[c] != 0;
      for (int node = 0; node < cfg_.nodes() && !bad; ++node) bad = !admissible(cell.luh.data() + node * qP);
      if (!bad) {
        cand[c] = project(cell.luh);
        for (int s = 0; s < cfg_.subcells() && !bad; ++s) bad = !admissible(cand[c].data() + s * qP);
      }
      if (!bad) {
        for (int v = 0; v < q; ++v) {
          clo[v] = lo[c * q + v];
          chi[v] = hi[c * q + v];
        }
        moore(c, [&](int nb) {
          for (int v = 0; v < q; ++v) {
            clo[v] = std::min(clo[v], lo[nb * q + v]);
            chi[v] = std::max(chi[v], hi[nb * q + v]);
          }
        });
        bad = !k_.dmpSatisfied(cand[c].data(), clo.data(), chi.data(), limiter_.dmp_delta0, limiter_.dmp_epsilon);
      }
      troubled[c] = bad ? 1 : 0;
    }

    int count = 0;
    for (int c = 0; c < nc; ++c) {
      CellState& cell = mesh_.state[c];
      cell.status = troubled[c] ? LimiterStatus::troubled : LimiterStatus::ok;
      count += troubled[c];
    }
    for (int c = 0; c < nc; ++c)
      if (troubled[c])
        for (int dir = 0; dir < cfg_.d; ++dir)
          for (int side = 0; side < 2; ++side) {
            const int nb = mesh_.neighbor(c, dir, side);
            if (nb >= 0 && !troubled[nb]) mesh_.state[nb].status = LimiterStatus::neighbor_of_troubled;
          }
    for (int c = 0; c < nc; ++c)
      if (!troubled[c]) mesh_.state[c].sub.clear();
    if (count == 0) return 0;

    auto result = fvPatch(troubled, dt, stepIndex);
    for (int c = 0; c < nc; ++c)
      if (troubled[c]) {
        CellState& cell = mesh_.state[c];
        cell.sub = std::move(result[c]);
        k_.projectToDG(cell.sub.data(), cell.luh.data());
      }
    return count;
  }

  template <class F>
  void moore(int c, F&& visit) const {
    const int range = cfg_.d == 3 ? 27 : 9;
    for (int k = 0; k < range; ++k) {
      std::array<int, 3> delta{k % 3 - 1, (k / 3) % 3 - 1, cfg_.d == 3 ? k / 9 - 1 : 0};
      if (delta[0] == 0 && delta[1] == 0 && delta[2] == 0) continue;
      const int nb = mesh_.shifted(c, delta);
      if (nb >= 0) visit(nb);
    }
  }

  int fvOnly(double dt, int stepIndex) {
    const int nc = mesh_.count();
    oldSub_.assign(nc, {});
    for (int c = 0; c < nc; ++c) oldSub_[c] = mesh_.state[c].sub;
    std::vector<char> all(nc, 1);
    auto result = fvPatch(all, dt, stepIndex);
    for (int c = 0; c < nc; ++c) {
      CellState& cell = mesh_.state[c];
      cell.previous = cell.luh;
      cell.sub = std::move(result[c]);
      k_.projectToDG(cell.sub.data(), cell.luh.data());
    }
    return nc;
  }

  /// Advance every troubled cell's subgrid from the old state over dt with
  /// SSP-RK2. Faces shared with DG cells take the DG numerical flux.
  std::vector<std::vector<double>> fvPatch(const std::vector<char>& troubled, double dt, int stepIndex) {
    const int nc = mesh_.count(), qP = cfg_.qPad();
    const double hs = mesh_.h / cfg_.m();
    // Substep count from the FV CFL condition over the patch and its halo.
    double lmax = 0.0;
    std::vector<double> lambda(cfg_.q);
    for (int c = 0; c < nc; ++c) {
      if (!troubled[c]) continue;
      auto scan = [&](int cell) {
        for (int s = 0; s < cfg_.subcells(); ++s)
          for (int dir = 0; dir < cfg_.d; ++dir) {
            user_.eigenvalues(oldSub_[cell].data() + s * qP, dir, lambda.data());
            for (double l : lambda) lmax = std::max(lmax, std::abs(l));
          }
      };
      scan(c);
      for (int dir = 0; dir < cfg_.d; ++dir)
        for (int side = 0; side < 2; ++side) {
          const int nb = mesh_.neighbor(c, dir, side);
          if (nb >= 0 && !troubled[nb]) scan(nb);
        }
    }
    int nsub = 1;
    if (lmax > 0.0 && dt > 0.0) {
      const double dtMax = spec_.time.cfl * hs / (cfg_.d * lmax);
      nsub = std::max(1, static_cast<int>(std::ceil(dt / dtMax * (1.0 - 1e-12))));
    }
    // DG fluxes on faces between troubled and DG cells, as subface means.
    std::vector<std::vector<double>> dgFace(static_cast<std::size_t>(nc) * 2 * cfg_.d);
    if (!fv_)
      for (int c = 0; c < nc; ++c) {
        if (!troubled[c]) continue;
        for (int f = 0; f < 2 * cfg_.d; ++f) {
          const int nb = mesh_.neighbor(c, f / 2, f % 2);
          if (nb < 0 || troubled[nb]) continue;
          auto& sf = dgFace[c * 2 * cfg_.d + f];
          sf.assign(static_cast<std::size_t>(cfg_.subfaces()) * qP, 0.0);
          k_.projectFaceToSubfaces(flux(c, f), sf.data());
        }
      }

    for (bool second : {true, false}) {
      std::vector<std::vector<double>> U(nc);
      for (int c = 0; c < nc; ++c)
        if (troubled[c]) U[c] = oldSub_[c];
      const double dts = dt / nsub;
      bool ok = true;
      for (int s = 0; s < nsub && ok; ++s) {
        const double ts = t_ + s * dts;
        auto L0 = fvRhs(U, troubled, dgFace, second, ts);
        std::vector<std::vector<double>> U1(nc);
        for (int c = 0; c < nc; ++c) {
          if (!troubled[c]) continue;
          U1[c].resize(U[c].size());
          for (std::size_t e = 0; e < U[c].size(); ++e) U1[c][e] = U[c][e] + dts * L0[c][e];
        }
        auto L1 = fvRhs(U1, troubled, dgFace, second, ts + dts);
        for (int c = 0; c < nc; ++c) {
          if (!troubled[c]) continue;
          for (std::size_t e = 0; e < U[c].size(); ++e) U[c][e] = 0.5 * U[c][e] + 0.5 * (U1[c][e] + dts * L1[c][e]);
          for (int sc = 0; sc < cfg_.subcells() && ok; ++sc) ok = admissible(U[c].data() + sc * qP);
        }
      }
      if (ok) return U;
    }
    throw StepError("LimiterFailure", stepIndex, "first-order subcell recompute produced an inadmissible state");
  }

  std::vector<std::vector<double>> fvRhs(const std::vector<std::vector<double>>& U, const std::vector<char>& troubled,
                                         const std::vector<std::vector<double>>& dgFace, bool second, double t) {
    const int nc = mesh_.count(), qP = cfg_.qPad(), q = cfg_.q, m = cfg_.m();
    const double hs = mesh_.h / m;
    std::vector<std::vector<double>> L(nc);
    std::vector<double> line(static_cast<std::size_t>(m + 4) * qP), fl(static_cast<std::size_t>(m + 1) * qP),
        S(q);
    for (int c = 0; c < nc; ++c) {
      if (!troubled[c]) continue;
      L[c].assign(U[c].size(), 0.0);
      const int lines = ipow(m, cfg_.d - 1);
      for (int dir = 0; dir < cfg_.d; ++dir)
        for (int tl = 0; tl < lines; ++tl) {
          for (int i = -2; i < m + 2; ++i) {
            double* dst = line.data() + (i + 2) * qP;
            if (i >= 0 && i < m) {
              std::copy_n(U[c].data() + subIndex(dir, tl, i) * qP, qP, dst);
              continue;
            }
            const int side = i < 0 ? 0 : 1;
            const int nb = mesh_.neighbor(c, dir, side);
            if (nb >= 0) {
              const auto& src = troubled[nb] ? U[nb] : oldSub_[nb];
              std::copy_n(src.data() + subIndex(dir, tl, i < 0 ? m + i : i - m) * qP, qP, dst);
            } else {
              const int mirror = i < 0 ? -1 - i : 2 * m - 1 - i;
              subcellGhost(c, dir, tl, i, U[c].data() + subIndex(dir, tl, mirror) * qP, t, dst);
            }
          }
          k_.fvLineFluxes(user_, line.data(), m, dir, second, fl.data());
          for (int side = 0; side < 2; ++side) {
            const auto& sf = dgFace[c * 2 * cfg_.d + 2 * dir + side];
            if (!sf.empty()) std::copy_n(sf.data() + tl * qP, qP, fl.data() + side * m * qP);
          }
          for (int i = 0; i < m; ++i) {
            double* out = L[c].data() + subIndex(dir, tl, i) * qP;
            for (int v = 0; v < q; ++v) out[v] -= (fl[(i + 1) * qP + v] - fl[i * qP + v]) / hs;
          }
        }
      if (cfg_.source)
        for (int s = 0; s < cfg_.subcells(); ++s) {
          user_.source(U[c].data() + s * qP, S.data());
          for (int v = 0; v < q; ++v) L[c][s * qP + v] += S[v];
        }
    }
    return L;
  }

  void subcellGhost(int c, int dir, int tl, int i, const double* inside, double t, double* out) const {
    const int m = cfg_.m();
    const double hs = mesh_.h / m;
    const auto x0 = mesh_.corner(c);
    double x[3] = {0, 0, 0};
    int rest = tl;
    for (int a = 0; a < cfg_.d; ++a) {
      if (a == dir) {
        x[a] = x0[a] + (i + 0.5) * hs;
      } else {
        x[a] = x0[a] + (rest % m + 0.5) * hs;
        rest /= m;
      }
    }
    std::fill(out, out + cfg_.qPad(), 0.0);
    user_.boundary(x, t, 2 * dir + (i < 0 ? 0 : 1), inside, out);
  }

  spec::Specification spec_;
  const UserSolver& user_;
  const Kernels& k_;
  KernelConfig cfg_;
  dg::BasisTables basis_;
  Mesh mesh_;
  spec::LimiterSpec limiter_;
  bool fv_ = false, limiting_ = false;
  double t_ = 0.0;
  int step_ = 0;
  std::vector<double> qhi_, fhi_, shi_, qbnd_, fbnd_, flux_;
  std::vector<std::vector<double>> oldSub_;
};

}  // namespace adergen::runtime
