#pragma once

#include <stdexcept>
#include <vector>

namespace adergen {

/// PDE callbacks supplied by the application:
///   dQ/dt + div F(Q, grad Q) + B(Q) grad Q = S(Q).
///
/// Pointers to a single state hold nVar values. `F[dir]` points at nVar values
/// per direction. Gradients are packed per point as gradQ[dir*nVar + v].
class UserSolver {
 public:
  virtual ~UserSolver() = default;

  virtual int nVar() const = 0;
  virtual int nDim() const = 0;

  virtual void initial(const double* x, double* Q) const = 0;

  /// Ghost state outside boundary face `face` (= 2*dir + side) from the inside trace.
  virtual void boundary(const double* x, double t, int face, const double* Qin, double* Qout) const {
    (void)x, (void)t, (void)face;
    for (int v = 0; v < nVar(); ++v) Qout[v] = Qin[v];
  }

  virtual void eigenvalues(const double* Q, int dir, double* lambda) const = 0;

  virtual void flux(const double* Q, double** F) const {
    (void)Q, (void)F;
    throw std::logic_error("flux not implemented");
  }

  /// Flux in a single direction. Defaults to the full flux.
  virtual void fluxDir(const double* Q, int dir, double* F) const {
    std::vector<double> buf(nDim() * nVar());
    std::vector<double*> ptr(nDim());
    for (int d = 0; d < nDim(); ++d) ptr[d] = buf.data() + d * nVar();
    flux(Q, ptr.data());
    for (int v = 0; v < nVar(); ++v) F[v] = buf[dir * nVar() + v];
  }

  /// SoA flux: Q[v][i], F[dir][v][i] for i < vectSize. Defaults to per-point flux.
  virtual void fluxVect(const double* const* Q, double* const* const* F, int vectSize) const {
    const int q = nVar(), d = nDim();
    std::vector<double> Qp(q), Fp(d * q);
    std::vector<double*> ptr(d);
    for (int dir = 0; dir < d; ++dir) ptr[dir] = Fp.data() + dir * q;
    for (int i = 0; i < vectSize; ++i) {
      for (int v = 0; v < q; ++v) Qp[v] = Q[v][i];
      flux(Qp.data(), ptr.data());
      for (int dir = 0; dir < d; ++dir)
        for (int v = 0; v < q; ++v) F[dir][v][i] = Fp[dir * q + v];
    }
  }

  virtual void viscousFlux(const double* Q, const double* gradQ, double** F) const {
    (void)Q, (void)gradQ, (void)F;
    throw std::logic_error("viscousFlux not implemented");
  }

  /// Non-conservative product B(Q) * gradQ.
  virtual void ncp(const double* Q, const double* gradQ, double* BgradQ) const {
    (void)Q, (void)gradQ, (void)BgradQ;
    throw std::logic_error("ncp not implemented");
  }

  virtual void source(const double* Q, double* S) const {
    (void)Q, (void)S;
    throw std::logic_error("source not implemented");
  }

  virtual bool admissible(const double* Q) const {
    (void)Q;
    return true;
  }

  /// Extra dissipation speed added to the Rusanov s_max for viscous PDEs.
  virtual double viscousPenalty(const double* QL, const double* QR, double h) const {
    (void)QL, (void)QR, (void)h;
    return 0.0;
  }
};

}  // namespace adergen
