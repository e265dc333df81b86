#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "adergen/dg/basis.hpp"
#include "adergen/dg/kernels_api.hpp"
#include "adergen/limiter/projection.hpp"
#include "adergen/opt/matmul.hpp"
#include "adergen/opt/transpose.hpp"

namespace adergen {

inline constexpr double kPicardTolerance = 1e-10;
inline constexpr double kPicardAccept = 1e-6;

inline int picard_cap(int N) { return 2 * (N + 1); }

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

/// Reference kernels: every size is a runtime value taken from the config.
class GenericKernels : public Kernels {
 public:
  explicit GenericKernels(const KernelConfig& cfg)
      : cfg_(cfg), basis_(dg::precompute_basis(cfg.N)), proj_(limiter::projection_1d(basis_)) {
    n_ = cfg.nDof();
    qP_ = cfg.qPad();
    vol_ = cfg.volume();
    nodes_ = cfg.nodes();
    fnodes_ = cfg.faceNodes();
  }

  const KernelConfig& config() const override { return cfg_; }
  const char* name() const override { return "generic"; }
  const dg::BasisTables& basis() const { return basis_; }
  const limiter::Projection1D& projection() const { return proj_; }

  int predictor(const UserSolver& user, const double* luh, double dt, double h, double* qhi, double* fhi,
                double* shi, double* qhbnd, double* fhbnd) const override {
    int iterations = 0;
    switch (cfg_.predictor) {
      case Predictor::picard: iterations = picard(user, luh, dt, h, qhi, fhi, shi); break;
      case Predictor::ck: ck(user, luh, dt, h, qhi, fhi, shi); break;
      case Predictor::otf: otf(user, luh, dt, h, qhi, fhi, shi); break;
    }
    if (iterations < 0) return -1;
    extrapolate(qhi, fhi, qhbnd, fhbnd);
    for (int e = 0; e < vol_; ++e)
      if (!std::isfinite(qhi[e])) return -1;
    return iterations;
  }

  void riemann(const UserSolver& user, const double* qL, const double* qR, const double* fL, const double* fR,
               int dir, double h, double* fluxL, double* fluxR) const override {
    const int q = cfg_.q;
    std::vector<double> lambda(q);
    double smax = 0.0;
    for (int fn = 0; fn < fnodes_; ++fn) {
      user.eigenvalues(qL + fn * qP_, dir, lambda.data());
      for (int v = 0; v < q; ++v) smax = std::max(smax, std::abs(lambda[v]));
      user.eigenvalues(qR + fn * qP_, dir, lambda.data());
      for (int v = 0; v < q; ++v) smax = std::max(smax, std::abs(lambda[v]));
    }
    if (cfg_.viscous) {
      double penalty = 0.0;
      for (int fn = 0; fn < fnodes_; ++fn)
        penalty = std::max(penalty, user.viscousPenalty(qL + fn * qP_, qR + fn * qP_, h));
      smax += penalty;
    }
    for (int fn = 0; fn < fnodes_; ++fn) {
      const int o = fn * qP_;
      for (int v = 0; v < q; ++v) {
        fluxL[o + v] = 0.5 * (fL[o + v] + fR[o + v]) - 0.5 * smax * (qR[o + v] - qL[o + v]);
        fluxR[o + v] = fluxL[o + v];
      }
      for (int v = q; v < qP_; ++v) fluxL[o + v] = fluxR[o + v] = 0.0;
    }
    if (cfg_.ncp) {
      std::vector<double> qavg(q), grad(cfg_.d * q, 0.0), bdelta(q);
      for (int fn = 0; fn < fnodes_; ++fn) {
        const int o = fn * qP_;
        for (int v = 0; v < q; ++v) {
          qavg[v] = 0.5 * (qL[o + v] + qR[o + v]);
          grad[dir * q + v] = qR[o + v] - qL[o + v];
        }
        user.ncp(qavg.data(), grad.data(), bdelta.data());
        for (int v = 0; v < q; ++v) {
          fluxL[o + v] += 0.5 * bdelta[v];
          fluxR[o + v] -= 0.5 * bdelta[v];
        }
      }
    }
  }

  void update(const double* fhi, const double* shi, const double* const* faceFlux, double dt, double h,
              double* luh) const override {
    const double invh = 1.0 / h;
    std::vector<double> vol(vol_, 0.0), surf(vol_, 0.0);
    for (int dir = 0; dir < cfg_.d; ++dir) along(fhi + dir * vol_, dir, basis_.Kvol.data(), vol.data(), dir > 0);
    for (int dir = 0; dir < cfg_.d; ++dir) {
      const double* FL = faceFlux[2 * dir];
      const double* FR = faceFlux[2 * dir + 1];
      const int stride = ipow(n_, dir);
      for (int node = 0; node < nodes_; ++node) {
        const int m = (node / stride) % n_;
        const int fn = node % stride + (node / (stride * n_)) * stride;
        for (int v = 0; v < qP_; ++v)
          surf[node * qP_ + v] += basis_.sR[m] * FR[fn * qP_ + v] - basis_.sL[m] * FL[fn * qP_ + v];
      }
    }
    for (int e = 0; e < vol_; ++e) luh[e] += dt * (invh * (vol[e] - surf[e]) + shi[e]);
  }

  double maxEigenvalue(const UserSolver& user, const double* luh) const override {
    std::vector<double> lambda(cfg_.q);
    double lmax = 0.0;
    for (int node = 0; node < nodes_; ++node)
      for (int dir = 0; dir < cfg_.d; ++dir) {
        user.eigenvalues(luh + node * qP_, dir, lambda.data());
        for (int v = 0; v < cfg_.q; ++v) lmax = std::max(lmax, std::abs(lambda[v]));
      }
    return lmax;
  }

  void gradients(const double* luh, double h, double* gradQ) const override {
    const double invh = 1.0 / h;
    for (int dir = 0; dir < cfg_.d; ++dir) {
      double* g = gradQ + dir * vol_;
      along(luh, dir, basis_.dudxT.data(), g, false);
      for (int e = 0; e < vol_; ++e) g[e] = invh * g[e];
    }
  }

  void projectToSubcells(const double* luh, double* sub) const override {
    limiter::apply_tensor(luh, cfg_.d, n_, proj_.m, proj_.P.data(), qP_, sub);
  }
  void projectToDG(const double* sub, double* luh) const override {
    limiter::apply_tensor(sub, cfg_.d, proj_.m, n_, proj_.R.data(), qP_, luh);
  }
  void projectFaceToSubfaces(const double* face, double* subfaces) const override {
    limiter::apply_tensor(face, cfg_.d - 1, n_, proj_.m, proj_.P.data(), qP_, subfaces);
  }

  void subcellMinMax(const double* sub, double* lo, double* hi) const override {
    for (int v = 0; v < cfg_.q; ++v) lo[v] = hi[v] = sub[v];
    for (int s = 1; s < cfg_.subcells(); ++s)
      for (int v = 0; v < cfg_.q; ++v) {
        lo[v] = std::min(lo[v], sub[s * qP_ + v]);
        hi[v] = std::max(hi[v], sub[s * qP_ + v]);
      }
  }

  bool dmpSatisfied(const double* sub, const double* lo, const double* hi, double delta0,
                    double eps) const override {
    for (int v = 0; v < cfg_.q; ++v) {
      const double delta = std::max(delta0, eps * (hi[v] - lo[v]));
      for (int s = 0; s < cfg_.subcells(); ++s) {
        const double x = sub[s * qP_ + v];
        if (!(x >= lo[v] - delta && x <= hi[v] + delta)) return false;
      }
    }
    return true;
  }

  void fvLineFluxes(const UserSolver& user, const double* line, int len, int dir, bool secondOrder,
                    double* fluxes) const override {
    const int q = cfg_.q;
    std::vector<double> uL(q), uR(q), FL(q), FR(q), lambda(q);
    for (int f = 0; f <= len; ++f) {
      const double* a = line + (f + 1) * qP_;
      const double* b = line + (f + 2) * qP_;
      bool second = secondOrder;
      if (second) {
        for (int v = 0; v < q; ++v) {
          const double sa = minmod(a[v] - a[v - qP_], a[v + qP_] - a[v]);
          const double sb = minmod(b[v] - b[v - qP_], b[v + qP_] - b[v]);
          uL[v] = a[v] + 0.5 * sa;
          uR[v] = b[v] - 0.5 * sb;
        }
        second = user.admissible(uL.data()) && user.admissible(uR.data());
      }
      if (!second)
        for (int v = 0; v < q; ++v) {
          uL[v] = a[v];
          uR[v] = b[v];
        }
      user.fluxDir(uL.data(), dir, FL.data());
      user.fluxDir(uR.data(), dir, FR.data());
      double smax = 0.0;
      user.eigenvalues(uL.data(), dir, lambda.data());
      for (int v = 0; v < q; ++v) smax = std::max(smax, std::abs(lambda[v]));
      user.eigenvalues(uR.data(), dir, lambda.data());
      for (int v = 0; v < q; ++v) smax = std::max(smax, std::abs(lambda[v]));
      double* out = fluxes + f * qP_;
      for (int v = 0; v < q; ++v) out[v] = 0.5 * (FL[v] + FR[v]) - 0.5 * smax * (uR[v] - uL[v]);
      for (int v = q; v < qP_; ++v) out[v] = 0.0;
    }
  }

  /// Flux of every node of a volume array into F[dir][node][qPad]. F's
  /// padding lanes must be zero on entry; they are never written.
  void evalFlux(const UserSolver& user, const double* Q, const double* gradQ, double* F) const {
    const int q = cfg_.q, d = cfg_.d;
    if (cfg_.viscous) {
      std::vector<double> g(d * q);
      double* Fp[3];
      for (int i = 0; i < nodes_; ++i) {
        gather(gradQ, i, g.data());
        for (int dir = 0; dir < d; ++dir) Fp[dir] = F + i * qP_ + dir * vol_;
        user.viscousFlux(Q + i * qP_, g.data(), Fp);
      }
    } else if (cfg_.use_flux_vect) {
      const int s = cfg_.w;
      std::vector<double> Qs(q * s), Fs(d * q * s);
      std::vector<const double*> Qrow(q);
      std::vector<double*> Frow(d * q);
      double* const* Fdir[3];
      for (int v = 0; v < q; ++v) Qrow[v] = Qs.data() + v * s;
      for (int k = 0; k < d * q; ++k) Frow[k] = Fs.data() + k * s;
      for (int dir = 0; dir < d; ++dir) Fdir[dir] = Frow.data() + dir * q;
      for (int first = 0; first < nodes_; first += s) {
        const int count = std::min(s, nodes_ - first);
        opt::transpose_slice_to_soa(Q, qP_, q, first, count, s, Qs.data());
        user.fluxVect(Qrow.data(), Fdir, s);
        for (int dir = 0; dir < d; ++dir)
          opt::transpose_slice_to_aos(Fs.data() + dir * q * s, qP_, q, first, count, s, F + dir * vol_);
      }
    } else {
      double* Fp[3];
      for (int i = 0; i < nodes_; ++i) {
        for (int dir = 0; dir < d; ++dir) Fp[dir] = F + i * qP_ + dir * vol_;
        user.flux(Q + i * qP_, Fp);
      }
    }
  }

 private:
  /// C = A * op along `dir` for every line in that direction.
  void along(const double* A, int dir, const double* op, double* C, bool accumulate) const {
    const int stride = ipow(n_, dir);
    const int upper = nodes_ / (stride * n_);
    for (int u = 0; u < upper; ++u)
      for (int l = 0; l < stride; ++l) {
        const int base = (l + u * stride * n_) * qP_;
        opt::matmul(qP_, n_, n_, qP_ * stride, n_, qP_ * stride, A + base, op, C + base, accumulate);
      }
  }

  void gather(const double* gradQ, int node, double* g) const {
    for (int dir = 0; dir < cfg_.d; ++dir)
      for (int v = 0; v < cfg_.q; ++v) g[dir * cfg_.q + v] = gradQ[dir * vol_ + node * qP_ + v];
  }

  /// R = -1/h * sum_dir d/dx_dir F_dir (+ S - B gradQ) at every node of Q.
  void spaceOperator(const UserSolver& user, const double* Q, double invh, double h, double* F, double* grad,
                     double* R) const {
    const int q = cfg_.q;
    if (cfg_.needsGradients()) gradients(Q, h, grad);
    if (cfg_.flux || cfg_.viscous) {
      evalFlux(user, Q, grad, F);
      for (int dir = 0; dir < cfg_.d; ++dir) along(F + dir * vol_, dir, basis_.dudxT.data(), R, dir > 0);
      for (int e = 0; e < vol_; ++e) R[e] = -invh * R[e];
    } else {
      std::fill(R, R + vol_, 0.0);
    }
    addSourceTerms(user, Q, grad, R);
    (void)q;
  }

  /// R += S(Q) - B(Q) gradQ at every node.
  void addSourceTerms(const UserSolver& user, const double* Q, const double* grad, double* R) const {
    const int q = cfg_.q;
    if (!cfg_.source && !cfg_.ncp) return;
    std::vector<double> s(q, 0.0), b(q, 0.0), g(cfg_.d * q);
    for (int i = 0; i < nodes_; ++i) {
      if (cfg_.source) user.source(Q + i * qP_, s.data());
      if (cfg_.ncp) {
        gather(grad, i, g.data());
        user.ncp(Q + i * qP_, g.data(), b.data());
      }
      for (int v = 0; v < q; ++v) R[i * qP_ + v] += s[v] - b[v];
    }
  }

  int picard(const UserSolver& user, const double* luh, double dt, double h, double* qhi, double* fhi,
             double* shi) const {
    const int n = n_, d = cfg_.d;
    const double invh = 1.0 / h;
    std::vector<double> q(n * vol_), R(n * vol_), F(d * vol_, 0.0), grad(d * vol_, 0.0);
    double scale = 1.0;
    for (int e = 0; e < vol_; ++e) scale = std::max(scale, std::abs(luh[e]));
    for (int t = 0; t < n; ++t) std::copy(luh, luh + vol_, q.begin() + t * vol_);

    int iterations = 0;
    double residual = 0.0;
    bool finite = true;
    for (int it = 0; it < picard_cap(cfg_.N) && finite; ++it) {
      for (int l = 0; l < n; ++l)
        spaceOperator(user, q.data() + l * vol_, invh, h, F.data(), grad.data(), R.data() + l * vol_);
      residual = 0.0;
      for (int k = 0; k < n; ++k)
        for (int e = 0; e < vol_; ++e) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += basis_.iK1W[k * n + l] * R[l * vol_ + e];
          const double next = luh[e] + dt * acc;
          const double diff = std::abs(next - q[k * vol_ + e]);
          if (!std::isfinite(diff)) finite = false;
          residual = std::max(residual, diff);
          q[k * vol_ + e] = next;
        }
      iterations = it + 1;
      if (residual <= kPicardTolerance * scale) break;
    }
    if (!finite || !(residual <= kPicardAccept * scale)) return -1;

    std::fill(qhi, qhi + vol_, 0.0);
    std::fill(fhi, fhi + d * vol_, 0.0);
    std::fill(shi, shi + vol_, 0.0);
    std::vector<double> S(vol_);
    for (int l = 0; l < n; ++l) {
      const double wl = basis_.weights[l];
      const double* ql = q.data() + l * vol_;
      for (int e = 0; e < vol_; ++e) qhi[e] += wl * ql[e];
      if (cfg_.needsGradients()) gradients(ql, h, grad.data());
      evalFlux(user, ql, grad.data(), F.data());
      for (int e = 0; e < d * vol_; ++e) fhi[e] += wl * F[e];
      if (cfg_.source || cfg_.ncp) {
        std::fill(S.begin(), S.end(), 0.0);
        addSourceTerms(user, ql, grad.data(), S.data());
        for (int e = 0; e < vol_; ++e) shi[e] += wl * S[e];
      }
    }
    return iterations;
  }

  void ck(const UserSolver& user, const double* luh, double dt, double h, double* qhi, double* fhi,
          double* shi) const {
    const int n = n_, d = cfg_.d;
    const double invh = 1.0 / h;
    std::vector<double> p(n * vol_), F(d * vol_, 0.0), grad(d * vol_, 0.0);
    std::copy(luh, luh + vol_, p.begin());
    std::copy(luh, luh + vol_, qhi);
    double c = 1.0;
    for (int k = 0; k < n - 1; ++k) {
      c = c * dt / (k + 2);
      double* next = p.data() + (k + 1) * vol_;
      spaceOperator(user, p.data() + k * vol_, invh, h, F.data(), grad.data(), next);
      for (int e = 0; e < vol_; ++e) qhi[e] += c * next[e];
    }
    finishLinear(user, qhi, h, F.data(), grad.data(), fhi, shi);
  }

  void otf(const UserSolver& user, const double* luh, double dt, double h, double* qhi, double* fhi,
           double* shi) const {
    const int n = n_, d = cfg_.d, q = cfg_.q;
    const double invh = 1.0 / h;
    std::vector<double> cur(luh, luh + vol_), next(vol_), lineF(n * qP_, 0.0), S(q);
    std::copy(luh, luh + vol_, qhi);
    double c = 1.0;
    for (int k = 0; k < n - 1; ++k) {
      c = c * dt / (k + 2);
      std::fill(next.begin(), next.end(), 0.0);
      for (int dir = 0; dir < d; ++dir) {
        const int stride = ipow(n, dir);
        const int upper = nodes_ / (stride * n);
        for (int u = 0; u < upper; ++u)
          for (int l = 0; l < stride; ++l) {
            const int base = l + u * stride * n;
            for (int j = 0; j < n; ++j) user.fluxDir(cur.data() + (base + j * stride) * qP_, dir, lineF.data() + j * qP_);
            for (int i = 0; i < n; ++i)
              for (int v = 0; v < q; ++v) {
                double s = 0.0;
                for (int j = 0; j < n; ++j) s += lineF[j * qP_ + v] * basis_.D[i * n + j];
                next[(base + i * stride) * qP_ + v] += s;
              }
          }
      }
      for (int e = 0; e < vol_; ++e) next[e] = -invh * next[e];
      if (cfg_.source)
        for (int i = 0; i < nodes_; ++i) {
          user.source(cur.data() + i * qP_, S.data());
          for (int v = 0; v < q; ++v) next[i * qP_ + v] += S[v];
        }
      for (int e = 0; e < vol_; ++e) qhi[e] += c * next[e];
      cur.swap(next);
    }
    std::fill(fhi, fhi + d * vol_, 0.0);
    for (int i = 0; i < nodes_; ++i)
      for (int dir = 0; dir < d; ++dir) user.fluxDir(qhi + i * qP_, dir, fhi + dir * vol_ + i * qP_);
    std::fill(shi, shi + vol_, 0.0);
    if (cfg_.source)
      for (int i = 0; i < nodes_; ++i) {
        user.source(qhi + i * qP_, S.data());
        for (int v = 0; v < q; ++v) shi[i * qP_ + v] = S[v];
      }
  }

  // Linear PDE: time averages of flux and sources are the flux and sources of the averaged state.
  void finishLinear(const UserSolver& user, const double* qhi, double h, double* F, double* grad, double* fhi,
                    double* shi) const {
    if (cfg_.needsGradients()) gradients(qhi, h, grad);
    std::fill(fhi, fhi + cfg_.d * vol_, 0.0);
    evalFlux(user, qhi, grad, fhi);
    std::fill(shi, shi + vol_, 0.0);
    addSourceTerms(user, qhi, grad, shi);
    (void)F;
  }

  void extrapolate(const double* qhi, const double* fhi, double* qhbnd, double* fhbnd) const {
    const int fsize = cfg_.face();
    for (int dir = 0; dir < cfg_.d; ++dir) {
      const int stride = ipow(n_, dir);
      for (int side = 0; side < 2; ++side) {
        const double* phi = side == 0 ? basis_.FL.data() : basis_.FR.data();
        double* qb = qhbnd + (2 * dir + side) * fsize;
        double* fb = fhbnd + (2 * dir + side) * fsize;
        const double* fd = fhi + dir * vol_;
        for (int fn = 0; fn < fnodes_; ++fn) {
          const int base = fn % stride + (fn / stride) * stride * n_;
          for (int v = 0; v < qP_; ++v) {
            double sq = 0.0, sf = 0.0;
            for (int j = 0; j < n_; ++j) {
              sq += phi[j] * qhi[(base + j * stride) * qP_ + v];
              sf += phi[j] * fd[(base + j * stride) * qP_ + v];
            }
            qb[fn * qP_ + v] = sq;
            fb[fn * qP_ + v] = sf;
          }
        }
      }
    }
  }

  KernelConfig cfg_;
  dg::BasisTables basis_;
  limiter::Projection1D proj_;
  int n_, qP_, vol_, nodes_, fnodes_;
};

/// Bytes of temporary state a predictor variant keeps per cell.
struct MemoryReport {
  long long buffers = 0;    // the variant-defining state buffers
  long long constants = 0;  // flux scratch and operator tables
  long long total() const { return buffers + constants; }
  std::string formula;
};

inline MemoryReport temp_memory_report(int N, int d, int q, Predictor variant) {
  const long long n = N + 1, nd = ipow(N + 1, d);
  const long long state = 8LL * q * nd;
  const long long tables = 8LL * n * n;
  MemoryReport r;
  switch (variant) {
    case Predictor::ck:
      r.buffers = state * (N + 2);
      r.constants = 8LL * d * q * nd + tables;
      r.formula = "ck: 8*q*(N+1)^d*(N+2) [N+1 derivative levels + accumulator] + 8*d*q*(N+1)^d [flux scratch] + 8*(N+1)^2 [D]";
      break;
    case Predictor::otf:
      r.buffers = state * 3;
      r.constants = 8LL * q * n + tables;
      r.formula = "otf: 8*q*(N+1)^d*3 [current, next, accumulator] + 8*q*(N+1) [line flux] + 8*(N+1)^2 [D]";
      break;
    case Predictor::picard:
      r.buffers = state * n;
      r.constants = state * n + 8LL * d * q * nd + tables;
      r.formula = "picard: 8*q*(N+1)^(d+1) [space-time dofs] + 8*q*(N+1)^(d+1) [space-time operator] + 8*d*q*(N+1)^d [flux scratch] + 8*(N+1)^2 [iK1W]";
      break;
  }
  return r;
}

}  // namespace adergen
