#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "adergen/dg/user_solver.hpp"
#include "json.hpp"

namespace adergen::apps {

/// Linear advection of q independent scalars with velocity a and optional
/// linear decay source S = -decay * Q.
class Advection : public UserSolver {
 public:
  Advection(int d, int q, std::vector<double> velocity, double decay = 0.0, std::string scenario = "sine",
            std::vector<double> origin = {}, std::vector<double> extent = {})
      : d_(d), q_(q), a_(std::move(velocity)), decay_(decay), scenario_(std::move(scenario)) {
    a_.resize(d, 0.0);
    origin_ = origin.empty() ? std::vector<double>(d, 0.0) : origin;
    extent_ = extent.empty() ? std::vector<double>(d, 1.0) : extent;
  }

  int nVar() const override { return q_; }
  int nDim() const override { return d_; }
  const std::vector<double>& velocity() const { return a_; }
  double decay() const { return decay_; }

  /// Exact solution of the periodic problem.
  void exact(const double* x, double t, double* Q) const {
    std::vector<double> y(d_);
    for (int i = 0; i < d_; ++i) {
      double s = x[i] - a_[i] * t - origin_[i];
      s -= extent_[i] * std::floor(s / extent_[i]);
      y[i] = origin_[i] + s;
    }
    initial(y.data(), Q);
    const double damp = std::exp(-decay_ * t);
    for (int v = 0; v < q_; ++v) Q[v] *= damp;
  }

  void initial(const double* x, double* Q) const override {
    if (scenario_ == "constant") {
      for (int v = 0; v < q_; ++v) Q[v] = 1.0 + v;
      return;
    }
    double sum = 0.0, alt = 0.0;
    for (int i = 0; i < d_; ++i) {
      const double xi = (x[i] - origin_[i]) / extent_[i];
      sum += xi;
      alt += (i % 2 == 0 ? xi : -xi);
    }
    for (int v = 0; v < q_; ++v)
      Q[v] = 0.5 + 0.5 * std::sin(2.0 * M_PI * sum) + 0.25 * v * std::cos(2.0 * M_PI * alt);
  }

  void eigenvalues(const double*, int dir, double* lambda) const override {
    for (int v = 0; v < q_; ++v) lambda[v] = a_[dir];
  }

  void flux(const double* Q, double** F) const override {
    for (int dir = 0; dir < d_; ++dir)
      for (int v = 0; v < q_; ++v) F[dir][v] = a_[dir] * Q[v];
  }

  void fluxDir(const double* Q, int dir, double* F) const override {
    for (int v = 0; v < q_; ++v) F[v] = a_[dir] * Q[v];
  }

  void fluxVect(const double* const* Q, double* const* const* F, int vectSize) const override {
    for (int dir = 0; dir < d_; ++dir)
      for (int v = 0; v < q_; ++v)
        for (int i = 0; i < vectSize; ++i) F[dir][v][i] = a_[dir] * Q[v][i];
  }

  void source(const double* Q, double* S) const override {
    for (int v = 0; v < q_; ++v) S[v] = -decay_ * Q[v];
  }

  bool admissible(const double* Q) const override {
    for (int v = 0; v < q_; ++v)
      if (!std::isfinite(Q[v])) return false;
    return true;
  }

 private:
  int d_, q_;
  std::vector<double> a_;
  double decay_;
  std::string scenario_;
  std::vector<double> origin_, extent_;
};

/// Compressible Euler equations, Q = (rho, rho*u_1..rho*u_d, E).
class Euler : public UserSolver {
 public:
  Euler(int d, std::string scenario, std::vector<double> origin, std::vector<double> extent, double gamma = 1.4)
      : d_(d), gamma_(gamma), scenario_(std::move(scenario)), origin_(std::move(origin)), extent_(std::move(extent)) {
    origin_.resize(d, 0.0);
    extent_.resize(d, 1.0);
  }

  int nVar() const override { return d_ + 2; }
  int nDim() const override { return d_; }
  double gamma() const { return gamma_; }

  double pressure(const double* Q) const {
    double m2 = 0.0;
    for (int i = 0; i < d_; ++i) m2 += Q[1 + i] * Q[1 + i];
    return (gamma_ - 1.0) * (Q[d_ + 1] - 0.5 * m2 / Q[0]);
  }

  void primitiveToConserved(double rho, const double* u, double p, double* Q) const {
    Q[0] = rho;
    double u2 = 0.0;
    for (int i = 0; i < d_; ++i) {
      Q[1 + i] = rho * u[i];
      u2 += u[i] * u[i];
    }
    Q[d_ + 1] = p / (gamma_ - 1.0) + 0.5 * rho * u2;
  }

  void initial(const double* x, double* Q) const override {
    double u[3] = {0.0, 0.0, 0.0};
    if (scenario_ == "isentropic_vortex") {
      const double eps = 5.0;
      const double cx = origin_[0] + 0.5 * extent_[0], cy = origin_[1] + 0.5 * extent_[1];
      const double dx = x[0] - cx, dy = x[1] - cy;
      const double r2 = dx * dx + dy * dy;
      const double du = eps / (2.0 * M_PI) * std::exp(0.5 * (1.0 - r2));
      const double dT = -(gamma_ - 1.0) * eps * eps / (8.0 * gamma_ * M_PI * M_PI) * std::exp(1.0 - r2);
      const double rho = std::pow(1.0 + dT, 1.0 / (gamma_ - 1.0));
      u[0] = 1.0 - du * dy;
      u[1] = 1.0 + du * dx;
      primitiveToConserved(rho, u, std::pow(rho, gamma_), Q);
    } else if (scenario_ == "double_sod") {
      const double s = (x[0] - origin_[0]) / extent_[0];
      const bool inner = s > 0.25 && s < 0.75;
      primitiveToConserved(inner ? 1.0 : 0.125, u, inner ? 1.0 : 0.1, Q);
    } else if (scenario_ == "uniform") {
      u[0] = 0.3;
      u[1] = 0.2;
      primitiveToConserved(1.0, u, 1.0, Q);
    } else {
      throw std::invalid_argument("unknown euler scenario: " + scenario_);
    }
  }

  void eigenvalues(const double* Q, int dir, double* lambda) const override {
    const double irho = 1.0 / Q[0];
    const double c = std::sqrt(gamma_ * pressure(Q) * irho);
    const double u = Q[1 + dir] * irho;
    lambda[0] = u - c;
    for (int v = 1; v <= d_; ++v) lambda[v] = u;
    lambda[d_ + 1] = u + c;
  }

  void flux(const double* Q, double** F) const override {
    const double irho = 1.0 / Q[0];
    const double p = pressure(Q);
    for (int dir = 0; dir < d_; ++dir) {
      F[dir][0] = Q[1 + dir];
      for (int i = 0; i < d_; ++i) F[dir][1 + i] = irho * Q[1 + i] * Q[1 + dir];
      F[dir][1 + dir] += p;
      F[dir][d_ + 1] = irho * (Q[d_ + 1] + p) * Q[1 + dir];
    }
  }

  void fluxDir(const double* Q, int dir, double* F) const override {
    const double irho = 1.0 / Q[0];
    const double p = pressure(Q);
    F[0] = Q[1 + dir];
    for (int i = 0; i < d_; ++i) F[1 + i] = irho * Q[1 + i] * Q[1 + dir];
    F[1 + dir] += p;
    F[d_ + 1] = irho * (Q[d_ + 1] + p) * Q[1 + dir];
  }

  // Same per-point arithmetic as flux(), with the point index fastest.
  void fluxVect(const double* const* Q, double* const* const* F, int vectSize) const override {
    for (int i = 0; i < vectSize; ++i) {
      const double irho = 1.0 / Q[0][i];
      double m2 = 0.0;
      for (int k = 0; k < d_; ++k) m2 += Q[1 + k][i] * Q[1 + k][i];
      const double p = (gamma_ - 1.0) * (Q[d_ + 1][i] - 0.5 * m2 / Q[0][i]);
      for (int dir = 0; dir < d_; ++dir) {
        F[dir][0][i] = Q[1 + dir][i];
        for (int k = 0; k < d_; ++k) F[dir][1 + k][i] = irho * Q[1 + k][i] * Q[1 + dir][i];
        F[dir][1 + dir][i] += p;
        F[dir][d_ + 1][i] = irho * (Q[d_ + 1][i] + p) * Q[1 + dir][i];
      }
    }
  }

  bool admissible(const double* Q) const override {
    for (int v = 0; v < d_ + 2; ++v)
      if (!std::isfinite(Q[v])) return false;
    return Q[0] > 0.0 && pressure(Q) > 0.0;
  }

 protected:
  int d_;
  double gamma_;
  std::string scenario_;
  std::vector<double> origin_, extent_;
};

/// Compressible Navier-Stokes: Euler flux minus the viscous stress
/// sigma = mu (grad u + grad u^T - 2/3 div u I) and heat flux kappa grad T,
/// with T = p / rho.
class NavierStokes : public Euler {
 public:
  NavierStokes(int d, std::string scenario, std::vector<double> origin, std::vector<double> extent, double mu,
               double kappa, double gamma = 1.4)
      : Euler(d, std::move(scenario), std::move(origin), std::move(extent), gamma), mu_(mu), kappa_(kappa) {}

  double mu() const { return mu_; }
  double kappa() const { return kappa_; }

  void initial(const double* x, double* Q) const override {
    if (scenario_ == "polynomial") {
      // Degree <= 2 in each coordinate so an N >= 2 basis holds it exactly.
      const double X = x[0], Y = d_ > 1 ? x[1] : 0.0;
      Q[0] = 1.0 + 0.1 * X + 0.05 * Y * Y;
      Q[1] = 0.2 + 0.1 * X * Y;
      if (d_ > 1) Q[2] = 0.1 - 0.05 * X * X;
      if (d_ > 2) Q[3] = 0.05;
      Q[d_ + 1] = 2.5 + 0.1 * Y;
      return;
    }
    Euler::initial(x, Q);
  }

  void viscousFlux(const double* Q, const double* gradQ, double** F) const override {
    const int q = d_ + 2;
    flux(Q, F);
    const double rho = Q[0], irho = 1.0 / rho;
    double u[3] = {0, 0, 0}, gu[3][3] = {{0}}, gT[3] = {0, 0, 0};
    for (int i = 0; i < d_; ++i) u[i] = Q[1 + i] * irho;
    const double p = pressure(Q);
    const double T = p * irho;
    for (int k = 0; k < d_; ++k) {
      const double* g = gradQ + k * q;
      double gke = 0.0;  // derivative of the kinetic energy 1/2 rho |u|^2
      for (int i = 0; i < d_; ++i) {
        gu[i][k] = (g[1 + i] - u[i] * g[0]) * irho;
        gke += 0.5 * u[i] * u[i] * g[0] + rho * u[i] * gu[i][k];
      }
      const double gp = (gamma_ - 1.0) * (g[d_ + 1] - gke);
      gT[k] = (gp - T * g[0]) * irho;
    }
    double div = 0.0;
    for (int i = 0; i < d_; ++i) div += gu[i][i];
    for (int dir = 0; dir < d_; ++dir) {
      double work = 0.0;
      for (int i = 0; i < d_; ++i) {
        double sigma = mu_ * (gu[i][dir] + gu[dir][i]);
        if (i == dir) sigma -= mu_ * 2.0 / 3.0 * div;
        F[dir][1 + i] -= sigma;
        work += sigma * u[i];
      }
      F[dir][d_ + 1] -= work + kappa_ * gT[dir];
    }
  }

  double viscousPenalty(const double* QL, const double* QR, double h) const override {
    return 2.0 * std::max(mu_, kappa_) / (h * std::min(QL[0], QR[0]));
  }

 private:
  double mu_, kappa_;
};

/// Build the example application named in a spec's application block.
inline std::unique_ptr<UserSolver> make_application(const std::string& name, const std::string& scenario,
                                                    const nlohmann::json& raw, int d, int q,
                                                    const std::vector<double>& origin,
                                                    const std::vector<double>& extent) {
  const nlohmann::json params = raw.is_object() ? raw : nlohmann::json::object();
  if (name == "advection") {
    std::vector<double> a = params.value("velocity", std::vector<double>(d, 1.0));
    return std::make_unique<Advection>(d, q, a, params.value("decay", 0.0), scenario.empty() ? "sine" : scenario,
                                       origin, extent);
  }
  if (name == "euler")
    return std::make_unique<Euler>(d, scenario.empty() ? "uniform" : scenario, origin, extent,
                                   params.value("gamma", 1.4));
  if (name == "navier_stokes")
    return std::make_unique<NavierStokes>(d, scenario.empty() ? "uniform" : scenario, origin, extent,
                                          params.value("mu", 0.01), params.value("kappa", 0.01),
                                          params.value("gamma", 1.4));
  throw std::invalid_argument("unknown application: " + name);
}

}  // namespace adergen::apps
