#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "adergen/dg/generic_kernels.hpp"
#include "adergen/runtime/apps.hpp"
#include "adergen/runtime/run.hpp"
#include "helpers.hpp"

using namespace adergen;
using namespace adergen::runtime;
using namespace testing_helpers;

namespace {

std::unique_ptr<UserSolver> app_for(const spec::Specification& s) {
  return apps::make_application(s.application->name, s.application->scenario, s.application->parameters, s.dimension,
                                s.quantities, s.mesh.origin, s.mesh.extent);
}

double max_state_diff(const Mesh& a, const Mesh& b) {
  double m = 0.0;
  for (int c = 0; c < a.count(); ++c) m = std::max(m, max_abs_diff(a.state[c].luh, b.state[c].luh));
  return m;
}

/// Initial data with a vacuum somewhere.
class NegativeDensity : public apps::Euler {
 public:
  NegativeDensity() : Euler(2, "uniform", {0, 0}, {1, 1}) {}
  void initial(const double* x, double* Q) const override {
    Euler::initial(x, Q);
    if (x[0] > 0.5 && x[1] > 0.5) Q[0] = -0.1;
  }
};

}  // namespace

TEST(Mesh, GeometryAndConstantInitialData) {
  auto s = load_fixture("advection_n3");
  apps::Advection adv(2, 1, {1.0, 0.5}, 0.0, "constant");
  auto basis = dg::precompute_basis(3);
  Mesh mesh = init_mesh(s, adv, basis);
  EXPECT_DOUBLE_EQ(mesh.h, 1.0 / 9.0);
  EXPECT_EQ(mesh.count(), 81);
  for (const auto& cell : mesh.state)
    for (double x : cell.luh) EXPECT_EQ(x, 1.0);
  EXPECT_EQ(mesh.neighbor(0, 0, 0), 8);
  EXPECT_EQ(mesh.neighbor(0, 1, 0), 72);
  EXPECT_EQ(mesh.neighbor(80, 0, 1), 72);
}

TEST(Mesh, InadmissibleInitialDataIsRejected) {
  auto s = load_fixture("euler_n3");
  NegativeDensity bad;
  EXPECT_THROW(init_mesh(s, bad, dg::precompute_basis(3)), InadmissibleInitialData);
}

TEST(TimeStep, FormulaProportionalityAndDegenerateCase) {
  auto s = load_fixture("advection_n3");
  GenericKernels k(kernel_config(s));
  apps::Advection unit(2, 1, {1.0, 0.0});
  Solver a(s, unit, k);
  EXPECT_NEAR(a.stableTimeStep(), 1.0 / 140.0, 1e-16);
  apps::Advection fast(2, 1, {2.0, 0.0});
  Solver b(s, fast, k);
  EXPECT_DOUBLE_EQ(b.stableTimeStep(), 0.5 * a.stableTimeStep());
  apps::Advection still(2, 1, {0.0, 0.0});
  Solver c(s, still, k);
  try {
    c.stableTimeStep();
    FAIL() << "expected NonPropagating";
  } catch (const StepError& e) {
    EXPECT_EQ(e.kind(), "NonPropagating");
  }
}

TEST(Step, UniformStatesArePreserved) {
  for (const char* name : {"advection_n3", "euler_n3", "euler_vect_n3", "advection_otf_n5"}) {
    auto s = load_fixture(name);
    std::unique_ptr<UserSolver> user;
    if (s.application->name == "euler") {
      user = std::make_unique<apps::Euler>(2, "uniform", s.mesh.origin, s.mesh.extent);
    } else {
      user = std::make_unique<apps::Advection>(2, s.quantities,
                                               s.application->parameters["velocity"].get<std::vector<double>>(), 0.0,
                                               "constant");
    }
    GenericKernels k(kernel_config(s));
    Solver solver(s, *user, k);
    Mesh before = solver.mesh();
    const double dt = solver.stableTimeStep();
    for (int i = 0; i < 3; ++i) solver.step(dt);
    EXPECT_LE(max_state_diff(before, solver.mesh()), 1e-14) << name;
  }
}

TEST(Step, NavierStokesUniformFlowIsSteady) {
  auto s = load_fixture("navier_stokes_n3");
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  Mesh before = solver.mesh();
  for (int i = 0; i < 20; ++i) solver.advance();
  EXPECT_LE(max_state_diff(before, solver.mesh()), 1e-12);
}

TEST(Step, NavierStokesPolynomialGradients) {
  auto s = load_fixture("navier_stokes_n3");
  s.order = 2;
  apps::NavierStokes ns(2, "polynomial", s.mesh.origin, s.mesh.extent, 0.01, 0.01);
  KernelConfig cfg = kernel_config(s);
  GenericKernels k(cfg);
  Solver solver(s, ns, k);
  std::vector<double> grad(2 * cfg.volume());
  const auto& mesh = solver.mesh();
  for (int c = 0; c < mesh.count(); ++c) {
    k.gradients(mesh.state[c].luh.data(), mesh.h, grad.data());
    const auto x0 = mesh.corner(c);
    for (int node = 0; node < cfg.nodes(); ++node) {
      const double X = x0[0] + mesh.h * k.basis().nodes[node % 3];
      const double Y = x0[1] + mesh.h * k.basis().nodes[node / 3];
      const double gx[4] = {0.1, 0.1 * Y, -0.1 * X, 0.0};
      const double gy[4] = {0.1 * Y, 0.1 * X, 0.0, 0.1};
      for (int v = 0; v < 4; ++v) {
        EXPECT_NEAR(grad[node * 4 + v], gx[v], 1e-12);
        EXPECT_NEAR(grad[cfg.volume() + node * 4 + v], gy[v], 1e-12);
      }
    }
  }
}

TEST(Step, PeriodicAdvectionConservesMass) {
  for (const char* name : {"advection_n2", "advection_n3", "euler_n3"}) {
    auto s = load_fixture(name);
    auto user = app_for(s);
    GenericKernels k(kernel_config(s));
    Solver solver(s, *user, k);
    auto prev = solver.conservedSums();
    for (int i = 0; i < 10; ++i) {
      auto st = solver.advance();
      for (int v = 0; v < s.quantities; ++v) EXPECT_LE(std::abs(st.sums[v] - prev[v]), 1e-12) << name;
      prev = st.sums;
    }
  }
}

TEST(Step, PredictorFailureAbortsWithoutLimiter) {
  auto s = load_fixture("euler_n3");
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  solver.mesh().state[5].luh[0] = std::nan("");
  try {
    solver.step(0.01);
    FAIL() << "expected NonConvergence";
  } catch (const StepError& e) {
    EXPECT_EQ(e.kind(), "NonConvergence");
    EXPECT_EQ(e.step(), 1);
  }
}

TEST(Run, ZeroEndTimeReturnsInitialCondition) {
  auto s = load_fixture("advection_n3");
  s.time.end_time = 0.0;
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  const std::string initial = grid_dump(solver.mesh(), k.config(), 0.0);
  auto r = run(solver, s);
  EXPECT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.final_dump, initial);
}

TEST(Run, FinalStepIsClamped) {
  auto s = load_fixture("advection_n2");
  s.time.end_time = 0.05;
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  auto r = run(solver, s);
  EXPECT_DOUBLE_EQ(r.log.back().t, 0.05);
  EXPECT_LE(r.log.back().dt, r.log[1].dt);
}

TEST(Output, GridDumpShapeAndDeterminism) {
  auto s = load_fixture("advection_n2");
  s.order = 1;
  s.mesh.cells_per_dim = {1, 1};
  s.time.end_time = 0.1;
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  auto once = [&] {
    Solver solver(s, *user, k);
    return run(solver, s);
  };
  auto a = once(), b = once();
  EXPECT_EQ(a.final_dump, b.final_dump);
  EXPECT_EQ(a.csv, b.csv);
  int rows = 0;
  std::istringstream in(a.final_dump);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# t=0.10000000000000001 N=1 d=2 q=1 cells_per_dim=1x1", 0), 0u) << line;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(a.csv.substr(0, a.csv.find('\n')), "step,t,dt,sum_Q0,troubled_count");
}

TEST(Output, FilesAreWritten) {
  auto s = load_fixture("advection_n2");
  s.time.end_time = 0.02;
  s.output.every_n_steps = 1;
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  auto dir = std::filesystem::temp_directory_path() / "adergen_output_test";
  std::filesystem::remove_all(dir);
  auto r = run(solver, s, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "advection_n2.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "advection_n2_final.dump"));
  EXPECT_TRUE(std::filesystem::exists(dir / "advection_n2_step1.dump"));
  EXPECT_EQ(read_text((dir / "advection_n2.csv").string()), r.csv);
  std::filesystem::remove_all(dir);
}

TEST(Limiter, SmoothDataIsNeverFlagged) {
  auto s = load_fixture("advection_n3");
  s.solver_kind = spec::SolverKind::limiting_aderdg;
  s.limiter = spec::LimiterSpec{};
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  s.solver_kind = spec::SolverKind::aderdg;
  GenericKernels plain(kernel_config(s));
  Solver reference(s, *user, plain);
  for (int i = 0; i < 50; ++i) {
    const double dt = solver.stableTimeStep();
    auto st = solver.step(dt);
    reference.step(dt);
    ASSERT_EQ(st.troubled, 0) << "step " << i;
  }
  EXPECT_EQ(max_state_diff(solver.mesh(), reference.mesh()), 0.0);
}

TEST(Limiter, SodIsFlaggedAndConservative) {
  auto s = load_fixture("euler_limiting_n3");
  s.mesh.cells_per_dim = {12, 12};
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  auto prev = solver.conservedSums();
  for (int i = 0; i < 20; ++i) {
    auto st = solver.advance();
    if (i == 0) EXPECT_GE(st.troubled, 1);
    for (int v = 0; v < 4; ++v) EXPECT_LE(std::abs(st.sums[v] - prev[v]), 1e-12);
    EXPECT_TRUE(solver.acceptedStateAdmissible());
    prev = st.sums;
  }
}

// With detection forced on everywhere, limiting reduces to the FV solver.
TEST(Limiter, AllTroubledEqualsFiniteVolume) {
  auto s = load_fixture("euler_limiting_n3");
  s.mesh.cells_per_dim = {6, 6};
  s.limiter = spec::LimiterSpec{-1.0, 0.0};
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver limiting(s, *user, k);
  spec::Specification fv = s;
  fv.solver_kind = spec::SolverKind::fv;
  GenericKernels kf(kernel_config(fv));
  Solver pure(fv, *user, kf);
  const double dt = 0.002;
  auto st = limiting.step(dt);
  pure.step(dt);
  EXPECT_EQ(st.troubled, 36);
  for (int c = 0; c < 36; ++c) {
    EXPECT_EQ(limiting.mesh().state[c].sub, pure.mesh().state[c].sub);
    EXPECT_EQ(limiting.mesh().state[c].status, LimiterStatus::troubled);
  }
}

TEST(FiniteVolumeSolver, UniformAndConservative) {
  auto s = load_fixture("euler_fv");
  auto user = app_for(s);
  GenericKernels k(kernel_config(s));
  Solver solver(s, *user, k);
  auto prev = solver.conservedSums();
  for (int i = 0; i < 10; ++i) {
    auto st = solver.advance();
    for (int v = 0; v < 4; ++v) EXPECT_LE(std::abs(st.sums[v] - prev[v]), 1e-12);
    EXPECT_TRUE(solver.acceptedStateAdmissible());
    prev = st.sums;
  }
}
