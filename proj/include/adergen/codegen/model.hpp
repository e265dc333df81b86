#pragma once

#include <map>
#include <string>
#include <vector>

#include "adergen/dg/basis.hpp"
#include "adergen/dg/config.hpp"
#include "adergen/dg/generic_kernels.hpp"
#include "adergen/limiter/projection.hpp"
#include "adergen/spec/specification.hpp"
#include "adergen/tmpl/value.hpp"

namespace adergen::codegen {

/// Which template variant renders each kernel.
struct KernelPlan {
  std::string predictor = "picard";  // picard | ck | otf
  std::string riemann = "rusanov";
  bool limiter = false;              // dmp, projection and fv-step kernels
  std::string flux_call = "aos";     // aos | soa
  bool gradients = false;
  int nDof = 0, nVar = 0, nVarPad = 0, nDofPad = 0;
  int alignment = 8;

  friend bool operator==(const KernelPlan&, const KernelPlan&) = default;
};

inline KernelPlan select_kernel_variants(const spec::Specification& s) {
  KernelPlan p;
  // The linear variants need a linear PDE; anything else iterates.
  p.predictor = s.linear ? spec::to_string(s.predictor_variant) : "picard";
  p.limiter = s.solver_kind != spec::SolverKind::aderdg;
  p.flux_call = s.optimization.use_flux_vect ? "soa" : "aos";
  // The non-conservative product needs nodal gradients as well.
  p.gradients = s.has(spec::Term::viscous_flux) || s.has(spec::Term::ncp);
  const int w = s.optimization.vector_width;
  p.nDof = s.order + 1;
  p.nVar = s.quantities;
  p.nVarPad = pad(s.quantities, w);
  p.nDofPad = pad(s.order + 1, w);
  p.alignment = s.optimization.alignment_bytes();
  return p;
}

/// Role of one generated entry point, for the glue registry and manifest.
struct Binding {
  std::string role, symbol, file;
};

inline std::vector<Binding> kernel_bindings(const spec::Specification& s, const KernelPlan& p) {
  const std::string ns = s.project_name + "::kernels::";
  std::vector<Binding> b = {
      {"predictor", ns + "spaceTimePredictor", "kernels/predictor.h"},
      {"riemann", ns + "riemannSolver", "kernels/riemann.h"},
      {"maxEigenvalue", ns + "maxEigenvalue", "kernels/riemann.h"},
      {"update", ns + "solutionUpdate", "kernels/update.h"},
  };
  if (p.gradients) b.push_back({"gradients", ns + "gradients", "kernels/gradients.h"});
  if (p.limiter) {
    b.push_back({"projectToSubcells", ns + "projectToSubcells", "kernels/projection.h"});
    b.push_back({"projectToDG", ns + "projectToDG", "kernels/projection.h"});
    b.push_back({"projectFaceToSubfaces", ns + "projectFaceToSubfaces", "kernels/projection.h"});
    b.push_back({"subcellMinMax", ns + "subcellMinMax", "kernels/dmp.h"});
    b.push_back({"dmpSatisfied", ns + "dmpSatisfied", "kernels/dmp.h"});
    b.push_back({"fvLineFluxes", ns + "fvLineFluxes", "kernels/fv_step.h"});
  }
  b.push_back({"factory", "adergen_create_kernels_" + s.project_name, "glue/registry.cpp"});
  return b;
}

namespace detail {

inline tmpl::List reals(const std::vector<double>& v) {
  tmpl::List out;
  out.reserve(v.size());
  for (double x : v) out.emplace_back(x);
  return out;
}

}  // namespace detail

/// One render context per Model. Every context carries the shared keys; the
/// rest is what that Model's templates read and nothing more.
inline std::map<std::string, tmpl::Map> build_contexts(const spec::Specification& s) {
  using tmpl::Map;
  using tmpl::Value;
  const KernelPlan p = select_kernel_variants(s);
  const bool flux = s.has(spec::Term::flux), source = s.has(spec::Term::source), ncp = s.has(spec::Term::ncp),
             viscous = s.has(spec::Term::viscous_flux);

  const Map shared = {
      {"namespace", s.project_name},
      {"solverName", "user"},
      {"nDim", s.dimension},
      {"nDof", p.nDof},
      {"nDofPad", p.nDofPad},
      {"nVar", p.nVar},
      {"nVarPad", p.nVarPad},
      {"alignment", p.alignment},
      {"vectSize", s.optimization.vector_width},
      {"tempVarsOnStack", s.optimization.temp_vars_on_stack},
      {"useFluxVect", p.flux_call == "soa"},
      {"useViscousFlux", viscous},
  };
  auto with = [&](std::initializer_list<std::pair<const std::string, Value>> extra) {
    Map m = shared;
    for (const auto& [k, v] : extra) m[k] = v;
    return m;
  };

  const dg::BasisTables basis = dg::precompute_basis(s.order);
  std::map<std::string, Map> ctx;
  ctx["constants"] = shared;
  ctx["predictor"] = with({
      {"predictor", p.predictor},
      {"useFlux", flux},
      {"useSource", source},
      {"useNCP", ncp},
      {"useGradients", p.gradients},
      {"weights", detail::reals(basis.weights)},
      {"FL", detail::reals(basis.FL)},
      {"FR", detail::reals(basis.FR)},
      {"D", detail::reals(basis.D)},
      {"dudxT", detail::reals(basis.dudxT)},
      {"iK1W", detail::reals(basis.iK1W)},
      {"picardCap", picard_cap(s.order)},
      {"picardTolerance", kPicardTolerance},
      {"picardAccept", kPicardAccept},
  });
  ctx["riemann"] = with({{"useNCP", ncp}});
  ctx["update"] = with({
      {"Kvol", detail::reals(basis.Kvol)},
      {"sL", detail::reals(basis.sL)},
      {"sR", detail::reals(basis.sR)},
  });
  if (p.gradients) ctx["gradients"] = with({{"dudxT", detail::reals(basis.dudxT)}});
  if (p.limiter) {
    const auto proj = limiter::projection_1d(basis);
    ctx["limiter"] = with({{"nSub", proj.m}, {"P", detail::reals(proj.P)}, {"R", detail::reals(proj.R)}});
  }

  tmpl::List bindings, headers;
  for (const Binding& b : kernel_bindings(s, p)) {
    bindings.push_back(Map{{"role", b.role}, {"symbol", b.symbol}, {"file", b.file}});
    const bool seen = std::any_of(headers.begin(), headers.end(), [&](const Value& h) { return h.as_string() == b.file; });
    if (b.file != "glue/registry.cpp" && !seen) headers.push_back(b.file);
  }
  ctx["glue"] = with({
      {"predictor", p.predictor},
      {"useFlux", flux},
      {"useSource", source},
      {"useNCP", ncp},
      {"useGradients", p.gradients},
      {"useLimiter", p.limiter},
      {"bindings", bindings},
      {"headers", headers},
  });
  ctx["stub"] = with({
      {"useFlux", flux},
      {"useSource", source},
      {"useNCP", ncp},
      {"useFluxDir", p.predictor == "otf"},
  });
  return ctx;
}

}  // namespace adergen::codegen
