#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "adergen/codegen/model.hpp"
#include "adergen/spec/specification.hpp"
#include "adergen/tmpl/render.hpp"

namespace adergen::codegen {

/// A template failed to render; carries the template the View was rendered from.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(std::string templ, const std::string& what)
      : std::runtime_error("while rendering " + templ + ": " + what), template_(std::move(templ)) {}
  const std::string& template_path() const { return template_; }

 private:
  std::string template_;
};

/// Rendered files keyed by path relative to <out>/generated, in emission order.
struct GeneratedTree {
  std::vector<std::string> order;
  std::map<std::string, std::string> files;
  nlohmann::json manifest;

  const std::string& at(const std::string& path) const { return files.at(path); }
  bool contains(const std::string& path) const { return files.count(path) != 0; }
};

/// Manifest key for the runtime include directory; substituted at build time.
inline constexpr const char* kIncludePlaceholder = "${ADERGEN_INCLUDE_DIR}";
inline constexpr const char* kManifestName = "manifest.json";

namespace detail {

inline std::string render_view(const tmpl::Environment& env, const std::string& templ, const tmpl::Map& ctx) {
  try {
    return env.render(templ, ctx);
  } catch (const tmpl::TemplateError& e) {
    throw GenerationError(templ, e.what());
  }
}

}  // namespace detail

inline std::string generate_user_solver_stub(const tmpl::Environment& env, const tmpl::Map& ctx) {
  return detail::render_view(env, "glue/UserSolver.h.tpl", ctx);
}

inline std::string shared_library_name(const std::string& project) { return "lib" + project + "_kernels.so"; }

/// Render every View of the spec. Pure function of the spec and the template corpus.
inline GeneratedTree generate_all(const spec::Specification& s, const tmpl::Environment& env) {
  const KernelPlan plan = select_kernel_variants(s);
  const auto ctx = build_contexts(s);
  GeneratedTree tree;
  auto emit = [&](const std::string& path, const std::string& templ, const std::string& model) {
    tree.order.push_back(path);
    tree.files[path] = detail::render_view(env, templ, ctx.at(model));
  };
  emit("kernels/constants.h", "kernels/constants.tpl", "constants");
  if (plan.gradients) emit("kernels/gradients.h", "kernels/gradients.tpl", "gradients");
  emit("kernels/predictor.h", "kernels/predictor.tpl", "predictor");
  emit("kernels/riemann.h", "kernels/riemann.tpl", "riemann");
  emit("kernels/update.h", "kernels/update.tpl", "update");
  if (plan.limiter) {
    emit("kernels/projection.h", "kernels/projection.tpl", "limiter");
    emit("kernels/dmp.h", "kernels/dmp.tpl", "limiter");
    emit("kernels/fv_step.h", "kernels/fv_step.tpl", "limiter");
  }
  emit("glue/registry.cpp", "glue/registry.tpl", "glue");
  tree.order.push_back("UserSolver.h");
  tree.files["UserSolver.h"] = generate_user_solver_stub(env, ctx.at("stub"));
  emit("UserSolver.cpp", "glue/UserSolver.cpp.tpl", "stub");

  if (plan.flux_call == "soa" && tree.at("UserSolver.h").find("fluxVect(") == std::string::npos)
    throw GenerationError("glue/UserSolver.h.tpl", "useFluxVect is set but the user solver stub lacks fluxVect");

  nlohmann::json bindings = nlohmann::json::array();
  for (const Binding& b : kernel_bindings(s, plan)) {
    if (!tree.contains(b.file))
      throw GenerationError("glue/registry.tpl", "binding '" + b.role + "' names missing file " + b.file);
    bindings.push_back({{"role", b.role}, {"symbol", b.symbol}, {"file", b.file}});
  }
  nlohmann::json& m = tree.manifest;
  m["project"] = s.project_name;
  m["files"] = tree.order;
  m["sources"] = {"glue/registry.cpp", "UserSolver.cpp"};
  m["include_dirs"] = {".", kIncludePlaceholder};
  m["compile_flags"] = {"-std=c++20", "-O2", "-ffp-contract=off", "-fPIC", "-shared"};
  m["library"] = shared_library_name(s.project_name);
  m["factory"] = "adergen_create_kernels_" + s.project_name;
  m["bindings"] = bindings;
  tree.order.push_back(kManifestName);
  tree.files[kManifestName] = m.dump(2) + "\n";
  return tree;
}

inline GeneratedTree generate_all(const spec::Specification& s, const std::filesystem::path& template_root) {
  return generate_all(s, tmpl::Environment::from_directory(template_root));
}

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes the tree under <out>/generated. The manifest goes last so its
/// presence marks a complete tree.
inline std::filesystem::path write_tree(const GeneratedTree& tree, const std::filesystem::path& out) {
  namespace fs = std::filesystem;
  const fs::path root = out / "generated";
  std::error_code ec;
  fs::remove(root / kManifestName, ec);
  auto put = [&](const std::string& rel) {
    const fs::path p = root / rel;
    fs::create_directories(p.parent_path(), ec);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw WriteError("cannot write " + p.string());
    f << tree.at(rel);
    if (!f) throw WriteError("write failed: " + p.string());
  };
  for (const std::string& rel : tree.order)
    if (rel != kManifestName) put(rel);
  put(kManifestName);
  return root;
}

}  // namespace adergen::codegen
