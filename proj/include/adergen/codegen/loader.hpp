#pragma once

#include <dlfcn.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "adergen/codegen/generator.hpp"
#include "adergen/dg/kernels_api.hpp"

namespace adergen::codegen {

class MissingManifest : public std::runtime_error {
 public:
  explicit MissingManifest(const std::filesystem::path& p) : std::runtime_error("missing manifest: " + p.string()) {}
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline nlohmann::json read_manifest(const std::filesystem::path& generated_dir) {
  const auto p = generated_dir / kManifestName;
  std::ifstream in(p);
  if (!in) throw MissingManifest(p);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError("unreadable manifest " + p.string() + ": " + e.what());
  }
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

/// Compile the sources listed in the manifest into its shared library.
inline std::filesystem::path build_generated(const std::filesystem::path& generated_dir, const std::string& compiler,
                                             const std::string& include_dir) {
  const nlohmann::json m = read_manifest(generated_dir);
  const auto lib = generated_dir / m.at("library").get<std::string>();
  std::string cmd = "cd " + shell_quote(generated_dir.string()) + " && " + shell_quote(compiler);
  for (const auto& f : m.at("compile_flags")) cmd += " " + f.get<std::string>();
  for (const auto& d : m.at("include_dirs")) {
    std::string dir = d.get<std::string>();
    if (dir == kIncludePlaceholder) dir = include_dir;
    cmd += " -I" + shell_quote(dir);
  }
  for (const auto& s : m.at("sources")) cmd += " " + shell_quote(s.get<std::string>());
  cmd += " -o " + shell_quote(lib.filename().string()) + " 2>&1";
  if (std::system(cmd.c_str()) != 0) throw LoadError("compiling the generated kernels failed: " + cmd);
  return lib;
}

/// A dlopen'ed generated kernel library. The kernels object is destroyed
/// before the library is unloaded.
class LoadedKernels {
 public:
  LoadedKernels(void* handle, Kernels* k) : handle_(handle), kernels_(k) {}
  LoadedKernels(const LoadedKernels&) = delete;
  LoadedKernels& operator=(const LoadedKernels&) = delete;
  ~LoadedKernels() {
    kernels_.reset();
    if (handle_) dlclose(handle_);
  }
  Kernels& kernels() const { return *kernels_; }

 private:
  void* handle_;
  std::unique_ptr<Kernels> kernels_;
};

inline std::unique_ptr<LoadedKernels> load_library(const std::filesystem::path& lib, const std::string& project) {
  void* h = dlopen(lib.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (!h) throw LoadError(std::string("dlopen failed: ") + dlerror());
  const std::string sym = "adergen_create_kernels_" + project;
  auto create = reinterpret_cast<adergen_create_kernels_fn>(dlsym(h, sym.c_str()));
  if (!create) {
    dlclose(h);
    throw LoadError("symbol " + sym + " not found in " + lib.string());
  }
  return std::make_unique<LoadedKernels>(h, create());
}

/// Load <generated_dir>'s kernels, compiling them first when the library is
/// missing or older than the manifest.
inline std::unique_ptr<LoadedKernels> load_generated(const std::filesystem::path& generated_dir,
                                                     const std::string& compiler, const std::string& include_dir) {
  namespace fs = std::filesystem;
  const nlohmann::json m = read_manifest(generated_dir);
  auto lib = generated_dir / m.at("library").get<std::string>();
  std::error_code ec;
  if (!fs::exists(lib) || fs::last_write_time(lib, ec) < fs::last_write_time(generated_dir / kManifestName, ec))
    lib = build_generated(generated_dir, compiler, include_dir);
  return load_library(fs::absolute(lib), m.at("project").get<std::string>());
}

}  // namespace adergen::codegen
