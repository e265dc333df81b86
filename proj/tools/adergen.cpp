// adergen: validate specs, generate kernels, run simulations, benchmark predictor variants.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "adergen/codegen/generator.hpp"
#include "adergen/codegen/loader.hpp"
#include "adergen/dg/generic_kernels.hpp"
#include "adergen/runtime/apps.hpp"
#include "adergen/runtime/run.hpp"
#include "adergen/spec/validate.hpp"

namespace fs = std::filesystem;
using namespace adergen;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kIo = 2 };

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spec;
  std::string out;
  std::string kernels = "generic";
  std::string templates;
  int steps = 5;
  bool verbose = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

spec::Specification load_valid(const Options& o) {
  spec::Specification s;
  try {
    s = spec::parse_spec(read_file(o.spec));
  } catch (const spec::SpecError& e) {
    throw Invalid(e.what());
  }
  auto report = spec::validate_spec(s);
  if (!report.valid()) throw Invalid("invalid spec:\n" + report.text());
  return s;
}

fs::path out_dir(const Options& o, const spec::Specification& s) { return o.out.empty() ? fs::path(s.output_dir) : fs::path(o.out); }

fs::path template_root(const Options& o) {
  if (!o.templates.empty()) return o.templates;
  if (const char* env = std::getenv("ADERGEN_TEMPLATE_DIR")) return env;
  return fs::path(ADERGEN_SOURCE_DIR) / "templates";
}

std::unique_ptr<UserSolver> application(const spec::Specification& s) {
  if (!s.application) throw Invalid("spec names no application to run");
  try {
    return apps::make_application(s.application->name, s.application->scenario, s.application->parameters,
                                  s.dimension, s.quantities, s.mesh.origin, s.mesh.extent);
  } catch (const std::invalid_argument& e) {
    throw Invalid(e.what());
  }
}

int cmd_validate(const Options& o) {
  spec::Specification s;
  try {
    s = spec::parse_spec(read_file(o.spec));
  } catch (const spec::SpecError& e) {
    std::cout << e.what() << "\n";
    return kInvalid;
  }
  auto report = spec::validate_spec(s);
  std::cout << report.text();
  return report.valid() ? kOk : kInvalid;
}

int cmd_generate(const Options& o) {
  const auto s = load_valid(o);
  codegen::GeneratedTree tree;
  try {
    tree = codegen::generate_all(s, template_root(o));
  } catch (const codegen::GenerationError& e) {
    throw Invalid(e.what());
  }
  fs::path root;
  try {
    root = codegen::write_tree(tree, out_dir(o, s));
  } catch (const codegen::WriteError& e) {
    throw IoFailure(e.what());
  }
  std::cout << "generated " << tree.order.size() << " files in " << root.string() << "\n";
  if (o.verbose)
    for (const auto& f : tree.order) std::cout << "  " << f << "\n";
  return kOk;
}

int cmd_run(const Options& o) {
  const auto s = load_valid(o);
  const fs::path out = out_dir(o, s);
  auto user = application(s);
  std::unique_ptr<Kernels> generic;
  std::unique_ptr<codegen::LoadedKernels> loaded;
  const Kernels* k = nullptr;
  if (o.kernels == "generated") {
    try {
      loaded = codegen::load_generated(out / "generated", ADERGEN_CXX_COMPILER, ADERGEN_INCLUDE_DIR);
    } catch (const codegen::MissingManifest& e) {
      throw IoFailure(e.what());
    } catch (const codegen::LoadError& e) {
      throw IoFailure(e.what());
    }
    k = &loaded->kernels();
  } else {
    generic = std::make_unique<GenericKernels>(runtime::kernel_config(s));
    k = generic.get();
  }
  try {
    runtime::Solver solver(s, *user, *k);
    auto observe = [&](const runtime::Solver&, const runtime::StepStats& st) {
      if (o.verbose)
        std::cerr << "step " << st.step << " t=" << runtime::fmt17(st.t) << " dt=" << runtime::fmt17(st.dt)
                  << " troubled=" << st.troubled << "\n";
    };
    auto r = runtime::run(solver, s, out, observe);
    std::cout << "ran " << r.log.size() - 1 << " steps with " << k->name() << " kernels to t="
              << runtime::fmt17(solver.time()) << "\n";
    for (const auto& p : r.written) std::cout << "  wrote " << p.string() << "\n";
  } catch (const runtime::StepError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const runtime::InadmissibleInitialData& e) {
    throw Invalid(e.what());
  } catch (const runtime::OutputError& e) {
    throw IoFailure(e.what());
  }
  return kOk;
}

struct BenchRow {
  std::string variant;
  double seconds = 0;
  long long bytes = 0;
  double diff = 0;
  std::string check;
};

int cmd_bench(const Options& o) {
  const auto s = load_valid(o);
  auto user = application(s);
  std::vector<spec::PredictorVariant> variants = {spec::PredictorVariant::picard};
  std::string note;
  if (s.linear) {
    variants = {spec::PredictorVariant::ck, spec::PredictorVariant::otf, spec::PredictorVariant::picard};
  } else {
    note = "nonlinear spec: ck and otf rows skipped";
  }

  std::vector<BenchRow> rows;
  runtime::Mesh reference;
  bool ok = true;
  for (auto v : variants) {
    spec::Specification sv = s;
    sv.predictor_variant = v;
    GenericKernels k(runtime::kernel_config(sv));
    runtime::Solver solver(sv, *user, k);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      for (int i = 0; i < o.steps && !solver.finished(); ++i) solver.advance();
    } catch (const runtime::StepError& e) {
      std::cerr << e.what() << "\n";
      return kInvalid;
    }
    BenchRow row;
    row.variant = spec::to_string(v);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.bytes = temp_memory_report(s.order, s.dimension, s.quantities, static_cast<Predictor>(static_cast<int>(v))).total();
    if (rows.empty()) {
      reference = solver.mesh();
    } else {
      for (int c = 0; c < reference.count(); ++c)
        for (std::size_t e = 0; e < reference.state[c].luh.size(); ++e)
          row.diff = std::max(row.diff, std::abs(reference.state[c].luh[e] - solver.mesh().state[c].luh[e]));
    }
    // ck and otf are the same scheme; picard only solves it to its iteration tolerance.
    if (v == spec::PredictorVariant::otf) row.check = row.diff <= 1e-11 ? "PASS" : "FAIL";
    else row.check = "-";
    ok = ok && row.check != "FAIL";
    rows.push_back(row);
  }
  if (s.linear) {
    const auto ck = temp_memory_report(s.order, s.dimension, s.quantities, Predictor::ck);
    const auto otf = temp_memory_report(s.order, s.dimension, s.quantities, Predictor::otf);
    char buf[96];
    std::snprintf(buf, sizeof buf, "ck/otf buffer ratio %.6g (N+2)/3", static_cast<double>(ck.buffers) / otf.buffers);
    note = buf;
    if (otf.total() > ck.total()) ok = false;
  }

  std::ostringstream table, csv;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %12s %14s %14s %6s\n", "variant", "seconds", "temp_bytes", "max_abs_diff", "check");
  table << line;
  csv << "variant,seconds,temp_bytes,max_abs_diff,check\n";
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-8s %12.6f %14lld %14.3e %6s\n", r.variant.c_str(), r.seconds, r.bytes, r.diff,
                  r.check.c_str());
    table << line;
    csv << r.variant << "," << runtime::fmt17(r.seconds) << "," << r.bytes << "," << runtime::fmt17(r.diff) << ","
        << r.check << "\n";
  }
  if (!note.empty()) table << "note: " << note << "\n";
  std::cout << "steps: " << o.steps << " (max-abs diff against the first row)\n" << table.str();
  const fs::path csv_path = out_dir(o, s) / (s.project_name + "_bench.csv");
  try {
    runtime::write_file(csv_path, csv.str());
  } catch (const runtime::OutputError& e) {
    throw IoFailure(e.what());
  }
  std::cout << "wrote " << csv_path.string() << "\n";
  return ok ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adergen: ADER-DG kernel generator and runtime"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec, "specification file")->required();
    sub->add_option("--out", o.out, "output directory (default: the spec's output_dir)");
    sub->add_flag("--verbose,-v", o.verbose, "verbose output");
  };
  auto* validate = app.add_subcommand("validate", "check a specification");
  add_common(validate);
  auto* generate = app.add_subcommand("generate", "render kernels, glue, stub and manifest");
  add_common(generate);
  generate->add_option("--templates", o.templates, "template root");
  auto* run = app.add_subcommand("run", "run the simulation described by a spec");
  add_common(run);
  run->add_option("--kernels", o.kernels, "kernel binding")->check(CLI::IsMember({"generic", "generated"}));
  auto* bench = app.add_subcommand("bench", "compare predictor variants");
  add_common(bench);
  bench->add_option("--steps", o.steps, "time steps per variant")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*generate) return cmd_generate(o);
    if (*run) return cmd_run(o);
    if (*bench) return cmd_bench(o);
  } catch (const IoFailure& e) {
    std::cerr << e.what() << "\n";
    return kIo;
  } catch (const Invalid& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
