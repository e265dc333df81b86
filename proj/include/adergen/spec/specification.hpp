#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace adergen::spec {

enum class SolverKind { aderdg, fv, limiting_aderdg };
enum class PredictorVariant { picard, ck, otf };
enum class Term { flux, source, ncp, viscous_flux };
enum class OutputFormat { csv, grid_dump };
enum class BoundaryMode { periodic, user };

NLOHMANN_JSON_SERIALIZE_ENUM(SolverKind, {{SolverKind::aderdg, "aderdg"},
                                          {SolverKind::fv, "fv"},
                                          {SolverKind::limiting_aderdg, "limiting_aderdg"}})
NLOHMANN_JSON_SERIALIZE_ENUM(PredictorVariant, {{PredictorVariant::picard, "picard"},
                                                {PredictorVariant::ck, "ck"},
                                                {PredictorVariant::otf, "otf"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Term, {{Term::flux, "flux"},
                                    {Term::source, "source"},
                                    {Term::ncp, "ncp"},
                                    {Term::viscous_flux, "viscous_flux"}})
NLOHMANN_JSON_SERIALIZE_ENUM(OutputFormat, {{OutputFormat::csv, "csv"}, {OutputFormat::grid_dump, "grid_dump"}})
NLOHMANN_JSON_SERIALIZE_ENUM(BoundaryMode, {{BoundaryMode::periodic, "periodic"}, {BoundaryMode::user, "user"}})

template <class E>
std::string to_string(E e) {
  return nlohmann::json(e).get<std::string>();
}

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON text.
class ParseError : public SpecError {
 public:
  ParseError(int line, int column, const std::string& detail)
      : SpecError("ParseError at line " + std::to_string(line) + ", column " + std::to_string(column) +
                  ": " + detail),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// A required key is absent.
class MissingField : public SpecError {
 public:
  explicit MissingField(std::string path)
      : SpecError("MissingField: " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Optimization {
  int vector_width = 1;
  bool temp_vars_on_stack = true;
  bool use_flux_vect = false;

  int alignment_bytes() const { return 8 * vector_width; }
  friend bool operator==(const Optimization&, const Optimization&) = default;
};

struct MeshSpec {
  std::vector<double> origin;
  std::vector<double> extent;
  std::vector<int> cells_per_dim;
  BoundaryMode boundary = BoundaryMode::periodic;

  double h() const { return extent.empty() || cells_per_dim.empty() ? 0.0 : extent[0] / cells_per_dim[0]; }
  friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

struct TimeSpec {
  double end_time = 0.0;
  double cfl = 0.0;
  friend bool operator==(const TimeSpec&, const TimeSpec&) = default;
};

struct OutputSpec {
  int every_n_steps = 0;
  OutputFormat format = OutputFormat::csv;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct LimiterSpec {
  double dmp_delta0 = 1e-4;
  double dmp_epsilon = 1e-3;
  friend bool operator==(const LimiterSpec&, const LimiterSpec&) = default;
};

/// Which shipped example PDE the runtime binds, and its scenario knobs.
struct ApplicationSpec {
  std::string name;
  std::string scenario;
  nlohmann::json parameters = nlohmann::json::object();
  friend bool operator==(const ApplicationSpec&, const ApplicationSpec&) = default;
};

struct Specification {
  std::string project_name;
  std::string output_dir = "out";
  int dimension = 0;
  SolverKind solver_kind = SolverKind::aderdg;
  int order = 0;
  int quantities = 0;
  std::set<Term> terms;
  bool linear = false;
  PredictorVariant predictor_variant = PredictorVariant::picard;
  Optimization optimization;
  MeshSpec mesh;
  TimeSpec time;
  OutputSpec output;
  std::optional<LimiterSpec> limiter;
  std::optional<ApplicationSpec> application;

  /// The JSON the spec was parsed from; schema validation runs on it so that
  /// type errors survive the tolerant typed extraction. Not part of equality.
  nlohmann::json document;

  bool has(Term t) const { return terms.count(t) != 0; }
  int nDof() const { return order + 1; }

  friend bool operator==(const Specification& a, const Specification& b) {
    return a.project_name == b.project_name && a.output_dir == b.output_dir && a.dimension == b.dimension &&
           a.solver_kind == b.solver_kind && a.order == b.order && a.quantities == b.quantities &&
           a.terms == b.terms && a.linear == b.linear && a.predictor_variant == b.predictor_variant &&
           a.optimization == b.optimization && a.mesh == b.mesh && a.time == b.time && a.output == b.output &&
           a.limiter == b.limiter && a.application == b.application;
  }
};

namespace detail {

inline void line_column(const std::string& text, std::size_t byte, int& line, int& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw MissingField(path + "/" + key);
  return obj[key];
}

// Typed reads fall back to the default on a type mismatch; the schema pass reports it.
template <class T>
T read(const nlohmann::json& v, T fallback) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      return v.is_boolean() ? v.get<bool>() : fallback;
    } else if constexpr (std::is_integral_v<T>) {
      return v.is_number() ? static_cast<T>(v.get<double>()) : fallback;
    } else if constexpr (std::is_floating_point_v<T>) {
      return v.is_number() ? v.get<double>() : fallback;
    } else if constexpr (std::is_enum_v<T>) {
      if (!v.is_string()) return fallback;
      // The enum macro maps unknown strings to the first enumerator; detect that.
      T e = v.get<T>();
      return nlohmann::json(e) == v ? e : fallback;
    } else {
      return v.is_string() ? v.get<std::string>() : fallback;
    }
  } catch (const nlohmann::json::exception&) {
    return fallback;
  }
}

template <class T>
T read_opt(const nlohmann::json& obj, const char* key, T fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return read<T>(obj[key], fallback);
}

template <class T>
std::vector<T> read_array(const nlohmann::json& v) {
  std::vector<T> out;
  if (!v.is_array()) return out;
  for (const auto& x : v) out.push_back(read<T>(x, T{}));
  return out;
}

}  // namespace detail

/// Parse spec text into a Specification with defaults applied. No semantic checks.
inline Specification parse_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line, column;
    detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw ParseError(line, column, e.what());
  }
  if (!doc.is_object()) throw ParseError(1, 1, "top-level value must be an object");

  using detail::read;
  using detail::read_opt;
  using detail::require;
  Specification s;
  s.project_name = read<std::string>(require(doc, "project_name", ""), "");
  s.output_dir = read_opt<std::string>(doc, "output_dir", s.output_dir);
  s.dimension = read<int>(require(doc, "dimension", ""), 0);
  s.solver_kind = read<SolverKind>(require(doc, "solver_kind", ""), SolverKind::aderdg);
  s.order = read<int>(require(doc, "order", ""), 0);
  s.quantities = read<int>(require(doc, "quantities", ""), 0);
  // Unknown term names are dropped here and reported by the schema pass.
  const auto& terms = require(doc, "terms", "");
  if (terms.is_array()) {
    for (const auto& t : terms) {
      if (t.is_string() && nlohmann::json(read<Term>(t, Term::flux)) == t) s.terms.insert(t.get<Term>());
    }
  }
  s.linear = read<bool>(require(doc, "linear", ""), false);
  s.predictor_variant = read_opt<PredictorVariant>(doc, "predictor_variant",
                                                   s.linear ? PredictorVariant::ck : PredictorVariant::picard);
  if (s.solver_kind == SolverKind::fv) s.predictor_variant = PredictorVariant::picard;

  if (doc.contains("optimization")) {
    const auto& o = doc["optimization"];
    s.optimization.vector_width = read_opt<int>(o, "vector_width", 1);
    s.optimization.temp_vars_on_stack = read_opt<bool>(o, "temp_vars_on_stack", true);
    s.optimization.use_flux_vect = read_opt<bool>(o, "use_flux_vect", false);
  }

  const auto& m = require(doc, "mesh", "");
  s.mesh.origin = detail::read_array<double>(require(m, "origin", "/mesh"));
  s.mesh.extent = detail::read_array<double>(require(m, "extent", "/mesh"));
  s.mesh.cells_per_dim = detail::read_array<int>(require(m, "cells_per_dim", "/mesh"));
  s.mesh.boundary = read_opt<BoundaryMode>(m, "boundary", BoundaryMode::periodic);

  const auto& t = require(doc, "time", "");
  s.time.end_time = read<double>(require(t, "end_time", "/time"), 0.0);
  s.time.cfl = read<double>(require(t, "cfl", "/time"), 0.0);

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    s.output.every_n_steps = read_opt<int>(o, "every_n_steps", 0);
    s.output.format = read_opt<OutputFormat>(o, "format", OutputFormat::csv);
  }

  if (doc.contains("limiter") || s.solver_kind == SolverKind::limiting_aderdg) {
    LimiterSpec l;
    if (doc.contains("limiter")) {
      l.dmp_delta0 = read_opt<double>(doc["limiter"], "dmp_delta0", l.dmp_delta0);
      l.dmp_epsilon = read_opt<double>(doc["limiter"], "dmp_epsilon", l.dmp_epsilon);
    }
    s.limiter = l;
  }

  if (doc.contains("application")) {
    const auto& a = doc["application"];
    ApplicationSpec app;
    app.name = read<std::string>(require(a, "name", "/application"), "");
    app.scenario = read_opt<std::string>(a, "scenario", "");
    if (a.is_object() && a.contains("parameters") && a["parameters"].is_object()) app.parameters = a["parameters"];
    s.application = app;
  }

  s.document = std::move(doc);
  return s;
}

/// Normalized JSON form: every field explicit, defaults filled in.
inline nlohmann::json to_json(const Specification& s) {
  nlohmann::json j;
  j["project_name"] = s.project_name;
  j["output_dir"] = s.output_dir;
  j["dimension"] = s.dimension;
  j["solver_kind"] = s.solver_kind;
  j["order"] = s.order;
  j["quantities"] = s.quantities;
  j["terms"] = nlohmann::json::array();
  for (Term t : s.terms) j["terms"].push_back(t);
  j["linear"] = s.linear;
  j["predictor_variant"] = s.predictor_variant;
  j["optimization"] = {{"vector_width", s.optimization.vector_width},
                       {"temp_vars_on_stack", s.optimization.temp_vars_on_stack},
                       {"use_flux_vect", s.optimization.use_flux_vect}};
  j["mesh"] = {{"origin", s.mesh.origin},
               {"extent", s.mesh.extent},
               {"cells_per_dim", s.mesh.cells_per_dim},
               {"boundary", s.mesh.boundary}};
  j["time"] = {{"end_time", s.time.end_time}, {"cfl", s.time.cfl}};
  j["output"] = {{"every_n_steps", s.output.every_n_steps}, {"format", s.output.format}};
  if (s.limiter) j["limiter"] = {{"dmp_delta0", s.limiter->dmp_delta0}, {"dmp_epsilon", s.limiter->dmp_epsilon}};
  if (s.application) {
    j["application"] = {{"name", s.application->name}};
    if (!s.application->scenario.empty()) j["application"]["scenario"] = s.application->scenario;
    j["application"]["parameters"] = s.application->parameters;
  }
  return j;
}

inline std::string serialize(const Specification& s) { return to_json(s).dump(2) + "\n"; }

}  // namespace adergen::spec
