#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace adergen::tmpl {

enum class ErrorKind {
  Parse,
  UndefinedVariable,
  TypeMismatch,
  NonIntegralDivision,
  IncludeNotFound,
  MacroArityMismatch,
  RecursionLimit,
  User,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "TemplateParseError";
    case ErrorKind::UndefinedVariable: return "UndefinedVariable";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NonIntegralDivision: return "NonIntegralDivision";
    case ErrorKind::IncludeNotFound: return "IncludeNotFound";
    case ErrorKind::MacroArityMismatch: return "MacroArityMismatch";
    case ErrorKind::RecursionLimit: return "RecursionLimit";
    case ErrorKind::User: return "RenderError";
  }
  return "TemplateError";
}

/// Every failure raised while parsing or rendering a template.
///
/// `where()` carries "file:line:col" of the innermost construct that failed;
/// what() is the fully formatted message.
class TemplateError : public std::runtime_error {
 public:
  TemplateError(ErrorKind kind, std::string message, std::string file = {}, int line = 0,
                int column = 0)
      : std::runtime_error(format(kind, message, file, line, column)),
        kind_(kind),
        message_(std::move(message)),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }

  /// Attach a location if none was recorded yet (errors bubble up from expressions).
  TemplateError located(const std::string& file, int line, int column) const {
    if (line_ > 0) return *this;
    return TemplateError(kind_, message_, file, line, column);
  }

 private:
  static std::string format(ErrorKind kind, const std::string& message, const std::string& file,
                            int line, int column) {
    std::string out = to_string(kind);
    if (!file.empty() || line > 0) {
      out += " at " + (file.empty() ? std::string("<string>") : file);
      if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(column);
    }
    out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  std::string message_;
  std::string file_;
  int line_;
  int column_;
};

class Value;
using List = std::vector<Value>;
using Map = std::map<std::string, Value>;

/// Dynamic value bound in a render context: bool, integer, real, string, list or map.
class Value {
 public:
  using Storage = std::variant<bool, std::int64_t, double, std::string, List, Map>;

  Value() : v_(false) {}
  Value(bool b) : v_(b) {}
  Value(int i) : v_(static_cast<std::int64_t>(i)) {}
  Value(long i) : v_(static_cast<std::int64_t>(i)) {}
  Value(long long i) : v_(static_cast<std::int64_t>(i)) {}
  Value(unsigned i) : v_(static_cast<std::int64_t>(i)) {}
  Value(unsigned long i) : v_(static_cast<std::int64_t>(i)) {}
  Value(double d) : v_(d) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(List l) : v_(std::move(l)) {}
  Value(Map m) : v_(std::move(m)) {}

  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_real() const { return std::holds_alternative<double>(v_); }
  bool is_number() const { return is_int() || is_real(); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_list() const { return std::holds_alternative<List>(v_); }
  bool is_map() const { return std::holds_alternative<Map>(v_); }

  bool as_bool() const { return get<bool>("bool"); }
  std::int64_t as_int() const { return get<std::int64_t>("integer"); }
  double as_real() const {
    if (is_int()) return static_cast<double>(std::get<std::int64_t>(v_));
    return get<double>("real");
  }
  const std::string& as_string() const { return get<std::string>("string"); }
  const List& as_list() const { return get<List>("list"); }
  const Map& as_map() const { return get<Map>("map"); }

  const char* type_name() const {
    static constexpr const char* names[] = {"bool", "integer", "real", "string", "list", "map"};
    return names[v_.index()];
  }

  bool truthy() const {
    return std::visit(
        [](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, bool>) return x;
          else if constexpr (std::is_same_v<T, std::int64_t>) return x != 0;
          else if constexpr (std::is_same_v<T, double>) return x != 0.0;
          else return !x.empty();
        },
        v_);
  }

  /// Text emitted by `{{ }}`. Reals use the shortest round-trip representation and
  /// always carry a decimal point or exponent so they stay real literals in C++.
  std::string str() const {
    return std::visit(
        [](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
          else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
          else if constexpr (std::is_same_v<T, double>) return real_repr(x);
          else if constexpr (std::is_same_v<T, std::string>) return x;
          else if constexpr (std::is_same_v<T, List>) {
            std::string out = "[";
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (i) out += ", ";
              out += x[i].str();
            }
            return out + "]";
          } else {
            std::string out = "{";
            bool first = true;
            for (const auto& [k, val] : x) {
              if (!first) out += ", ";
              first = false;
              out += k + ": " + val.str();
            }
            return out + "}";
          }
        },
        v_);
  }

  static std::string real_repr(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    std::string s(buf, end);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
  }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.is_number() && b.is_number()) {
      if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
      return a.as_real() == b.as_real();
    }
    return a.v_ == b.v_;
  }

  const Storage& storage() const { return v_; }

 private:
  template <class T>
  const T& get(const char* want) const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    throw TemplateError(ErrorKind::TypeMismatch,
                        std::string("expected ") + want + ", got " + type_name());
  }

  Storage v_;
};

}  // namespace adergen::tmpl
