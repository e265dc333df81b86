#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "adergen/tmpl/ast.hpp"
#include "adergen/tmpl/parser.hpp"
#include "adergen/tmpl/value.hpp"

namespace adergen::tmpl {

/// Resolves a template path (relative to some root) to its text, or nullopt.
using Loader = std::function<std::optional<std::string>(const std::string&)>;

inline constexpr int kMaxRenderDepth = 64;

inline Loader directory_loader(std::filesystem::path root) {
  return [root = std::move(root)](const std::string& rel) -> std::optional<std::string> {
    std::ifstream in(root / rel, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
}

inline Loader map_loader(std::map<std::string, std::string> files) {
  return [files = std::move(files)](const std::string& rel) -> std::optional<std::string> {
    auto it = files.find(rel);
    if (it == files.end()) return std::nullopt;
    return it->second;
  };
}

class Environment;

namespace detail {

struct Frame;

struct MacroBinding {
  const Node* def = nullptr;
  const Frame* scope = nullptr;
  std::string file;
};

/// One lexical scope. Lookups walk outward through `parent`.
struct Frame {
  const Frame* parent = nullptr;
  std::map<std::string, Value> vars;
  std::map<std::string, MacroBinding> macros;

  const Value* find_var(const std::string& name) const {
    for (const Frame* f = this; f; f = f->parent) {
      auto it = f->vars.find(name);
      if (it != f->vars.end()) return &it->second;
    }
    return nullptr;
  }
  const MacroBinding* find_macro(const std::string& name) const {
    for (const Frame* f = this; f; f = f->parent) {
      auto it = f->macros.find(name);
      if (it != f->macros.end()) return &it->second;
    }
    return nullptr;
  }
};

}  // namespace detail

/// Parses (with caching) and renders templates. Rendering is a pure function of
/// the template text, the context and the loader contents.
class Environment {
 public:
  explicit Environment(Loader loader = {}) : loader_(std::move(loader)) {}

  static Environment from_directory(const std::filesystem::path& root) {
    return Environment(directory_loader(root));
  }

  TemplatePtr load(const std::string& path) const {
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(path);
      if (it != cache_.end()) return it->second;
    }
    std::optional<std::string> text = loader_ ? loader_(path) : std::nullopt;
    if (!text) throw TemplateError(ErrorKind::IncludeNotFound, "template '" + path + "' not found");
    auto tpl = std::make_shared<const Template>(parse_template(*text, path));
    std::lock_guard lock(mu_);
    return cache_.emplace(path, tpl).first->second;
  }

  std::string render(const std::string& path, const Map& context) const {
    return render(*load(path), context);
  }

  std::string render(const Template& tpl, const Map& context) const;

  std::string render_string(std::string_view text, const Map& context,
                            std::string name = "<string>") const {
    Template tpl = parse_template(text, std::move(name));
    return render(tpl, context);
  }

 private:
  Loader loader_;
  mutable std::mutex mu_;
  mutable std::map<std::string, TemplatePtr> cache_;
};

namespace detail {

class Renderer {
 public:
  explicit Renderer(const Environment& env) : env_(env) {}

  void render_nodes(const NodeList& nodes, Frame& frame, std::string& out, const std::string& file,
                    int depth) {
    for (const Node& n : nodes) {
      try {
        render_node(n, frame, out, file, depth);
      } catch (const TemplateError& e) {
        throw e.located(file, n.line, n.column);
      }
    }
  }

 private:
  void render_node(const Node& n, Frame& frame, std::string& out, const std::string& file,
                   int depth) {
    switch (n.kind) {
      case Node::Kind::Text:
        out += n.text;
        return;
      case Node::Kind::Output:
        out += eval(*n.expr, frame, file, depth).str();
        return;
      case Node::Kind::If: {
        for (const IfBranch& b : n.branches) {
          if (eval(*b.condition, frame, file, depth).truthy()) {
            render_nodes(b.body, frame, out, file, depth);
            return;
          }
        }
        if (n.has_else) render_nodes(n.else_body, frame, out, file, depth);
        return;
      }
      case Node::Kind::For: {
        Value seq = eval(*n.expr, frame, file, depth);
        if (!seq.is_list())
          throw TemplateError(ErrorKind::TypeMismatch,
                              std::string("for loop over ") + seq.type_name() + ", expected list");
        for (const Value& item : seq.as_list()) {
          Frame body{&frame, {}, {}};
          body.vars[n.text] = item;
          render_nodes(n.body, body, out, file, depth);
        }
        return;
      }
      case Node::Kind::MacroDef:
        frame.macros[n.text] = MacroBinding{&n, &frame, file};
        return;
      case Node::Kind::Include: {
        Value path = eval(*n.expr, frame, file, depth);
        if (!path.is_string())
          throw TemplateError(ErrorKind::TypeMismatch, "include path must be a string");
        if (depth + 1 > kMaxRenderDepth)
          throw TemplateError(ErrorKind::RecursionLimit, "include depth exceeds 64");
        TemplatePtr tpl = env_.load(path.as_string());
        keep_alive_.push_back(tpl);
        render_nodes(tpl->nodes, frame, out, tpl->name, depth + 1);
        return;
      }
      case Node::Kind::Set:
        frame.vars[n.text] = eval(*n.expr, frame, file, depth);
        return;
    }
  }

  Value eval(const Expr& e, const Frame& frame, const std::string& file, int depth) {
    try {
      return eval_inner(e, frame, file, depth);
    } catch (const TemplateError& err) {
      throw err.located(file, e.line, e.column);
    }
  }

  Value eval_inner(const Expr& e, const Frame& frame, const std::string& file, int depth) {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return e.literal;
      case Expr::Kind::Name: {
        if (const Value* v = frame.find_var(e.name)) return *v;
        throw TemplateError(ErrorKind::UndefinedVariable, "'" + e.name + "' is undefined");
      }
      case Expr::Kind::ListLiteral: {
        List items;
        for (const auto& a : e.args) items.push_back(eval(*a, frame, file, depth));
        return items;
      }
      case Expr::Kind::Conditional: {
        if (eval(*e.args[1], frame, file, depth).truthy()) return eval(*e.args[0], frame, file, depth);
        if (e.args.size() > 2) return eval(*e.args[2], frame, file, depth);
        return Value(std::string());
      }
      case Expr::Kind::Subscript:
        return subscript(eval(*e.args[0], frame, file, depth), eval(*e.args[1], frame, file, depth));
      case Expr::Kind::Unary: {
        Value v = eval(*e.args[0], frame, file, depth);
        if (e.name == "not") return !v.truthy();
        if (!v.is_number())
          throw TemplateError(ErrorKind::TypeMismatch,
                              "unary " + e.name + " on " + v.type_name());
        if (e.name == "+") return v;
        if (v.is_int()) return Value(static_cast<long long>(-v.as_int()));
        return Value(-v.as_real());
      }
      case Expr::Kind::Binary: {
        if (e.name == "and") {
          if (!eval(*e.args[0], frame, file, depth).truthy()) return false;
          return eval(*e.args[1], frame, file, depth).truthy();
        }
        if (e.name == "or") {
          if (eval(*e.args[0], frame, file, depth).truthy()) return true;
          return eval(*e.args[1], frame, file, depth).truthy();
        }
        return binary(e.name, eval(*e.args[0], frame, file, depth),
                      eval(*e.args[1], frame, file, depth));
      }
      case Expr::Kind::Call:
        return call(e, frame, file, depth);
    }
    throw TemplateError(ErrorKind::TypeMismatch, "unsupported expression");
  }

  static Value subscript(const Value& base, const Value& idx) {
    if (base.is_list()) {
      const List& l = base.as_list();
      std::int64_t i = idx.as_int();
      if (i < 0) i += static_cast<std::int64_t>(l.size());
      if (i < 0 || i >= static_cast<std::int64_t>(l.size()))
        throw TemplateError(ErrorKind::TypeMismatch, "list index " + idx.str() + " out of range");
      return l[static_cast<std::size_t>(i)];
    }
    if (base.is_map()) {
      const Map& m = base.as_map();
      auto it = m.find(idx.as_string());
      if (it == m.end())
        throw TemplateError(ErrorKind::UndefinedVariable, "key '" + idx.as_string() + "' is undefined");
      return it->second;
    }
    throw TemplateError(ErrorKind::TypeMismatch, std::string("cannot index ") + base.type_name());
  }

  static std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  static Value binary(const std::string& op, const Value& a, const Value& b) {
    auto mismatch = [&]() -> TemplateError {
      return TemplateError(ErrorKind::TypeMismatch, std::string("operator ") + op + " on " +
                                                        a.type_name() + " and " + b.type_name());
    };
    if (op == "==") return a == b;
    if (op == "!=") return !(a == b);
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      int cmp;
      if (a.is_number() && b.is_number()) {
        if (a.is_int() && b.is_int()) cmp = (a.as_int() > b.as_int()) - (a.as_int() < b.as_int());
        else cmp = (a.as_real() > b.as_real()) - (a.as_real() < b.as_real());
      } else if (a.is_string() && b.is_string()) {
        cmp = a.as_string().compare(b.as_string());
        cmp = (cmp > 0) - (cmp < 0);
      } else {
        throw mismatch();
      }
      if (op == "<") return cmp < 0;
      if (op == "<=") return cmp <= 0;
      if (op == ">") return cmp > 0;
      return cmp >= 0;
    }
    if (op == "+") {
      if (a.is_string() && b.is_string()) return a.as_string() + b.as_string();
      if (a.is_list() && b.is_list()) {
        List l = a.as_list();
        l.insert(l.end(), b.as_list().begin(), b.as_list().end());
        return l;
      }
    }
    if (!a.is_number() || !b.is_number()) throw mismatch();
    const bool ints = a.is_int() && b.is_int();
    if (op == "+") return ints ? Value(static_cast<long long>(a.as_int() + b.as_int())) : Value(a.as_real() + b.as_real());
    if (op == "-") return ints ? Value(static_cast<long long>(a.as_int() - b.as_int())) : Value(a.as_real() - b.as_real());
    if (op == "*") return ints ? Value(static_cast<long long>(a.as_int() * b.as_int())) : Value(a.as_real() * b.as_real());
    if (op == "/") {
      if (ints) {
        if (b.as_int() == 0) throw TemplateError(ErrorKind::NonIntegralDivision, "division by zero");
        if (a.as_int() % b.as_int() != 0)
          throw TemplateError(ErrorKind::NonIntegralDivision,
                              a.str() + "/" + b.str() + " is not an exact integer division");
        return Value(static_cast<long long>(a.as_int() / b.as_int()));
      }
      return Value(a.as_real() / b.as_real());
    }
    if (op == "//" || op == "%") {
      if (!ints) throw mismatch();
      std::int64_t x = a.as_int(), y = b.as_int();
      if (y == 0) throw TemplateError(ErrorKind::NonIntegralDivision, "division by zero");
      std::int64_t q = x / y, r = x % y;
      if (r != 0 && ((r < 0) != (y < 0))) {
        --q;
        r += y;
      }
      return Value(static_cast<long long>(op == "//" ? q : r));
    }
    if (op == "**") {
      if (ints && b.as_int() >= 0) return Value(static_cast<long long>(ipow(a.as_int(), b.as_int())));
      return Value(std::pow(a.as_real(), b.as_real()));
    }
    throw mismatch();
  }

  Value call(const Expr& e, const Frame& frame, const std::string& file, int depth) {
    if (const MacroBinding* m = frame.find_macro(e.name)) return call_macro(e, *m, frame, file, depth);

    std::vector<Value> args;
    for (const auto& a : e.args) args.push_back(eval(*a, frame, file, depth));
    if (!e.kwargs.empty())
      throw TemplateError(ErrorKind::MacroArityMismatch, "builtin '" + e.name + "' takes no keyword arguments");

    if (e.name == "range") {
      if (args.empty() || args.size() > 3)
        throw TemplateError(ErrorKind::MacroArityMismatch, "range expects 1 to 3 arguments");
      std::int64_t start = 0, stop, step = 1;
      if (args.size() == 1) stop = args[0].as_int();
      else {
        start = args[0].as_int();
        stop = args[1].as_int();
        if (args.size() == 3) step = args[2].as_int();
      }
      if (step == 0) throw TemplateError(ErrorKind::TypeMismatch, "range step must not be zero");
      List out;
      for (std::int64_t i = start; step > 0 ? i < stop : i > stop; i += step)
        out.emplace_back(static_cast<long long>(i));
      return out;
    }
    if (e.name == "len") {
      if (args.size() != 1) throw TemplateError(ErrorKind::MacroArityMismatch, "len expects 1 argument");
      if (args[0].is_list()) return Value(static_cast<long long>(args[0].as_list().size()));
      if (args[0].is_string()) return Value(static_cast<long long>(args[0].as_string().size()));
      if (args[0].is_map()) return Value(static_cast<long long>(args[0].as_map().size()));
      throw TemplateError(ErrorKind::TypeMismatch, std::string("len of ") + args[0].type_name());
    }
    if (e.name == "min" || e.name == "max") {
      if (args.size() == 1 && args[0].is_list()) args = args[0].as_list();
      if (args.empty()) throw TemplateError(ErrorKind::MacroArityMismatch, e.name + " of nothing");
      Value best = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) {
        bool less = binary("<", args[i], best).as_bool();
        if (e.name == "min" ? less : binary(">", args[i], best).as_bool()) best = args[i];
      }
      return best;
    }
    if (e.name == "str") {
      if (args.size() != 1) throw TemplateError(ErrorKind::MacroArityMismatch, "str expects 1 argument");
      return args[0].str();
    }
    if (e.name == "error") {
      std::string msg;
      for (const auto& a : args) msg += a.str();
      throw TemplateError(ErrorKind::User, msg);
    }
    throw TemplateError(ErrorKind::UndefinedVariable, "'" + e.name + "' is not a macro or builtin");
  }

  Value call_macro(const Expr& e, const MacroBinding& m, const Frame& caller, const std::string& file,
                   int depth) {
    if (depth + 1 > kMaxRenderDepth)
      throw TemplateError(ErrorKind::RecursionLimit, "macro call depth exceeds 64");
    const Node& def = *m.def;
    if (e.args.size() > def.params.size())
      throw TemplateError(ErrorKind::MacroArityMismatch,
                          "macro '" + def.text + "' takes " + std::to_string(def.params.size()) +
                              " arguments, " + std::to_string(e.args.size()) + " given");
    Frame callee{m.scope, {}, {}};
    for (std::size_t i = 0; i < e.args.size(); ++i)
      callee.vars[def.params[i].name] = eval(*e.args[i], caller, file, depth);
    for (const auto& [name, expr] : e.kwargs) {
      auto it = std::find_if(def.params.begin(), def.params.end(),
                             [&](const MacroParam& p) { return p.name == name; });
      if (it == def.params.end())
        throw TemplateError(ErrorKind::MacroArityMismatch,
                            "macro '" + def.text + "' has no parameter '" + name + "'");
      if (callee.vars.count(name))
        throw TemplateError(ErrorKind::MacroArityMismatch, "parameter '" + name + "' given twice");
      callee.vars[name] = eval(*expr, caller, file, depth);
    }
    for (const MacroParam& p : def.params) {
      if (callee.vars.count(p.name)) continue;
      if (!p.default_value)
        throw TemplateError(ErrorKind::MacroArityMismatch,
                            "macro '" + def.text + "' missing argument '" + p.name + "'");
      callee.vars[p.name] = eval(*p.default_value, *m.scope, m.file, depth);
    }
    std::string out;
    render_nodes(def.body, callee, out, m.file, depth + 1);
    return out;
  }

  const Environment& env_;
  std::vector<TemplatePtr> keep_alive_;
};

}  // namespace detail

inline std::string Environment::render(const Template& tpl, const Map& context) const {
  detail::Frame root;
  root.vars = context;
  std::string out;
  detail::Renderer(*this).render_nodes(tpl.nodes, root, out, tpl.name, 0);
  return out;
}

}  // namespace adergen::tmpl
