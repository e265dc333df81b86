#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "adergen/tmpl/value.hpp"

namespace adergen::tmpl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Literal, Name, Unary, Binary, Call, Subscript, ListLiteral, Conditional };

  Kind kind = Kind::Literal;
  int line = 0;
  int column = 0;
  Value literal;           // Literal
  std::string name;        // Name, Call (callee), Unary/Binary (operator)
  std::vector<ExprPtr> args;  // operands, call arguments, list items; Conditional: then, cond[, else]
  std::vector<std::pair<std::string, ExprPtr>> kwargs;  // Call
};

struct Node;
using NodeList = std::vector<Node>;

struct IfBranch {
  ExprPtr condition;
  NodeList body;
};

struct MacroParam {
  std::string name;
  ExprPtr default_value;  // null when required
};

/// One template construct. Text, Output, If, For, MacroDef, Include and Set.
struct Node {
  enum class Kind { Text, Output, If, For, MacroDef, Include, Set };

  Kind kind = Kind::Text;
  int line = 0;
  int column = 0;
  std::string text;  // Text: raw text; For: loop variable; MacroDef: name; Set: target
  ExprPtr expr;      // Output; For: iterable; Include: path; Set: value
  std::vector<IfBranch> branches;
  NodeList else_body;
  bool has_else = false;
  NodeList body;  // For, MacroDef
  std::vector<MacroParam> params;
};

struct Template {
  std::string name;
  NodeList nodes;
};

using TemplatePtr = std::shared_ptr<const Template>;

}  // namespace adergen::tmpl
