#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adergen/tmpl/ast.hpp"

namespace adergen::tmpl {

namespace detail {

/// Maps byte offsets to 1-based line/column.
class SourceMap {
 public:
  explicit SourceMap(std::string_view text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') starts_.push_back(i + 1);
  }
  std::pair<int, int> at(std::size_t offset) const {
    std::size_t lo = 0, hi = starts_.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (starts_[mid] <= offset) lo = mid;
      else hi = mid;
    }
    return {static_cast<int>(lo) + 1, static_cast<int>(offset - starts_[lo]) + 1};
  }

 private:
  std::vector<std::size_t> starts_;
};

struct Segment {
  enum class Kind { Text, Output, Statement };
  Kind kind;
  std::string body;
  std::size_t offset;  // start of the tag / text, used for diagnostics
  std::size_t body_offset;
};

struct Token {
  enum class Kind { Int, Real, String, Ident, Op, End };
  Kind kind;
  std::string text;
  std::size_t offset;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace detail

/// Recursive-descent parser for the `{{ }}` / `{% %}` / `{# #}` template language.
///
/// Whitespace is never trimmed implicitly. An explicit `-` next to a delimiter
/// (`{%-`, `-%}`, ...) strips adjacent whitespace on that side, as in Jinja.
class Parser {
 public:
  Parser(std::string_view source, std::string name) : src_(source), name_(std::move(name)), map_(source) {}

  Template parse() {
    split();
    Template t;
    t.name = name_;
    std::string terminator;
    t.nodes = parse_block({}, terminator, 0);
    return t;
  }

 private:
  using Segment = detail::Segment;
  using Token = detail::Token;

  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    auto [line, col] = map_.at(offset);
    throw TemplateError(ErrorKind::Parse, msg, name_, line, col);
  }

  // ---- source splitting ---------------------------------------------------

  std::size_t find_close(std::size_t from, std::string_view close, std::size_t open_at) const {
    char quote = 0;
    for (std::size_t i = from; i < src_.size(); ++i) {
      char c = src_[i];
      if (quote) {
        if (c == '\\') ++i;
        else if (c == quote) quote = 0;
        continue;
      }
      if ((c == '"' || c == '\'') && close != "#}") {
        quote = c;
        continue;
      }
      if (src_.compare(i, close.size(), close) == 0) return i;
    }
    fail(std::string("unclosed tag, expected '") + std::string(close) + "'", open_at);
  }

  void split() {
    std::size_t pos = 0;
    bool trim_next = false;
    while (pos <= src_.size()) {
      std::size_t open = std::string::npos;
      for (std::size_t i = pos; i + 1 < src_.size(); ++i) {
        if (src_[i] == '{' && (src_[i + 1] == '{' || src_[i + 1] == '%' || src_[i + 1] == '#')) {
          open = i;
          break;
        }
      }
      std::string text(src_.substr(pos, (open == std::string::npos ? src_.size() : open) - pos));
      if (trim_next) {
        std::size_t k = 0;
        while (k < text.size() && detail::is_space(text[k])) ++k;
        text.erase(0, k);
        trim_next = false;
      }
      if (open != std::string::npos && open + 2 < src_.size() && src_[open + 2] == '-') {
        while (!text.empty() && detail::is_space(text.back())) text.pop_back();
      }
      if (!text.empty()) segments_.push_back({Segment::Kind::Text, text, pos, pos});
      if (open == std::string::npos) break;

      char kind = src_[open + 1];
      std::string_view close = kind == '{' ? "}}" : kind == '%' ? "%}" : "#}";
      std::size_t body_start = open + 2;
      if (body_start < src_.size() && src_[body_start] == '-') ++body_start;
      std::size_t close_at = find_close(body_start, close, open);
      std::size_t body_end = close_at;
      if (body_end > body_start && src_[body_end - 1] == '-') {
        --body_end;
        trim_next = true;
      }
      if (kind != '#') {
        segments_.push_back({kind == '{' ? Segment::Kind::Output : Segment::Kind::Statement,
                             std::string(src_.substr(body_start, body_end - body_start)), open,
                             body_start});
      }
      pos = close_at + 2;
    }
  }

  // ---- expression tokens --------------------------------------------------

  std::vector<Token> tokenize(const Segment& seg) const {
    std::vector<Token> out;
    const std::string& s = seg.body;
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      std::size_t at = seg.body_offset + i;
      if (detail::is_space(c)) {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        bool real = false;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
          real = true;
          ++j;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
        if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
          if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
            real = true;
            j = k;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
          }
        }
        out.push_back({real ? Token::Kind::Real : Token::Kind::Int, s.substr(i, j - i), at});
        i = j;
        continue;
      }
      if (detail::is_ident_start(c)) {
        std::size_t j = i;
        while (j < s.size() && detail::is_ident_char(s[j])) ++j;
        out.push_back({Token::Kind::Ident, s.substr(i, j - i), at});
        i = j;
        continue;
      }
      if (c == '"' || c == '\'') {
        std::string lit;
        std::size_t j = i + 1;
        for (; j < s.size() && s[j] != c; ++j) {
          if (s[j] == '\\' && j + 1 < s.size()) {
            ++j;
            switch (s[j]) {
              case 'n': lit += '\n'; break;
              case 't': lit += '\t'; break;
              default: lit += s[j];
            }
          } else {
            lit += s[j];
          }
        }
        if (j >= s.size()) fail("unterminated string literal", at);
        out.push_back({Token::Kind::String, lit, at});
        i = j + 1;
        continue;
      }
      static const char* two[] = {"**", "//", "==", "!=", "<=", ">="};
      bool matched = false;
      for (const char* op : two) {
        if (s.compare(i, 2, op) == 0) {
          out.push_back({Token::Kind::Op, op, at});
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("+-*/%<>()[],=").find(c) != std::string_view::npos) {
        out.push_back({Token::Kind::Op, std::string(1, c), at});
        ++i;
        continue;
      }
      fail(std::string("unexpected character '") + c + "' in expression", at);
    }
    out.push_back({Token::Kind::End, "", seg.body_offset + s.size()});
    return out;
  }

  // ---- expression grammar -------------------------------------------------

  struct Cursor {
    const std::vector<Token>* toks;
    std::size_t i = 0;
    const Token& peek() const { return (*toks)[i]; }
    const Token& next() { return (*toks)[i++]; }
    bool at_op(std::string_view op) const {
      return peek().kind == Token::Kind::Op && peek().text == op;
    }
    bool at_word(std::string_view w) const {
      return peek().kind == Token::Kind::Ident && peek().text == w;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
  };

  ExprPtr make(Expr::Kind kind, std::size_t offset, std::string name = {},
               std::vector<ExprPtr> args = {}) const {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    auto [l, c] = map_.at(offset);
    e->line = l;
    e->column = c;
    e->name = std::move(name);
    e->args = std::move(args);
    return e;
  }

  void expect_op(Cursor& c, std::string_view op) const {
    if (!c.at_op(op)) fail("expected '" + std::string(op) + "' but found '" + c.peek().text + "'", c.peek().offset);
    c.next();
  }

  ExprPtr parse_expr(Cursor& c) const {
    ExprPtr value = parse_or(c);
    if (c.at_word("if")) {
      std::size_t at = c.next().offset;
      ExprPtr cond = parse_or(c);
      std::vector<ExprPtr> args{value, cond};
      if (c.at_word("else")) {
        c.next();
        args.push_back(parse_expr(c));
      }
      return make(Expr::Kind::Conditional, at, {}, std::move(args));
    }
    return value;
  }

  ExprPtr parse_or(Cursor& c) const {
    ExprPtr lhs = parse_and(c);
    while (c.at_word("or")) {
      std::size_t at = c.next().offset;
      lhs = make(Expr::Kind::Binary, at, "or", {lhs, parse_and(c)});
    }
    return lhs;
  }

  ExprPtr parse_and(Cursor& c) const {
    ExprPtr lhs = parse_not(c);
    while (c.at_word("and")) {
      std::size_t at = c.next().offset;
      lhs = make(Expr::Kind::Binary, at, "and", {lhs, parse_not(c)});
    }
    return lhs;
  }

  ExprPtr parse_not(Cursor& c) const {
    if (c.at_word("not")) {
      std::size_t at = c.next().offset;
      return make(Expr::Kind::Unary, at, "not", {parse_not(c)});
    }
    return parse_cmp(c);
  }

  ExprPtr parse_cmp(Cursor& c) const {
    ExprPtr lhs = parse_add(c);
    for (const char* op : {"==", "!=", "<=", ">=", "<", ">"}) {
      if (c.at_op(op)) {
        std::size_t at = c.next().offset;
        return make(Expr::Kind::Binary, at, op, {lhs, parse_add(c)});
      }
    }
    return lhs;
  }

  ExprPtr parse_add(Cursor& c) const {
    ExprPtr lhs = parse_mul(c);
    while (c.at_op("+") || c.at_op("-")) {
      const Token& t = c.next();
      lhs = make(Expr::Kind::Binary, t.offset, t.text, {lhs, parse_mul(c)});
    }
    return lhs;
  }

  ExprPtr parse_mul(Cursor& c) const {
    ExprPtr lhs = parse_unary(c);
    while (c.at_op("*") || c.at_op("/") || c.at_op("//") || c.at_op("%")) {
      const Token& t = c.next();
      lhs = make(Expr::Kind::Binary, t.offset, t.text, {lhs, parse_unary(c)});
    }
    return lhs;
  }

  ExprPtr parse_unary(Cursor& c) const {
    if (c.at_op("-") || c.at_op("+")) {
      const Token& t = c.next();
      return make(Expr::Kind::Unary, t.offset, t.text, {parse_unary(c)});
    }
    return parse_power(c);
  }

  ExprPtr parse_power(Cursor& c) const {
    ExprPtr base = parse_postfix(c);
    if (c.at_op("**")) {
      std::size_t at = c.next().offset;
      return make(Expr::Kind::Binary, at, "**", {base, parse_unary(c)});
    }
    return base;
  }

  ExprPtr parse_postfix(Cursor& c) const {
    ExprPtr e = parse_primary(c);
    while (c.at_op("[")) {
      std::size_t at = c.next().offset;
      ExprPtr idx = parse_expr(c);
      expect_op(c, "]");
      e = make(Expr::Kind::Subscript, at, {}, {e, idx});
    }
    return e;
  }

  ExprPtr parse_primary(Cursor& c) const {
    const Token& t = c.peek();
    switch (t.kind) {
      case Token::Kind::Int: {
        c.next();
        auto e = make(Expr::Kind::Literal, t.offset);
        std::const_pointer_cast<Expr>(e)->literal = Value(static_cast<long long>(std::stoll(t.text)));
        return e;
      }
      case Token::Kind::Real: {
        c.next();
        auto e = make(Expr::Kind::Literal, t.offset);
        std::const_pointer_cast<Expr>(e)->literal = Value(std::stod(t.text));
        return e;
      }
      case Token::Kind::String: {
        c.next();
        auto e = make(Expr::Kind::Literal, t.offset);
        std::const_pointer_cast<Expr>(e)->literal = Value(t.text);
        return e;
      }
      case Token::Kind::Ident: {
        c.next();
        if (t.text == "true" || t.text == "True" || t.text == "false" || t.text == "False") {
          auto e = make(Expr::Kind::Literal, t.offset);
          std::const_pointer_cast<Expr>(e)->literal = Value(t.text[0] == 't' || t.text[0] == 'T');
          return e;
        }
        static const std::set<std::string> reserved = {"if", "else", "and", "or", "not", "in"};
        if (reserved.count(t.text)) fail("unexpected keyword '" + t.text + "'", t.offset);
        if (c.at_op("(")) return parse_call(c, t);
        return make(Expr::Kind::Name, t.offset, t.text);
      }
      case Token::Kind::Op:
        if (t.text == "(") {
          c.next();
          ExprPtr inner = parse_expr(c);
          expect_op(c, ")");
          return inner;
        }
        if (t.text == "[") {
          c.next();
          std::vector<ExprPtr> items;
          if (!c.at_op("]")) {
            items.push_back(parse_expr(c));
            while (c.at_op(",")) {
              c.next();
              items.push_back(parse_expr(c));
            }
          }
          expect_op(c, "]");
          return make(Expr::Kind::ListLiteral, t.offset, {}, std::move(items));
        }
        fail("unexpected '" + t.text + "' in expression", t.offset);
      case Token::Kind::End:
        fail("expression expected", t.offset);
    }
    fail("malformed expression", t.offset);
  }

  ExprPtr parse_call(Cursor& c, const Token& callee) const {
    expect_op(c, "(");
    auto e = std::const_pointer_cast<Expr>(make(Expr::Kind::Call, callee.offset, callee.text));
    if (!c.at_op(")")) {
      while (true) {
        const Token& t = c.peek();
        if (t.kind == Token::Kind::Ident && (*c.toks)[c.i + 1].kind == Token::Kind::Op &&
            (*c.toks)[c.i + 1].text == "=") {
          c.next();
          c.next();
          e->kwargs.emplace_back(t.text, parse_expr(c));
        } else {
          if (!e->kwargs.empty()) fail("positional argument after keyword argument", t.offset);
          e->args.push_back(parse_expr(c));
        }
        if (!c.at_op(",")) break;
        c.next();
      }
    }
    expect_op(c, ")");
    return e;
  }

  ExprPtr parse_full_expr(const Segment& seg, std::vector<Token>& toks, std::size_t start) const {
    Cursor c{&toks, start};
    ExprPtr e = parse_expr(c);
    if (!c.at_end()) fail("unexpected '" + c.peek().text + "' after expression", c.peek().offset);
    (void)seg;
    return e;
  }

  // ---- statements ---------------------------------------------------------

  Node node_at(Node::Kind kind, std::size_t offset) const {
    Node n;
    n.kind = kind;
    auto [l, c] = map_.at(offset);
    n.line = l;
    n.column = c;
    return n;
  }

  static std::string keyword_of(const std::vector<Token>& toks) {
    return toks.front().kind == Token::Kind::Ident ? toks.front().text : std::string();
  }

  /// Parses nodes until one of `terminators` is met; the terminator keyword is
  /// returned through `hit` and the cursor sits on that statement.
  NodeList parse_block(const std::set<std::string>& terminators, std::string& hit, int depth) {
    NodeList nodes;
    while (pos_ < segments_.size()) {
      const Segment& seg = segments_[pos_];
      if (seg.kind == Segment::Kind::Text) {
        Node n = node_at(Node::Kind::Text, seg.offset);
        n.text = seg.body;
        nodes.push_back(std::move(n));
        ++pos_;
        continue;
      }
      auto toks = tokenize(seg);
      if (seg.kind == Segment::Kind::Output) {
        if (toks.front().kind == Token::Kind::End) fail("empty expression", seg.offset);
        Node n = node_at(Node::Kind::Output, seg.offset);
        n.expr = parse_full_expr(seg, toks, 0);
        nodes.push_back(std::move(n));
        ++pos_;
        continue;
      }
      std::string kw = keyword_of(toks);
      if (terminators.count(kw)) {
        hit = kw;
        return nodes;
      }
      ++pos_;
      if (kw == "if") nodes.push_back(parse_if(seg, toks, depth));
      else if (kw == "for") nodes.push_back(parse_for(seg, toks, depth));
      else if (kw == "macro") nodes.push_back(parse_macro(seg, toks, depth));
      else if (kw == "include") {
        Node n = node_at(Node::Kind::Include, seg.offset);
        n.expr = parse_full_expr(seg, toks, 1);
        nodes.push_back(std::move(n));
      } else if (kw == "set") {
        if (toks.size() < 4 || toks[1].kind != Token::Kind::Ident || toks[2].text != "=")
          fail("malformed set, expected 'set name = expr'", seg.offset);
        Node n = node_at(Node::Kind::Set, seg.offset);
        n.text = toks[1].text;
        n.expr = parse_full_expr(seg, toks, 3);
        nodes.push_back(std::move(n));
      } else if (kw == "endif" || kw == "endfor" || kw == "endmacro" || kw == "elif" || kw == "else") {
        fail("unexpected '" + kw + "'", seg.offset);
      } else {
        fail("unknown tag '" + (kw.empty() ? toks.front().text : kw) + "'", seg.offset);
      }
    }
    hit.clear();
    return nodes;
  }

  Node parse_if(const Segment& seg, std::vector<Token>& toks, int depth) {
    Node n = node_at(Node::Kind::If, seg.offset);
    IfBranch first;
    first.condition = parse_full_expr(seg, toks, 1);
    std::string hit;
    first.body = parse_block({"elif", "else", "endif"}, hit, depth + 1);
    n.branches.push_back(std::move(first));
    while (true) {
      if (hit.empty()) fail("unclosed if", seg.offset);
      const Segment& term = segments_[pos_];
      auto ttoks = tokenize(term);
      ++pos_;
      if (hit == "endif") {
        if (ttoks.size() != 2) fail("unexpected tokens after endif", term.offset);
        break;
      }
      if (hit == "elif") {
        IfBranch b;
        b.condition = parse_full_expr(term, ttoks, 1);
        b.body = parse_block({"elif", "else", "endif"}, hit, depth + 1);
        n.branches.push_back(std::move(b));
        continue;
      }
      // else
      if (ttoks.size() != 2) fail("unexpected tokens after else", term.offset);
      n.has_else = true;
      n.else_body = parse_block({"endif"}, hit, depth + 1);
      if (hit.empty()) fail("unclosed if", seg.offset);
      ++pos_;
      break;
    }
    return n;
  }

  Node parse_for(const Segment& seg, std::vector<Token>& toks, int depth) {
    if (toks.size() < 5 || toks[1].kind != Token::Kind::Ident || toks[2].text != "in")
      fail("malformed for, expected 'for name in expr'", seg.offset);
    Node n = node_at(Node::Kind::For, seg.offset);
    n.text = toks[1].text;
    n.expr = parse_full_expr(seg, toks, 3);
    std::string hit;
    n.body = parse_block({"endfor"}, hit, depth + 1);
    if (hit.empty()) fail("unclosed for", seg.offset);
    ++pos_;
    return n;
  }

  Node parse_macro(const Segment& seg, std::vector<Token>& toks, int depth) {
    Cursor c{&toks, 1};
    if (c.peek().kind != Token::Kind::Ident) fail("macro name expected", seg.offset);
    Node n = node_at(Node::Kind::MacroDef, seg.offset);
    n.text = c.next().text;
    if (!macro_names_.insert(n.text).second) fail("duplicate macro '" + n.text + "'", seg.offset);
    expect_op(c, "(");
    if (!c.at_op(")")) {
      while (true) {
        if (c.peek().kind != Token::Kind::Ident) fail("parameter name expected", c.peek().offset);
        MacroParam p;
        p.name = c.next().text;
        if (c.at_op("=")) {
          c.next();
          p.default_value = parse_expr(c);
        } else if (!n.params.empty() && n.params.back().default_value) {
          fail("required parameter '" + p.name + "' follows a defaulted one", seg.offset);
        }
        n.params.push_back(std::move(p));
        if (!c.at_op(",")) break;
        c.next();
      }
    }
    expect_op(c, ")");
    if (!c.at_end()) fail("unexpected tokens after macro signature", c.peek().offset);
    std::string hit;
    n.body = parse_block({"endmacro"}, hit, depth + 1);
    if (hit.empty()) fail("unclosed macro", seg.offset);
    ++pos_;
    return n;
  }

  std::string_view src_;
  std::string name_;
  detail::SourceMap map_;
  std::vector<Segment> segments_;
  std::size_t pos_ = 0;
  std::set<std::string> macro_names_;
};

inline Template parse_template(std::string_view text, std::string name = {}) {
  return Parser(text, std::move(name)).parse();
}

}  // namespace adergen::tmpl
