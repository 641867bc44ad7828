#include "treecomp/dsl.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "treecomp/errors.hpp"

namespace treecomp::dsl {

std::string_view type_name(Type t) {
  switch (t) {
    case Type::Number:
      return "number";
    case Type::Boolean:
      return "condition";
    case Type::Vertex:
      return "vertex";
  }
  return "?";
}

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "mod";
    case Op::Pow: return "^";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Node construction and typing

namespace {

[[noreturn]] void type_error(const std::string& message) { throw SyntaxError(message, 0, 0); }

void expect_type(const NodePtr& n, Type t, std::string_view where) {
  if (!n) {
    type_error("missing operand in " + std::string(where));
  }
  if (n->type != t) {
    type_error(std::string(where) + " expects a " + std::string(type_name(t)) + ", got a " +
               std::string(type_name(n->type)));
  }
}

NodePtr leaf(NodeKind kind, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->type = type;
  return n;
}

struct CallSignature {
  std::string_view name;
  std::vector<Type> params;
  Type result;
};

const std::vector<CallSignature>& signatures() {
  static const std::vector<CallSignature> table = {
      {"floor", {Type::Number}, Type::Number},
      {"abs", {Type::Number}, Type::Number},
      {"min", {Type::Number, Type::Number}, Type::Number},
      {"max", {Type::Number, Type::Number}, Type::Number},
      {"depth", {Type::Vertex}, Type::Number},
      {"parent", {Type::Vertex}, Type::Vertex},
      {"child", {Type::Vertex, Type::Number}, Type::Vertex},
      {"spine", {Type::Number}, Type::Vertex},
  };
  return table;
}

const CallSignature* find_signature(std::string_view name) {
  for (const auto& s : signatures()) {
    if (s.name == name) {
      return &s;
    }
  }
  return nullptr;
}

bool is_comparison(Op op) {
  return op == Op::Eq || op == Op::Ne || op == Op::Lt || op == Op::Le || op == Op::Gt ||
         op == Op::Ge;
}

}  // namespace

NodePtr make_literal(Num n) {
  if (n.is_int ? n.i < 0 : !(n.d >= 0.0 && std::isfinite(n.d))) {
    type_error("numeric literals must be finite and non-negative");
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Literal;
  node->type = Type::Number;
  node->num = n;
  return node;
}

NodePtr make_len() { return leaf(NodeKind::Len, Type::Number); }
NodePtr make_last() { return leaf(NodeKind::Last, Type::Number); }
NodePtr make_self() { return leaf(NodeKind::Self, Type::Vertex); }
NodePtr make_root() { return leaf(NodeKind::Root, Type::Vertex); }

NodePtr make_vertex_literal(VertexId v) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::VertexLiteral;
  node->type = Type::Vertex;
  node->vertex = std::move(v);
  return node;
}

NodePtr make_negate(NodePtr a) {
  expect_type(a, Type::Number, "unary '-'");
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Negate;
  node->args = {std::move(a)};
  return node;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  if (is_comparison(op)) {
    type_error("comparison operator used as arithmetic");
  }
  const std::string where = "operator '" + std::string(op_symbol(op)) + "'";
  expect_type(a, Type::Number, where);
  expect_type(b, Type::Number, where);
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Binary;
  node->op = op;
  node->args = {std::move(a), std::move(b)};
  return node;
}

NodePtr make_compare(Op op, NodePtr a, NodePtr b) {
  if (!is_comparison(op)) {
    type_error("arithmetic operator used as comparison");
  }
  if (!a || !b) {
    type_error("missing operand in comparison");
  }
  const std::string where = "comparison '" + std::string(op_symbol(op)) + "'";
  if (a->type == Type::Vertex && (op == Op::Eq || op == Op::Ne)) {
    expect_type(b, Type::Vertex, where);
  } else {
    expect_type(a, Type::Number, where);
    expect_type(b, Type::Number, where);
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Compare;
  node->type = Type::Boolean;
  node->op = op;
  node->args = {std::move(a), std::move(b)};
  return node;
}

NodePtr make_if(NodePtr cond, NodePtr then_branch, NodePtr else_branch) {
  expect_type(cond, Type::Boolean, "'if' condition");
  if (!then_branch || !else_branch) {
    type_error("missing branch in 'if'");
  }
  if (then_branch->type == Type::Boolean) {
    type_error("'if' branches must be numbers or vertices, not conditions");
  }
  expect_type(else_branch, then_branch->type, "'else' branch");
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::If;
  node->type = then_branch->type;
  node->args = {std::move(cond), std::move(then_branch), std::move(else_branch)};
  return node;
}

NodePtr make_call(std::string name, std::vector<NodePtr> args) {
  const CallSignature* sig = find_signature(name);
  if (sig == nullptr) {
    type_error("unknown function '" + name + "'");
  }
  if (args.size() != sig->params.size()) {
    type_error("function '" + name + "' takes " + std::to_string(sig->params.size()) +
               " argument(s), got " + std::to_string(args.size()));
  }
  for (std::size_t k = 0; k < args.size(); ++k) {
    expect_type(args[k], sig->params[k], "argument " + std::to_string(k + 1) + " of '" + name + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Call;
  node->type = sig->result;
  node->name = std::move(name);
  node->args = std::move(args);
  return node;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.type != b.type || a.args.size() != b.args.size()) {
    return false;
  }
  switch (a.kind) {
    case NodeKind::Literal:
      if (a.num.is_int != b.num.is_int) {
        return false;
      }
      if (a.num.is_int ? a.num.i != b.num.i : a.num.d != b.num.d) {
        return false;
      }
      break;
    case NodeKind::VertexLiteral:
      if (a.vertex != b.vertex) {
        return false;
      }
      break;
    case NodeKind::Binary:
    case NodeKind::Compare:
      if (a.op != b.op) {
        return false;
      }
      break;
    case NodeKind::Call:
      if (a.name != b.name) {
        return false;
      }
      break;
    default:
      break;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!structurally_equal(*a.args[k], *b.args[k])) {
      return false;
    }
  }
  return true;
}

bool uses_vertices(const Node& n) {
  if (n.type == Type::Vertex) {
    return true;
  }
  for (const auto& a : n.args) {
    if (uses_vertices(*a)) {
      return true;
    }
  }
  return false;
}

Expression::Expression(NodePtr root) : root_(std::move(root)) {
  if (!root_) {
    throw SyntaxError("empty expression", 0, 0);
  }
  if (root_->type == Type::Boolean) {
    throw SyntaxError("a bare condition is not a value; use it inside 'if'", 0, 0);
  }
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok { Number, Name, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t line, std::size_t column)
      : src_(src), line_(line), column_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      // End of input is reported right after the last token, not on a
      // trailing blank line.
      const std::size_t end_line = line_;
      const std::size_t end_column = column_;
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        t.line = end_line;
        t.column = end_column;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
        t.kind = Tok::Number;
        t.text = lex_number();
      } else if (is_name_start(c)) {
        t.kind = Tok::Name;
        while (pos_ < src_.size() && is_name_char(src_[pos_])) {
          t.text.push_back(advance());
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
          t.text.push_back(advance());
        }
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw SyntaxError("unterminated vertex literal", t.line, t.column);
        }
        advance();
      } else {
        t.kind = Tok::Symbol;
        const std::string_view two = src_.substr(pos_, 2);
        if (two == "==" || two == "!=" || two == "<=" || two == ">=") {
          t.text = std::string(two);
          advance();
          advance();
        } else if (std::string_view("+-*/^(),<>").find(c) != std::string_view::npos) {
          t.text = std::string(1, advance());
        } else {
          throw SyntaxError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_name_char(char c) { return is_name_start(c) || is_digit(c); }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else {
        break;
      }
    }
  }

  std::string lex_number() {
    std::string out;
    while (pos_ < src_.size() && is_digit(src_[pos_])) {
      out.push_back(advance());
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      out.push_back(advance());
      while (pos_ < src_.size() && is_digit(src_[pos_])) {
        out.push_back(advance());
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
        ++look;
      }
      if (look < src_.size() && is_digit(src_[look])) {
        while (pos_ < look) {
          out.push_back(advance());
        }
        while (pos_ < src_.size() && is_digit(src_[pos_])) {
          out.push_back(advance());
        }
      }
    }
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

bool is_keyword(std::string_view s) {
  return s == "if" || s == "then" || s == "else" || s == "mod";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  NodePtr parse_all() {
    if (peek().kind == Tok::End) {
      fail("empty expression", peek());
    }
    const Token first = peek();
    NodePtr e = expr();
    if (peek().kind != Tok::End) {
      fail("unexpected '" + peek().text + "' after expression", peek());
    }
    if (e->type == Type::Boolean) {
      fail("a bare condition is not a value; use it inside 'if'", first);
    }
    return e;
  }

 private:
  [[noreturn]] static void fail(const std::string& message, const Token& at) {
    throw SyntaxError(message, at.line, at.column);
  }

  // Runs a checked constructor, relocating its type errors to `at`.
  template <class F>
  static NodePtr located(const Token& at, F&& build) {
    try {
      return build();
    } catch (const SyntaxError& e) {
      const std::string what = e.what();
      const std::string prefix = "0:0: ";
      fail(what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what, at);
    }
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool accept_symbol(std::string_view s) {
    if (peek().kind == Tok::Symbol && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_name(std::string_view s) {
    if (peek().kind == Tok::Name && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) {
      fail("expected '" + std::string(s) + "' but found " + describe(peek()), peek());
    }
  }
  void expect_name(std::string_view s) {
    if (!accept_name(s)) {
      fail("expected '" + std::string(s) + "' but found " + describe(peek()), peek());
    }
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
  }

  NodePtr expr() {
    const Token start = peek();
    NodePtr lhs = sum();
    static const std::pair<std::string_view, Op> kComparisons[] = {
        {"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}};
    for (const auto& [sym, op] : kComparisons) {
      if (peek().kind == Tok::Symbol && peek().text == sym) {
        const Token at = next();
        NodePtr rhs = sum();
        if (peek().kind == Tok::Symbol &&
            (peek().text == "==" || peek().text == "!=" || peek().text == "<=" ||
             peek().text == ">=" || peek().text == "<" || peek().text == ">")) {
          fail("comparisons do not chain; add parentheses", peek());
        }
        return located(at, [&] { return make_compare(op, lhs, rhs); });
      }
    }
    (void)start;
    return lhs;
  }

  NodePtr sum() {
    NodePtr lhs = term();
    while (true) {
      if (peek().kind == Tok::Symbol && (peek().text == "+" || peek().text == "-")) {
        const Token at = next();
        const Op op = at.text == "+" ? Op::Add : Op::Sub;
        NodePtr rhs = term();
        lhs = located(at, [&] { return make_binary(op, lhs, rhs); });
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      Op op;
      if (peek().kind == Tok::Symbol && peek().text == "*") {
        op = Op::Mul;
      } else if (peek().kind == Tok::Symbol && peek().text == "/") {
        op = Op::Div;
      } else if (peek().kind == Tok::Name && peek().text == "mod") {
        op = Op::Mod;
      } else {
        return lhs;
      }
      const Token at = next();
      NodePtr rhs = unary();
      lhs = located(at, [&] { return make_binary(op, lhs, rhs); });
    }
  }

  NodePtr unary() {
    if (peek().kind == Tok::Symbol && peek().text == "-") {
      const Token at = next();
      NodePtr operand = unary();
      return located(at, [&] { return make_negate(operand); });
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (peek().kind == Tok::Symbol && peek().text == "^") {
      const Token at = next();
      NodePtr exponent = unary();
      return located(at, [&] { return make_binary(Op::Pow, base, exponent); });
    }
    return base;
  }

  NodePtr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::End:
        fail("unexpected end of input", t);
      case Tok::Number:
        ++pos_;
        return number(t);
      case Tok::String: {
        ++pos_;
        try {
          return make_vertex_literal(VertexId::parse(t.text));
        } catch (const AddressError& e) {
          fail(e.what(), t);
        }
      }
      case Tok::Symbol:
        if (accept_symbol("(")) {
          NodePtr inner = expr();
          expect_symbol(")");
          return inner;
        }
        fail("unexpected '" + t.text + "'", t);
      case Tok::Name:
        break;
    }

    if (accept_name("if")) {
      NodePtr cond = expr();
      expect_name("then");
      NodePtr then_branch = expr();
      expect_name("else");
      NodePtr else_branch = expr();
      return located(t, [&] { return make_if(cond, then_branch, else_branch); });
    }
    if (is_keyword(t.text)) {
      fail("unexpected keyword '" + t.text + "'", t);
    }
    ++pos_;
    if (peek().kind == Tok::Symbol && peek().text == "(") {
      if (find_signature(t.text) == nullptr) {
        fail("unknown function '" + t.text + "'", t);
      }
      ++pos_;
      std::vector<NodePtr> args;
      if (!accept_symbol(")")) {
        do {
          args.push_back(expr());
        } while (accept_symbol(","));
        expect_symbol(")");
      }
      return located(t, [&] { return make_call(t.text, std::move(args)); });
    }
    if (t.text == "len") {
      return make_len();
    }
    if (t.text == "last") {
      return make_last();
    }
    if (t.text == "v") {
      return make_self();
    }
    if (t.text == "root") {
      return make_root();
    }
    if (find_signature(t.text) != nullptr) {
      fail("function '" + t.text + "' needs an argument list", t);
    }
    fail("unknown identifier '" + t.text + "'", t);
  }

  static NodePtr number(const Token& t) {
    const std::string& s = t.text;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (s.find_first_of(".eE") == std::string::npos) {
      std::int64_t i = 0;
      const auto [ptr, ec] = std::from_chars(first, last, i);
      if (ec == std::errc() && ptr == last) {
        return make_literal(Num::integer(i));
      }
    }
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, d);
    if (ec != std::errc() || ptr != last || !std::isfinite(d)) {
      fail("malformed number '" + s + "'", t);
    }
    return make_literal(Num::real(d));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Expression parse_typed(std::string_view text, std::size_t line, std::size_t column,
                       Type want, bool allow_vertices, std::string_view what) {
  Expression e = parse(text, line, column);
  if (e.type() != want) {
    throw SyntaxError(std::string(what) + " must be a " + std::string(type_name(want)) +
                          " expression, got a " + std::string(type_name(e.type())),
                      line, column);
  }
  if (!allow_vertices && uses_vertices(e.root())) {
    throw SyntaxError(std::string(what) + " may only use len and last, not vertex expressions",
                      line, column);
  }
  return e;
}

}  // namespace

Expression parse(std::string_view text, std::size_t first_line, std::size_t first_column) {
  Lexer lexer(text, first_line, first_column);
  Parser parser(lexer.run());
  return Expression(parser.parse_all());
}

Expression parse_weight(std::string_view text, std::size_t first_line, std::size_t first_column) {
  return parse_typed(text, first_line, first_column, Type::Number, false, "weight");
}

Expression parse_tree(std::string_view text, std::size_t first_line, std::size_t first_column) {
  return parse_typed(text, first_line, first_column, Type::Number, false, "branching");
}

Expression parse_map(std::string_view text, std::size_t first_line, std::size_t first_column) {
  return parse_typed(text, first_line, first_column, Type::Vertex, true, "map");
}

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string print_number(const Num& n) {
  if (n.is_int) {
    return std::to_string(n.i);
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.d);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) {
    s += ".0";
  }
  return s;
}

void print_into(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Literal:
      out += print_number(n.num);
      return;
    case NodeKind::Len:
      out += "len";
      return;
    case NodeKind::Last:
      out += "last";
      return;
    case NodeKind::Self:
      out += "v";
      return;
    case NodeKind::Root:
      out += "root";
      return;
    case NodeKind::VertexLiteral:
      out += '"';
      out += n.vertex.to_string();
      out += '"';
      return;
    case NodeKind::Negate:
      out += "(-";
      print_into(*n.args[0], out);
      out += ')';
      return;
    case NodeKind::Binary:
    case NodeKind::Compare:
      out += '(';
      print_into(*n.args[0], out);
      out += ' ';
      out += op_symbol(n.op);
      out += ' ';
      print_into(*n.args[1], out);
      out += ')';
      return;
    case NodeKind::If:
      out += "(if ";
      print_into(*n.args[0], out);
      out += " then ";
      print_into(*n.args[1], out);
      out += " else ";
      print_into(*n.args[2], out);
      out += ')';
      return;
    case NodeKind::Call:
      out += n.name;
      out += '(';
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k != 0) {
          out += ", ";
        }
        print_into(*n.args[k], out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const Node& n) {
  std::string out;
  print_into(n, out);
  return out;
}

std::string print(const Expression& e) { return print(e.root()); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Context {
  std::span<const VertexId::Index> path;
  const VertexId* self = nullptr;
  const TreeSpec* tree = nullptr;
};

Num finite_real(double x, std::string_view what) {
  if (!std::isfinite(x)) {
    throw EvalError(std::string(what) + " produced a non-finite value");
  }
  return Num::real(x);
}

Num add(const Num& a, const Num& b) {
  std::int64_t r;
  if (a.is_int && b.is_int && !__builtin_add_overflow(a.i, b.i, &r)) {
    return Num::integer(r);
  }
  return finite_real(a.as_double() + b.as_double(), "addition");
}

Num sub(const Num& a, const Num& b) {
  std::int64_t r;
  if (a.is_int && b.is_int && !__builtin_sub_overflow(a.i, b.i, &r)) {
    return Num::integer(r);
  }
  return finite_real(a.as_double() - b.as_double(), "subtraction");
}

Num mul(const Num& a, const Num& b) {
  std::int64_t r;
  if (a.is_int && b.is_int && !__builtin_mul_overflow(a.i, b.i, &r)) {
    return Num::integer(r);
  }
  return finite_real(a.as_double() * b.as_double(), "multiplication");
}

Num divide(const Num& a, const Num& b) {
  if (b.as_double() == 0.0) {
    throw EvalError("division by zero");
  }
  return finite_real(a.as_double() / b.as_double(), "division");
}

Num modulo(const Num& a, const Num& b) {
  if (b.as_double() == 0.0) {
    throw EvalError("modulo by zero");
  }
  if (a.is_int && b.is_int) {
    if (b.i == -1) {
      return Num::integer(0);
    }
    std::int64_t r = a.i % b.i;
    if (r != 0 && ((r < 0) != (b.i < 0))) {
      r += b.i;
    }
    return Num::integer(r);
  }
  const double x = a.as_double();
  const double y = b.as_double();
  return finite_real(x - y * std::floor(x / y), "modulo");
}

Num power(const Num& a, const Num& b) {
  if (a.as_double() == 0.0 && b.as_double() < 0.0) {
    throw EvalError("zero raised to a negative power");
  }
  if (a.is_int && b.is_int && b.i >= 0) {
    std::int64_t result = 1;
    std::int64_t base = a.i;
    std::int64_t e = b.i;
    bool overflow = false;
    while (e > 0 && !overflow) {
      if (e & 1) {
        overflow = __builtin_mul_overflow(result, base, &result);
      }
      e >>= 1;
      if (e > 0 && !overflow) {
        overflow = __builtin_mul_overflow(base, base, &base);
      }
    }
    if (!overflow) {
      return Num::integer(result);
    }
  }
  const double x = std::pow(a.as_double(), b.as_double());
  if (std::isnan(x)) {
    throw EvalError("power of a negative base with a fractional exponent");
  }
  return finite_real(x, "power");
}

bool compare(Op op, const Num& a, const Num& b) {
  if (a.is_int && b.is_int) {
    switch (op) {
      case Op::Eq: return a.i == b.i;
      case Op::Ne: return a.i != b.i;
      case Op::Lt: return a.i < b.i;
      case Op::Le: return a.i <= b.i;
      case Op::Gt: return a.i > b.i;
      case Op::Ge: return a.i >= b.i;
      default: break;
    }
  }
  const double x = a.as_double();
  const double y = b.as_double();
  switch (op) {
    case Op::Eq: return x == y;
    case Op::Ne: return x != y;
    case Op::Lt: return x < y;
    case Op::Le: return x <= y;
    case Op::Gt: return x > y;
    case Op::Ge: return x >= y;
    default: break;
  }
  throw EvalError("not a comparison");
}

Num floor_num(const Num& a) {
  if (a.is_int) {
    return a;
  }
  const double f = std::floor(a.d);
  if (f >= -9.2e18 && f <= 9.2e18) {
    return Num::integer(static_cast<std::int64_t>(f));
  }
  return Num::real(f);
}

// Non-negative integral value of a numeric argument, or an error.
std::uint64_t as_index(const Num& n, std::string_view what) {
  if (n.is_int) {
    if (n.i < 0) {
      throw EvalError(std::string(what) + " is negative");
    }
    return static_cast<std::uint64_t>(n.i);
  }
  if (n.d < 0.0) {
    throw EvalError(std::string(what) + " is negative");
  }
  if (n.d != std::floor(n.d) || n.d > 1.8e19) {
    throw EvalError(std::string(what) + " is not an integer");
  }
  return static_cast<std::uint64_t>(n.d);
}

Num eval_num(const Node& n, const Context& ctx);
bool eval_bool(const Node& n, const Context& ctx);
VertexId eval_vertex(const Node& n, const Context& ctx);

Num eval_num(const Node& n, const Context& ctx) {
  switch (n.kind) {
    case NodeKind::Literal:
      return n.num;
    case NodeKind::Len:
      return Num::integer(static_cast<std::int64_t>(ctx.path.size()));
    case NodeKind::Last:
      return Num::integer(ctx.path.empty() ? 0 : ctx.path.back());
    case NodeKind::Negate: {
      const Num a = eval_num(*n.args[0], ctx);
      if (a.is_int && a.i != std::numeric_limits<std::int64_t>::min()) {
        return Num::integer(-a.i);
      }
      return Num::real(-a.as_double());
    }
    case NodeKind::Binary: {
      const Num a = eval_num(*n.args[0], ctx);
      const Num b = eval_num(*n.args[1], ctx);
      switch (n.op) {
        case Op::Add: return add(a, b);
        case Op::Sub: return sub(a, b);
        case Op::Mul: return mul(a, b);
        case Op::Div: return divide(a, b);
        case Op::Mod: return modulo(a, b);
        case Op::Pow: return power(a, b);
        default: break;
      }
      break;
    }
    case NodeKind::If:
      return eval_bool(*n.args[0], ctx) ? eval_num(*n.args[1], ctx) : eval_num(*n.args[2], ctx);
    case NodeKind::Call: {
      if (n.name == "depth") {
        return Num::integer(static_cast<std::int64_t>(eval_vertex(*n.args[0], ctx).length()));
      }
      const Num a = eval_num(*n.args[0], ctx);
      if (n.name == "floor") {
        return floor_num(a);
      }
      if (n.name == "abs") {
        if (a.is_int && a.i != std::numeric_limits<std::int64_t>::min()) {
          return Num::integer(a.i < 0 ? -a.i : a.i);
        }
        return Num::real(std::fabs(a.as_double()));
      }
      const Num b = eval_num(*n.args[1], ctx);
      if (n.name == "min") {
        return compare(Op::Le, a, b) ? a : b;
      }
      if (n.name == "max") {
        return compare(Op::Ge, a, b) ? a : b;
      }
      break;
    }
    default:
      break;
  }
  throw EvalError("expression is not numeric");
}

bool eval_bool(const Node& n, const Context& ctx) {
  if (n.kind != NodeKind::Compare) {
    throw EvalError("expression is not a condition");
  }
  if (n.args[0]->type == Type::Vertex) {
    const bool same = eval_vertex(*n.args[0], ctx) == eval_vertex(*n.args[1], ctx);
    return n.op == Op::Eq ? same : !same;
  }
  return compare(n.op, eval_num(*n.args[0], ctx), eval_num(*n.args[1], ctx));
}

const TreeSpec& require_tree(const Context& ctx) {
  if (ctx.tree == nullptr) {
    throw EvalError("vertex expression evaluated without a tree");
  }
  return *ctx.tree;
}

VertexId eval_vertex(const Node& n, const Context& ctx) {
  switch (n.kind) {
    case NodeKind::Self:
      if (ctx.self != nullptr) {
        return *ctx.self;
      }
      return VertexId(std::vector<VertexId::Index>(ctx.path.begin(), ctx.path.end()));
    case NodeKind::Root:
      return VertexId::root();
    case NodeKind::VertexLiteral:
      require_tree(ctx).validate(n.vertex);
      return n.vertex;
    case NodeKind::If:
      return eval_bool(*n.args[0], ctx) ? eval_vertex(*n.args[1], ctx)
                                        : eval_vertex(*n.args[2], ctx);
    case NodeKind::Call:
      if (n.name == "parent") {
        return eval_vertex(*n.args[0], ctx).parent_or_root();
      }
      if (n.name == "child") {
        const VertexId base = eval_vertex(*n.args[0], ctx);
        const std::uint64_t i = as_index(eval_num(*n.args[1], ctx), "child index");
        const std::uint64_t limit = require_tree(ctx).branching(base);
        if (i >= limit) {
          throw AddressError("child(" + base.to_string() + ", " + std::to_string(i) +
                             "): vertex has only " + std::to_string(limit) + " children");
        }
        return base.child(static_cast<VertexId::Index>(i));
      }
      if (n.name == "spine") {
        const std::uint64_t length = as_index(floor_num(eval_num(*n.args[0], ctx)), "spine length");
        if (length > kMaxPathLength) {
          throw BudgetError("spine length " + std::to_string(length) + " exceeds the path limit " +
                            std::to_string(kMaxPathLength));
        }
        return VertexId::spine(static_cast<std::size_t>(length));
      }
      break;
    default:
      break;
  }
  throw EvalError("expression is not vertex-valued");
}

template <class F>
auto located_eval(std::span<const VertexId::Index> path, F&& f) {
  try {
    return f();
  } catch (const EvalError& e) {
    throw EvalError(std::string(e.what()) + " (at vertex " +
                    VertexId(std::vector<VertexId::Index>(path.begin(), path.end())).to_string() +
                    ")");
  }
}

}  // namespace

Num eval_number(const Expression& e, std::span<const VertexId::Index> path) {
  return located_eval(path, [&] { return eval_num(e.root(), Context{path, nullptr, nullptr}); });
}

double eval_weight(const Expression& e, const VertexId& v) {
  const double x = eval_number(e, v.path()).as_double();
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw WeightError("weight " + print(e) + " is not positive at " + v.to_string() + " (value " +
                      std::to_string(x) + ")");
  }
  return x;
}

std::uint64_t eval_branching(const Expression& e, std::span<const VertexId::Index> path) {
  return located_eval(path, [&] {
    const Num n = eval_num(e.root(), Context{path, nullptr, nullptr});
    const std::uint64_t k = as_index(n, "branching");
    if (k == 0) {
      throw EvalError("branching must be at least 1");
    }
    return k;
  });
}

VertexId eval_map(const Expression& e, const VertexId& v, const TreeSpec& tree) {
  return located_eval(v.path(),
                      [&] { return eval_vertex(e.root(), Context{v.path(), &v, &tree}); });
}

TreeSpec make_tree(const Expression& e) {
  return TreeSpec([e](std::span<const VertexId::Index> path) { return eval_branching(e, path); },
                  print(e));
}

bool depends_on_vertex(const Node& n) {
  if (n.kind == NodeKind::Len || n.kind == NodeKind::Last || n.kind == NodeKind::Self) {
    return true;
  }
  for (const auto& a : n.args) {
    if (depends_on_vertex(*a)) {
      return true;
    }
  }
  return false;
}

Weight make_weight(const Expression& e) {
  return Weight([e](const VertexId& v) { return eval_weight(e, v); }, print(e),
                !depends_on_vertex(e.root()));
}

SelfMap make_map(const Expression& e, const TreeSpec& tree) {
  return SelfMap([e, tree](const VertexId& v) { return eval_map(e, v, tree); }, tree, print(e),
                 !depends_on_vertex(e.root()));
}

}  // namespace treecomp::dsl
