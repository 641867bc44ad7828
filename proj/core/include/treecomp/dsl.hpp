#pragma once

// A small expression language for trees, weights and self-maps.
//
//   expr    := compare
//   compare := sum (('==' | '!=' | '<=' | '>=' | '<' | '>') sum)?
//   sum     := term (('+' | '-') term)*
//   term    := unary (('*' | '/' | 'mod') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?
//   atom    := number | 'len' | 'last' | 'v' | 'root' | '"' vertex '"'
//            | name '(' expr (',' expr)* ')' | '(' expr ')'
//            | 'if' expr 'then' expr 'else' expr
//
// `len` is |v| and `last` is the index of v among its siblings (0 at the
// root). Numeric calls: floor, abs, min, max, depth(vertex). Vertex calls:
// parent(m) (the root maps to itself), child(m, i), spine(e) (follow child 0
// from the root floor(e) times).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treecomp/function_space.hpp"
#include "treecomp/self_map.hpp"
#include "treecomp/tree.hpp"
#include "treecomp/vertex.hpp"

namespace treecomp::dsl {

enum class Type { Number, Boolean, Vertex };

std::string_view type_name(Type t);

/// Numeric value: exact integer until an operation forces floating point.
struct Num {
  bool is_int = true;
  std::int64_t i = 0;
  double d = 0.0;

  static Num integer(std::int64_t x) { return {true, x, 0.0}; }
  static Num real(double x) { return {false, 0, x}; }

  double as_double() const { return is_int ? static_cast<double>(i) : d; }

  friend bool operator==(const Num&, const Num&) = default;
};

enum class NodeKind {
  Literal,        // num
  Len,
  Last,
  Self,           // v
  Root,
  VertexLiteral,  // vertex
  Negate,         // args[0]
  Binary,         // op, args[0..1]
  Compare,        // op, args[0..1]
  If,             // args: cond, then, else
  Call,           // name, args
};

enum class Op { Add, Sub, Mul, Div, Mod, Pow, Eq, Ne, Lt, Le, Gt, Ge };

std::string_view op_symbol(Op op);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Literal;
  Type type = Type::Number;
  Num num;
  VertexId vertex;
  Op op = Op::Add;
  std::string name;
  std::vector<NodePtr> args;
};

// Checked constructors. They enforce the typing rules and throw SyntaxError
// (at 0:0) when violated; the parser reports located errors before calling
// them.
NodePtr make_literal(Num n);
NodePtr make_len();
NodePtr make_last();
NodePtr make_self();
NodePtr make_root();
NodePtr make_vertex_literal(VertexId v);
NodePtr make_negate(NodePtr a);
NodePtr make_binary(Op op, NodePtr a, NodePtr b);
NodePtr make_compare(Op op, NodePtr a, NodePtr b);
NodePtr make_if(NodePtr cond, NodePtr then_branch, NodePtr else_branch);
NodePtr make_call(std::string name, std::vector<NodePtr> args);

bool structurally_equal(const Node& a, const Node& b);

/// Any node of a vertex-valued kind appears in the tree.
bool uses_vertices(const Node& n);

/// The value can change with the evaluation vertex (mentions len, last or v).
bool depends_on_vertex(const Node& n);

/// A parsed, type-checked expression.
class Expression {
 public:
  explicit Expression(NodePtr root);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  Type type() const { return root_->type; }

  friend bool operator==(const Expression& a, const Expression& b) {
    return structurally_equal(*a.root_, *b.root_);
  }

 private:
  NodePtr root_;
};

/// Parses any well-typed expression. Line/column in errors are offset by
/// the given origin so spec files can report file positions.
Expression parse(std::string_view text, std::size_t first_line = 1, std::size_t first_column = 1);

/// Numeric expression in len and last, usable as a weight.
Expression parse_weight(std::string_view text, std::size_t first_line = 1,
                        std::size_t first_column = 1);
/// Numeric expression in len and last, usable as a branching rule.
Expression parse_tree(std::string_view text, std::size_t first_line = 1,
                      std::size_t first_column = 1);
/// Vertex-valued expression.
Expression parse_map(std::string_view text, std::size_t first_line = 1,
                     std::size_t first_column = 1);

/// Canonical fully parenthesized text; parse(print(e)) == e.
std::string print(const Expression& e);
std::string print(const Node& n);

Num eval_number(const Expression& e, std::span<const VertexId::Index> path);
/// Validated positive weight value.
double eval_weight(const Expression& e, const VertexId& v);
std::uint64_t eval_branching(const Expression& e, std::span<const VertexId::Index> path);
VertexId eval_map(const Expression& e, const VertexId& v, const TreeSpec& tree);

TreeSpec make_tree(const Expression& e);
Weight make_weight(const Expression& e);
SelfMap make_map(const Expression& e, const TreeSpec& tree);

}  // namespace treecomp::dsl
