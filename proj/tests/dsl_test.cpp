#include <gtest/gtest.h>

#include <cmath>

#include "support/ast_gen.hpp"
#include "treecomp/cli/builtin_examples.hpp"
#include "treecomp/dsl.hpp"
#include "treecomp/errors.hpp"
#include "treecomp/spec.hpp"

namespace treecomp {
namespace {

using dsl::Num;

Num num_at(std::string_view text, const VertexId& v) {
  return dsl::eval_number(dsl::parse(text), v.path());
}

double real_at(std::string_view text, const VertexId& v) { return num_at(text, v).as_double(); }

TEST(DslEval, ExactIntegerArithmetic) {
  const VertexId v{1, 2, 0};
  EXPECT_EQ(num_at("len * 10 + last", v), Num::integer(30));
  EXPECT_EQ(num_at("2^62", v), Num::integer(std::int64_t{1} << 62));
  EXPECT_EQ(num_at("-7 mod 3", v), Num::integer(2));
  EXPECT_EQ(num_at("7 mod -3", v), Num::integer(-2));
  EXPECT_EQ(num_at("floor(7 / 2)", v), Num::integer(3));
  EXPECT_EQ(num_at("abs(2 - 9)", v), Num::integer(7));
  EXPECT_EQ(num_at("min(len, 2) + max(len, 2)", v), Num::integer(5));
  EXPECT_EQ(num_at("if len >= 3 then 1 else 0", v), Num::integer(1));
  EXPECT_EQ(num_at("2 - 3 - 4", v), Num::integer(-5));
  EXPECT_EQ(num_at("-2^2", v), Num::integer(-4));
  EXPECT_EQ(num_at("2^3^2", v), Num::integer(512));
}

TEST(DslEval, DivisionAndOverflowGoReal) {
  const VertexId v{0, 0, 0, 0};
  EXPECT_FALSE(num_at("4 / 2", v).is_int);
  EXPECT_EQ(real_at("1 / len", v), 0.25);
  EXPECT_FALSE(num_at("2^64", v).is_int);
  EXPECT_EQ(real_at("2^64", v), std::ldexp(1.0, 64));
  EXPECT_EQ(real_at("9223372036854775807 + 1", v), 9223372036854775808.0);
  EXPECT_EQ(real_at("2^-1", v), 0.5);
  EXPECT_EQ(real_at("2.5 * 2", v), 5.0);
}

TEST(DslEval, DomainErrorsNameTheVertex) {
  const VertexId v{1};
  for (const char* bad : {"1 / (len - 1)", "len mod 0", "0^-1", "(-8)^(1/3)"}) {
    try {
      num_at(bad, v);
      FAIL() << bad;
    } catch (const EvalError& e) {
      EXPECT_NE(std::string(e.what()).find("(at vertex 1)"), std::string::npos) << e.what();
    }
  }
}

TEST(DslEval, WeightsMustBePositive) {
  const auto mu = dsl::make_weight(dsl::parse_weight("len - 2"));
  EXPECT_THROW(mu(VertexId{0}), WeightError);
  EXPECT_EQ(mu(VertexId{0, 0, 0}), 1.0);
  EXPECT_TRUE(dsl::make_weight(dsl::parse_weight("3")).is_constant());
  EXPECT_FALSE(dsl::make_weight(dsl::parse_weight("3 + 0 * len")).is_constant());
}

TEST(DslEval, BranchingMustBeAPositiveInteger) {
  const auto e = dsl::parse_tree("if len == 0 then 3 else 1");
  EXPECT_EQ(dsl::eval_branching(e, VertexId::root().path()), 3u);
  EXPECT_EQ(dsl::eval_branching(e, VertexId{2, 0}.path()), 1u);
  EXPECT_THROW(dsl::eval_branching(dsl::parse_tree("len"), VertexId::root().path()), EvalError);
  EXPECT_THROW(dsl::eval_branching(dsl::parse_tree("2.5"), VertexId::root().path()), EvalError);
  EXPECT_EQ(dsl::eval_branching(dsl::parse_tree("6 / 2"), VertexId::root().path()), 3u);
}

TEST(DslEval, MapsStayInTheTree) {
  const TreeSpec tree = dsl::make_tree(dsl::parse_tree("if len == 0 then 2 else 1"));
  const auto at = [&](std::string_view text, const VertexId& v) {
    return dsl::eval_map(dsl::parse_map(text), v, tree);
  };
  EXPECT_EQ(at("parent(v)", VertexId::root()), VertexId::root());
  EXPECT_EQ(at("parent(v)", VertexId{1, 0}), (VertexId{1}));
  EXPECT_EQ(at("child(root, 1)", VertexId{0, 0}), (VertexId{1}));
  EXPECT_EQ(at("spine(2^len)", VertexId{1, 0, 0}), VertexId::spine(8));
  EXPECT_EQ(at("spine(7 / 2)", VertexId::root()), VertexId::spine(3));
  EXPECT_EQ(at("if v == \"1\" then root else v", VertexId{1}), VertexId::root());
  EXPECT_EQ(at("child(v, depth(v) - depth(v))", VertexId{1}), (VertexId{1, 0}));
  EXPECT_THROW(at("child(v, 1)", VertexId{1}), AddressError);
  EXPECT_THROW(at("\"0.1\"", VertexId::root()), AddressError);
  EXPECT_THROW(at("spine(len - 5)", VertexId{0}), EvalError);
  EXPECT_THROW(at("spine(2^40)", VertexId::root()), BudgetError);
}

TEST(DslEval, ConstantMapsAreDetected) {
  const TreeSpec tree = TreeSpec::uniform(2);
  EXPECT_TRUE(dsl::make_map(dsl::parse_map("child(root, 1)"), tree).is_constant());
  EXPECT_TRUE(dsl::make_map(dsl::parse_map("spine(3)"), tree).is_constant());
  EXPECT_FALSE(dsl::make_map(dsl::parse_map("parent(v)"), tree).is_constant());
  EXPECT_FALSE(dsl::make_map(dsl::parse_map("spine(len)"), tree).is_constant());
}

TEST(DslParse, TypingOfSections) {
  EXPECT_THROW(dsl::parse_weight("parent(v)"), SyntaxError);
  EXPECT_THROW(dsl::parse_weight("depth(v)"), SyntaxError);
  EXPECT_THROW(dsl::parse_tree("depth(root) + 1"), SyntaxError);
  EXPECT_THROW(dsl::parse_map("len"), SyntaxError);
  EXPECT_NO_THROW(dsl::parse_map("if last == 0 then v else parent(v)"));
}

TEST(DslParse, CommentsAndWhitespace) {
  const auto a = dsl::parse("len  +\n  1   # trailing comment");
  const auto b = dsl::parse("len+1");
  EXPECT_EQ(a, b);
}

TEST(DslPrint, CanonicalForms) {
  EXPECT_EQ(dsl::print(dsl::parse("1 + 2 * len")), "(1 + (2 * len))");
  EXPECT_EQ(dsl::print(dsl::parse("-len")), "(-len)");
  EXPECT_EQ(dsl::print(dsl::parse("2.0")), "2.0");
  EXPECT_EQ(dsl::print(dsl::parse("0.1")), "0.1");
  EXPECT_EQ(dsl::print(dsl::parse("child(\"0.1\", 2)")), "child(\"0.1\", 2)");
  EXPECT_EQ(dsl::print(dsl::parse("if len < 1 then root else v")), "(if (len < 1) then root else v)");
}

TEST(DslRoundTrip, ThousandRandomAsts) {
  testing::AstGenerator gen(20240611);
  for (int k = 0; k < 1000; ++k) {
    const dsl::Expression e = gen.expression(1 + k % 6);
    const std::string text = dsl::print(e);
    const dsl::Expression back = dsl::parse(text);
    ASSERT_EQ(back, e) << "case " << k << ": " << text;
    ASSERT_EQ(dsl::print(back), text);
  }
}

TEST(DslRoundTrip, BuiltinSpecs) {
  for (const auto& s : cli::builtin_specs()) {
    const Spec spec = parse_spec(s.text);
    EXPECT_EQ(parse_spec(to_text(spec)), spec) << s.name;
  }
}

struct Malformed {
  const char* text;
  std::size_t line;
  std::size_t column;
};

// Each input is a map expression; the expected position is that of the
// offending token.
const Malformed kMalformed[] = {
    {"parent(", 1, 8},
    {"parent(v", 1, 9},
    {"v +", 1, 4},
    {"child(v)", 1, 1},
    {"child(v, v)", 1, 1},
    {"foo(v)", 1, 1},
    {"if v == root then v", 1, 20},
    {"if len then v else root", 1, 1},
    {"if len == 1 then v else 2", 1, 1},
    {"\"0.a\"", 1, 1},
    {"v )", 1, 3},
    {"v @", 1, 3},
    {"spine(1.2.3)", 1, 10},
    {"(v", 1, 3},
    {"v == root", 1, 1},
    {"parent(v,)", 1, 10},
    {"spine(len < 2 < 3)", 1, 15},
    {"spine(3 ++ 1)", 1, 10},
    {"depth(3)", 1, 1},
    {"spine(1)\n  + root", 2, 3},
};

TEST(DslParse, MalformedInputsHaveLocatedErrors) {
  static_assert(std::size(kMalformed) == 20);
  for (const auto& m : kMalformed) {
    try {
      dsl::parse_map(m.text);
      ADD_FAILURE() << "accepted: " << m.text;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.line(), m.line) << m.text << " -> " << e.what();
      EXPECT_EQ(e.column(), m.column) << m.text << " -> " << e.what();
    }
  }
}

TEST(DslParse, ErrorOffsetsFollowTheOrigin) {
  try {
    dsl::parse("len +", 4, 10);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 15u);
  }
}

TEST(Spec, SectionsAndErrors) {
  const Spec s = parse_spec("# comment\ntree: 2\nmu:\n  1 +\n  len\nphi: parent(v)\n");
  EXPECT_EQ(dsl::print(s.mu), "(1 + len)");
  EXPECT_EQ(parse_spec("tree: 2; mu: 1 + len; phi: parent(v)"), s);
  EXPECT_THROW(parse_spec("tree: 2\nmu: 1\n"), SyntaxError);
  EXPECT_THROW(parse_spec("tree: 2\nmu: 1\nphi: v\nphi: v\n"), SyntaxError);
  EXPECT_THROW(parse_spec("tree: 2\nweight: 1\nphi: v\n"), SyntaxError);
  EXPECT_THROW(parse_spec("2\ntree: 2\nmu: 1\nphi: v\n"), SyntaxError);
  try {
    parse_spec("tree: 2\nmu: 1\nphi: parent(v\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_spec("tree: 2\nmu: len +\nphi: v\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
  }
}

TEST(Spec, SemicolonInsideCommentIsText) {
  EXPECT_NO_THROW(parse_spec("# a; b\ntree: 2 # x; y\nmu: 1\nphi: v\n"));
}

TEST(Spec, Instantiate) {
  const Problem p = instantiate(parse_spec("tree: 3; mu: 2^len; phi: parent(v)"));
  EXPECT_EQ(p.tree.branching(VertexId{2, 2}), 3u);
  EXPECT_EQ(p.mu(VertexId{2, 2}), 4.0);
  EXPECT_EQ(p.phi(VertexId{2, 2}), (VertexId{2}));
}

}  // namespace
}  // namespace treecomp
