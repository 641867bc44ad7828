#pragma once

// Random well-typed expression trees for round-trip testing. Built only
// through the checked make_* constructors, never through the parser.

#include <cmath>
#include <cstdint>
#include <vector>

#include "treecomp/dsl.hpp"
#include "treecomp/random.hpp"

namespace treecomp::testing {

class AstGenerator {
 public:
  explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

  dsl::NodePtr number(int depth) {
    if (depth <= 0 || rng_.index(0, 3) == 0) {
      return number_leaf();
    }
    switch (rng_.index(0, 7)) {
      case 0:
        return dsl::make_negate(number(depth - 1));
      case 1:
      case 2: {
        static constexpr dsl::Op kOps[] = {dsl::Op::Add, dsl::Op::Sub, dsl::Op::Mul,
                                           dsl::Op::Div, dsl::Op::Mod, dsl::Op::Pow};
        return dsl::make_binary(kOps[rng_.index(0, 5)], number(depth - 1), number(depth - 1));
      }
      case 3:
        return dsl::make_if(boolean(depth - 1), number(depth - 1), number(depth - 1));
      case 4: {
        static constexpr const char* kUnary[] = {"floor", "abs"};
        return dsl::make_call(kUnary[rng_.index(0, 1)], {number(depth - 1)});
      }
      case 5: {
        static constexpr const char* kBinary[] = {"min", "max"};
        return dsl::make_call(kBinary[rng_.index(0, 1)], {number(depth - 1), number(depth - 1)});
      }
      case 6:
        return dsl::make_call("depth", {vertex(depth - 1)});
      default:
        return dsl::make_binary(dsl::Op::Add, number(depth - 1), number_leaf());
    }
  }

  dsl::NodePtr vertex(int depth) {
    if (depth <= 0 || rng_.index(0, 3) == 0) {
      return vertex_leaf();
    }
    switch (rng_.index(0, 3)) {
      case 0:
        return dsl::make_call("parent", {vertex(depth - 1)});
      case 1:
        return dsl::make_call("child", {vertex(depth - 1), number(depth - 1)});
      case 2:
        return dsl::make_call("spine", {number(depth - 1)});
      default:
        return dsl::make_if(boolean(depth - 1), vertex(depth - 1), vertex(depth - 1));
    }
  }

  dsl::NodePtr boolean(int depth) {
    static constexpr dsl::Op kCmp[] = {dsl::Op::Eq, dsl::Op::Ne, dsl::Op::Lt,
                                       dsl::Op::Le, dsl::Op::Gt, dsl::Op::Ge};
    if (rng_.index(0, 4) == 0) {
      const dsl::Op op = rng_.index(0, 1) == 0 ? dsl::Op::Eq : dsl::Op::Ne;
      return dsl::make_compare(op, vertex(depth - 1), vertex(depth - 1));
    }
    return dsl::make_compare(kCmp[rng_.index(0, 5)], number(depth - 1), number(depth - 1));
  }

  // A top-level expression: number or vertex valued.
  dsl::Expression expression(int depth) {
    return dsl::Expression(rng_.index(0, 2) == 0 ? vertex(depth) : number(depth));
  }

 private:
  dsl::NodePtr number_leaf() {
    switch (rng_.index(0, 4)) {
      case 0:
        return dsl::make_len();
      case 1:
        return dsl::make_last();
      case 2:
        // Non-integral reals with a short decimal expansion and a few
        // awkward binary fractions.
        if (rng_.index(0, 1) == 0) {
          return dsl::make_literal(dsl::Num::real(static_cast<double>(rng_.index(1, 9999)) / 8.0 + 0.1));
        }
        return dsl::make_literal(dsl::Num::real(std::ldexp(static_cast<double>(rng_.bits() >> 11), -40)));
      case 3:
        return dsl::make_literal(dsl::Num::real(static_cast<double>(rng_.index(0, 50))));
      default:
        return dsl::make_literal(dsl::Num::integer(static_cast<std::int64_t>(rng_.index(0, 1000))));
    }
  }

  dsl::NodePtr vertex_leaf() {
    switch (rng_.index(0, 2)) {
      case 0:
        return dsl::make_self();
      case 1:
        return dsl::make_root();
      default: {
        std::vector<VertexId::Index> path(rng_.index(1, 4));
        for (auto& i : path) {
          i = static_cast<VertexId::Index>(rng_.index(0, 5));
        }
        return dsl::make_vertex_literal(VertexId(std::move(path)));
      }
    }
  }

  Rng rng_;
};

}  // namespace treecomp::testing
