#pragma once

#include <optional>

#include "treecomp/vertex.hpp"

namespace treecomp {

// Running supremum with a lexicographically smallest witness. Merging is
// associative and commutative, which keeps parallel reductions
// bit-identical to a sequential sweep.
struct SupAccumulator {
  double value = 0.0;
  std::optional<VertexId> witness;

  bool empty() const { return !witness.has_value(); }

  void offer(double x, const VertexId& v) {
    if (!witness || x > value || (x == value && v < *witness)) {
      value = x;
      witness = v;
    }
  }

  void merge(const SupAccumulator& other) {
    if (other.witness) {
      offer(other.value, *other.witness);
    }
  }
};

// Same as SupAccumulator but keeps the minimum.
struct InfAccumulator {
  double value = 0.0;
  std::optional<VertexId> witness;

  void offer(double x, const VertexId& v) {
    if (!witness || x < value || (x == value && v < *witness)) {
      value = x;
      witness = v;
    }
  }

  void merge(const InfAccumulator& other) {
    if (other.witness) {
      offer(other.value, *other.witness);
    }
  }
};

}  // namespace treecomp
