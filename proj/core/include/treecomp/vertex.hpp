#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treecomp {

// Address of a vertex as the sequence of child indices from the root.
// The root is the empty path. Ordering is lexicographic on the path, so the
// root precedes everything and [0] < [0,0] < [1].
class VertexId {
 public:
  using Index = std::uint32_t;

  VertexId() = default;
  VertexId(std::initializer_list<Index> path) : path_(path) {}
  explicit VertexId(std::vector<Index> path) : path_(std::move(path)) {}

  static VertexId root() { return {}; }

  // Vertex reached from the root by following child 0 `length` times.
  static VertexId spine(std::size_t length) {
    return VertexId(std::vector<Index>(length, 0));
  }

  bool is_root() const { return path_.empty(); }
  std::size_t length() const { return path_.size(); }
  std::span<const Index> path() const { return path_; }

  // Index of this vertex among its siblings; 0 at the root.
  Index last() const { return path_.empty() ? 0 : path_.back(); }

  // Throws AddressError at the root.
  VertexId parent() const;

  // Parent, or the root itself when called on the root.
  VertexId parent_or_root() const;

  VertexId child(Index i) const;

  bool is_prefix_of(const VertexId& other) const;

  // Dot-separated indices, root spelled "o".
  std::string to_string() const;

  // Inverse of to_string. Throws AddressError on malformed text.
  static VertexId parse(std::string_view text);

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
    return a.path_ <=> b.path_;
  }

 private:
  std::vector<Index> path_;
};

std::size_t common_prefix_length(const VertexId& v, const VertexId& w);

// Edge-counting metric: |v| + |w| - 2 |v ^ w|.
std::size_t distance(const VertexId& v, const VertexId& w);

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept;
};

}  // namespace treecomp
