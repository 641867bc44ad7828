#include "treecomp/vertex.hpp"

#include <algorithm>
#include <charconv>

#include "treecomp/errors.hpp"

namespace treecomp {

VertexId VertexId::parent() const {
  if (path_.empty()) {
    throw AddressError("the root has no parent");
  }
  return VertexId(std::vector<Index>(path_.begin(), path_.end() - 1));
}

VertexId VertexId::parent_or_root() const {
  return is_root() ? VertexId{} : parent();
}

VertexId VertexId::child(Index i) const {
  std::vector<Index> path;
  path.reserve(path_.size() + 1);
  path.assign(path_.begin(), path_.end());
  path.push_back(i);
  return VertexId(std::move(path));
}

bool VertexId::is_prefix_of(const VertexId& other) const {
  return path_.size() <= other.path_.size() &&
         std::equal(path_.begin(), path_.end(), other.path_.begin());
}

std::string VertexId::to_string() const {
  if (path_.empty()) {
    return "o";
  }
  std::string out;
  out.reserve(path_.size() * 2);
  for (std::size_t k = 0; k < path_.size(); ++k) {
    if (k != 0) {
      out.push_back('.');
    }
    out += std::to_string(path_[k]);
  }
  return out;
}

VertexId VertexId::parse(std::string_view text) {
  if (text == "o") {
    return {};
  }
  if (text.empty()) {
    throw AddressError("empty vertex string (the root is spelled \"o\")");
  }
  std::vector<Index> path;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = text.find('.', pos);
    const std::string_view piece =
        text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw AddressError("malformed vertex string \"" + std::string(text) + "\"");
    }
    path.push_back(value);
    if (dot == std::string_view::npos) {
      break;
    }
    pos = dot + 1;
  }
  return VertexId(std::move(path));
}

std::size_t common_prefix_length(const VertexId& v, const VertexId& w) {
  const auto a = v.path();
  const auto b = w.path();
  const auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return static_cast<std::size_t>(ia - a.begin());
}

std::size_t distance(const VertexId& v, const VertexId& w) {
  return v.length() + w.length() - 2 * common_prefix_length(v, w);
}

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
  // FNV-1a over the path entries.
  std::uint64_t h = 1469598103934665603ull;
  for (const auto index : v.path()) {
    h ^= index;
    h *= 1099511628211ull;
  }
  h ^= v.length();
  return static_cast<std::size_t>(h);
}

}  // namespace treecomp
