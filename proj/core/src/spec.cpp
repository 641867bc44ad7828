#include "treecomp/spec.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <vector>

#include "treecomp/errors.hpp"

namespace treecomp {

namespace {

struct Section {
  std::string body;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Recognizes `name:` at the start of a line; returns the header length.
std::optional<std::pair<std::string, std::size_t>> header(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) {
    ++i;
  }
  const std::size_t start = i;
  while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
    ++i;
  }
  const std::size_t end = i;
  while (i < line.size() && is_space(line[i])) {
    ++i;
  }
  if (end == start || i >= line.size() || line[i] != ':') {
    return std::nullopt;
  }
  return std::make_pair(std::string(line.substr(start, end - start)), i + 1);
}

}  // namespace

Spec parse_spec(std::string_view text) {
  std::string normalized(text);
  bool in_comment = false;
  for (char& c : normalized) {
    if (c == '#') {
      in_comment = true;
    } else if (c == '\n') {
      in_comment = false;
    } else if (c == ';' && !in_comment) {
      c = '\n';
    }
  }

  static constexpr std::array<std::string_view, 3> kNames = {"tree", "mu", "phi"};
  std::array<std::optional<Section>, 3> sections;
  Section* current = nullptr;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= normalized.size()) {
    const std::size_t nl = normalized.find('\n', pos);
    const std::string_view line = std::string_view(normalized).substr(
        pos, nl == std::string::npos ? std::string::npos : nl - pos);
    ++line_no;
    if (const auto h = header(line)) {
      std::size_t slot = kNames.size();
      for (std::size_t k = 0; k < kNames.size(); ++k) {
        if (h->first == kNames[k]) {
          slot = k;
        }
      }
      if (slot == kNames.size()) {
        throw SyntaxError("unknown section '" + h->first + "' (expected tree, mu or phi)", line_no, 1);
      }
      if (sections[slot]) {
        throw SyntaxError("duplicate section '" + h->first + "'", line_no, 1);
      }
      sections[slot] = Section{std::string(line.substr(h->second)), line_no, h->second + 1};
      current = &*sections[slot];
    } else if (current != nullptr) {
      current->body += '\n';
      current->body += line;
    } else {
      std::size_t i = 0;
      while (i < line.size() && is_space(line[i])) {
        ++i;
      }
      if (i < line.size() && line[i] != '#') {
        throw SyntaxError("text outside of a section", line_no, i + 1);
      }
    }
    if (nl == std::string::npos) {
      break;
    }
    pos = nl + 1;
  }

  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (!sections[k]) {
      throw SyntaxError("missing section '" + std::string(kNames[k]) + ":'", line_no, 1);
    }
  }
  return Spec{dsl::parse_tree(sections[0]->body, sections[0]->line, sections[0]->column),
              dsl::parse_weight(sections[1]->body, sections[1]->line, sections[1]->column),
              dsl::parse_map(sections[2]->body, sections[2]->line, sections[2]->column)};
}

std::string to_text(const Spec& spec) {
  return "tree: " + dsl::print(spec.tree) + "\nmu: " + dsl::print(spec.mu) +
         "\nphi: " + dsl::print(spec.phi) + "\n";
}

Problem instantiate(const Spec& spec) {
  TreeSpec tree = dsl::make_tree(spec.tree);
  Weight mu = dsl::make_weight(spec.mu);
  SelfMap phi = dsl::make_map(spec.phi, tree);
  return Problem{std::move(tree), std::move(mu), std::move(phi)};
}

}  // namespace treecomp
