#pragma once

// Minimal non-validating XML reader sufficient for OSM documents. Keeps the
// byte range of every element so unknown content can be copied verbatim.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace osmag::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::size_t begin = 0;  // offset of '<'
  std::size_t end = 0;    // one past the closing '>'
  int line = 1;
  int column = 1;

  const std::string* attribute(std::string_view key) const;
};

/// Parses a document and returns its root element. Throws Error(XmlSyntax)
/// with the 1-based line and column of the first problem.
Element parse(std::string_view text);

std::string escape(std::string_view raw);

}  // namespace osmag::xml
