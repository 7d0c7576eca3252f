#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace osmag {

struct Tag {
  std::string key;
  std::string value;

  auto operator<=>(const Tag&) const = default;
};

using Tags = std::vector<Tag>;

/// Attributes other than id/lat/lon (version, changeset, user, ...).
using Attributes = std::vector<std::pair<std::string, std::string>>;

const std::string* find_tag(const Tags& tags, std::string_view key);
void set_tag(Tags& tags, std::string_view key, std::string_view value);
void erase_tag(Tags& tags, std::string_view key);

struct OsmNode {
  std::int64_t id = 0;
  double lat = 0.0;
  double lon = 0.0;
  Tags tags;
  Attributes attributes;
};

struct OsmWay {
  std::int64_t id = 0;
  std::vector<std::int64_t> refs;
  Tags tags;
  Attributes attributes;
};

/// Raw OSM XML content. Elements the toolkit does not interpret (bounds,
/// relations, changesets) are kept as verbatim source fragments.
struct OsmDocument {
  Attributes osm_attributes;
  std::vector<OsmNode> nodes;
  std::vector<OsmWay> ways;
  std::vector<std::string> leading;   // fragments emitted before the nodes (bounds)
  std::vector<std::string> trailing;  // fragments emitted after the ways
};

OsmDocument parse_osm(std::string_view bytes);

/// Canonical output: nodes and ways sorted by id, tags sorted by key,
/// attributes in a fixed order, coordinates with seven decimals.
std::string serialize(const OsmDocument& doc);

/// Same elements, same ways' node order, same tag multisets.
bool structurally_equal(const OsmDocument& a, const OsmDocument& b);

std::string format_coordinate(double degrees);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace osmag
