#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osmag/geo.hpp"
#include "osmag/osm_document.hpp"

namespace osmag {

/// Tolerances shared by validation, location and merging.
inline constexpr double kContainmentTolerance = 0.05;  // m of outward slack for child-in-parent
inline constexpr double kOverlapTolerance = 0.05;      // m^2 of interior overlap ignored
inline constexpr double kHeightTolerance = 0.5;        // m
inline constexpr double kNodeMergeTolerance = 0.05;    // m

struct GeoNode {
  std::int64_t id = 0;
  double lat = 0.0;
  double lon = 0.0;
  Tags tags;
  Attributes attributes;
  LocalPoint local;  // projected through the root anchor
};

enum class AreaType { inner, structure };

struct Area {
  std::string id;  // osmAG:id
  std::int64_t way_id = 0;
  std::vector<std::int64_t> ring;  // as stored; first == last when closed
  AreaType type = AreaType::inner;
  std::optional<std::string> parent;
  double height = 0.0;  // resolved, inherits from the parent when untagged
  Tags tags;            // every tag of the way, including the osmAG:* keys
  Attributes attributes;

  std::vector<LocalPoint> outline;  // ring vertices in the local frame, closing node dropped
  Polygon2D polygon;                // normalized; empty when the ring is degenerate

  bool closed() const { return ring.size() >= 4 && ring.front() == ring.back(); }
};

struct Passage {
  std::string id;
  std::int64_t way_id = 0;
  std::vector<std::int64_t> polyline;
  std::string from_area;
  std::string to_area;
  Tags tags;
  Attributes attributes;

  bool vertical = false;  // highway=elevator, highway=steps or osmAG:vertical=yes
  std::vector<LocalPoint> points;
};

/// Tags that mark a passage as a vertical connection between floors.
bool is_vertical_passage(const Tags& tags);

/// Resolved osmAG map. Immutable after build_model; editing produces a new
/// value.
struct MapModel {
  std::map<std::int64_t, GeoNode> nodes;
  std::map<std::string, Area> areas;
  std::map<std::string, Passage> passages;
  std::optional<RootAnchor> root;  // absent only when the document has no osmAG content

  std::vector<OsmWay> opaque_ways;  // non-osmAG ways, passed through untouched
  Attributes osm_attributes;
  std::vector<std::string> leading_fragments;
  std::vector<std::string> trailing_fragments;

  std::map<std::string, std::vector<std::string>> children_index;
  std::map<std::string, std::vector<std::string>> area_passages_index;
  std::vector<std::string> tree_roots;  // parentless areas

  const Area& area(std::string_view id) const;
  const Area* find_area(std::string_view id) const;
  const Passage* find_passage(std::string_view id) const;
  bool is_leaf(std::string_view id) const;
};

struct BuildOptions {
  /// Keep passages and parents that name areas absent from this document.
  /// Used for map fragments that are about to be merged.
  bool allow_unresolved_areas = false;
};

/// Resolves osmAG ways of a raw document into areas and passages.
/// Throws MissingRootAnchor, DuplicateRootAnchor, DanglingNodeReference,
/// DuplicateOsmagId, UnknownOsmagType, DanglingAreaReference,
/// MissingAttribute.
MapModel build_model(const OsmDocument& doc, const BuildOptions& options = {});

/// Rebuilds the caches (local coordinates, heights, polygons, indices) of a
/// model whose authoritative fields were edited.
void reindex(MapModel& model);

OsmDocument to_document(const MapModel& model);
std::string serialize(const MapModel& model);
MapModel load_model(const std::filesystem::path& path, const BuildOptions& options = {});

std::vector<const Area*> leaf_areas(const MapModel& model);
std::optional<const Area*> parent_of(const MapModel& model, std::string_view id);
std::vector<const Area*> children_of(const MapModel& model, std::string_view id);
/// Child to root order, not including the area itself.
std::vector<const Area*> ancestors_of(const MapModel& model, std::string_view id);
bool is_ancestor(const MapModel& model, std::string_view ancestor, std::string_view descendant);

/// Deepest inner leaf containing the point whose height matches within
/// kHeightTolerance; ties on shared walls go to the smallest osmAG:id.
/// Returns nullptr when the point is outside every leaf at that height.
const Area* locate(const MapModel& model, LocalPoint point, double height);

// ---------------------------------------------------------------------------
// Validation

enum class Severity { error, warning };

/// Diagnostic codes. Errors: CONTAINMENT, OVERLAP, PASSAGE_SHARE,
/// PASSAGE_ENDPOINTS, OPEN_RING, SELF_INTERSECT, DEGENERATE_RING, BAD_PARENT,
/// DANGLING_AREA. Warnings: ISOLATED, MIXED_DEPTH_PASSAGE.
/// Build failures reported by the CLI use the upper-snake form of the error
/// name (DANGLING_NODE_REFERENCE, ...).
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string subject;
  std::string message;
};

std::vector<Diagnostic> validate(const MapModel& model);
bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::string format_diagnostic(const Diagnostic& d);

}  // namespace osmag
