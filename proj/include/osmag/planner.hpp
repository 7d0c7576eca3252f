#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "osmag/model.hpp"
#include "osmag/profile.hpp"
#include "osmag/raster.hpp"

namespace osmag {

// ---------------------------------------------------------------------------
// Costs are integer micrometres so that sums are exact in any order: the
// hierarchical and the flat search must agree to the last digit.

using Cost = std::int64_t;
inline constexpr Cost kCostPerMetre = 1'000'000;
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 4;

inline double to_metres(Cost c) { return static_cast<double>(c) / static_cast<double>(kCostPerMetre); }
Cost metres_to_cost(double metres);
/// Axis steps are exact multiples of the resolution; the diagonal part is
/// rounded up so grid costs never undercut the straight-line distance.
Cost grid_cost(StepCount steps, double resolution);
/// ceil(factor * c).
Cost scale_cost(Cost c, double factor);

// ---------------------------------------------------------------------------

struct GraphArea {
  std::string id;
  int parent = -1;
  std::vector<int> children;
  bool leaf = true;
  bool traversable = false;  // inner leaf: rasterized and searchable
  double height = 0.0;
  int tin = 0, tout = 0;  // Euler tour: subtree(a) = {b : tin[a] <= tin[b] < tout[a]}
  int tree_height = 0;    // 0 for leaves
  std::vector<int> vertices;  // passage vertices touching this leaf
  std::shared_ptr<const OccupancyRaster> raster;  // null when loaded from a cache
};

/// A passage between two traversable leaves. Crossing it costs the grid gap
/// between its two anchors plus the height difference.
struct PassageVertex {
  std::string id;
  std::array<int, 2> areas{-1, -1};
  std::array<std::int64_t, 2> anchor_col{};  // global lattice cells of the anchors
  std::array<std::int64_t, 2> anchor_row{};
  std::array<LocalPoint, 2> anchor_point{};
  bool vertical = false;
  Cost crossing_horizontal = 0;
  Cost crossing_vertical = 0;  // |delta height|, before the profile's vertical factor

  int side_of(int area) const { return areas[0] == area ? 0 : 1; }
  int other_area(int area) const { return areas[0] == area ? areas[1] : areas[0]; }
};

struct GraphEdge {
  int u = -1;
  int v = -1;
  int via_area = -1;
  Cost base_cost = 0;

  int other(int w) const { return w == u ? v : u; }
};

/// Search graph whose vertices are passages and whose edges are true grid
/// costs through leaf areas. Immutable once built.
struct PassageGraph {
  double resolution = kDefaultResolution;
  std::vector<GraphArea> areas;  // sorted by osmAG:id
  std::map<std::string, int> area_index;
  std::vector<PassageVertex> vertices;  // sorted by osmAG:id
  std::map<std::string, int> vertex_index;
  std::vector<GraphEdge> edges;
  std::vector<std::array<std::vector<int>, 2>> adjacency;  // vertex -> side -> edge ids

  int area_of(std::string_view id) const;
  int vertex_of(std::string_view id) const;
  bool in_subtree(int ancestor, int area) const {
    return areas[ancestor].tin <= areas[area].tin && areas[area].tin < areas[ancestor].tout;
  }
  Cost base_crossing(int vertex) const {
    return vertices[vertex].crossing_horizontal + vertices[vertex].crossing_vertical;
  }
  std::size_t edge_count() const { return edges.size(); }
};

/// Rasterizes every inner leaf (in parallel) and wires the passage graph.
/// Raster failures are rethrown with the area id attached.
PassageGraph build_passage_graph(const MapModel& model, double resolution = kDefaultResolution);

/// All-pairs costs between the boundary passages of one non-leaf area,
/// through its subtree only. Crossing costs of the two end passages are
/// excluded.
struct AreaTable {
  int area = -1;
  std::vector<int> boundary;  // sorted vertex ids
  std::vector<Cost> cost;     // boundary.size()^2, kInfiniteCost when disconnected
  bool has_vertical = false;  // some internal crossing has a height change

  int row_of(int vertex) const;
  Cost at(int from_vertex, int to_vertex) const;
};

struct HierarchicalCostIndex {
  std::vector<std::optional<AreaTable>> tables;  // by graph area; set for non-leaf areas
};

/// Bottom-up over the area tree, one parallel batch per tree level; each
/// table is computed from the child tables and leaf edges.
HierarchicalCostIndex precompute_hierarchy(const MapModel& model, const PassageGraph& graph);

// ---------------------------------------------------------------------------

struct Waypoint {
  double lat = 0.0;
  double lon = 0.0;
  double height = 0.0;
};

struct RouteLeg {
  std::string area;
  std::string entry;  // passage id or "START"
  std::string exit;   // passage id or "GOAL"
  double height = 0.0;
  std::vector<LocalPoint> polyline;
  Cost cost = 0;
};

struct Route {
  Cost total = 0;
  double total_cost = 0.0;  // metres
  std::vector<RouteLeg> legs;
  std::vector<std::string> passages_crossed;
  Cost crossing_cost = 0;  // sum over crossed passages, profile applied
  Cost vertical_cost = 0;  // vertical part of the crossings, profile applied
  std::size_t expanded = 0;
  double search_microseconds = 0.0;  // graph search only
};

struct PlanOptions {
  bool use_hierarchy = true;
  /// Called for every expanded search state: the passage just crossed, the
  /// area now entered, cost so far and heuristic estimate.
  std::function<void(const std::string& passage, const std::string& area, Cost g, Cost h)> on_expand;
};

/// Global path between two geodetic points. Uses `index` when given and
/// `options.use_hierarchy` is set. Throws StartNotLocated, GoalNotLocated,
/// NoPath.
Route plan(const MapModel& model, const PassageGraph& graph, const HierarchicalCostIndex* index,
           const Waypoint& start, const Waypoint& goal, const CapabilityProfile& profile,
           const PlanOptions& options = {});

/// Same query with start and goal in the local frame.
Route plan_local(const MapModel& model, const PassageGraph& graph, const HierarchicalCostIndex* index,
                 LocalPoint start, double start_height, LocalPoint goal, double goal_height,
                 const CapabilityProfile& profile, const PlanOptions& options = {});

// ---------------------------------------------------------------------------
// Precomputed index sidecar (JSON, versioned).

inline constexpr int kCacheVersion = 1;

/// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string map_content_hash(const MapModel& model);

std::string serialize_cache(const MapModel& model, const PassageGraph& graph, const HierarchicalCostIndex& index);

struct LoadedIndex {
  PassageGraph graph;  // without rasters; plan() rasterizes on demand
  HierarchicalCostIndex index;
};

/// nullopt when the cache is stale (hash or resolution differ) or from
/// another version; throws BadCache when it cannot be read.
std::optional<LoadedIndex> load_cache(const MapModel& model, std::string_view cache_text, double resolution);

}  // namespace osmag
