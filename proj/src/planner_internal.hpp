#pragma once

#include <exception>
#include <memory>
#include <tuple>
#include <vector>

#include "osmag/planner.hpp"

namespace osmag::detail {

/// Per-leaf output of the rasterize + anchor + pair-cost kernel.
struct LeafResult {
  std::shared_ptr<const OccupancyRaster> raster;
  std::vector<std::pair<int, Cell>> anchors;          // vertex, local cell
  std::vector<std::tuple<int, int, StepCount>> pairs;  // vertex u < v
  std::exception_ptr error;
};

/// Areas, tree structure and passage vertices without any geometry work.
PassageGraph build_skeleton(const MapModel& model, double resolution);

/// Indices of traversable leaves in id order.
std::vector<int> traversable_leaves(const PassageGraph& graph);

/// Fills anchors, crossing costs, edges and adjacency from kernel results
/// given in the order of traversable_leaves(). Rethrows the first error.
void assemble(PassageGraph& graph, const MapModel& model, std::vector<LeafResult>& results);

void build_adjacency(PassageGraph& graph);

/// Non-leaf areas grouped by tree height, lowest level first.
std::vector<std::vector<int>> levels_bottom_up(const PassageGraph& graph);

/// Vertices with exactly one endpoint inside the subtree of `area`.
std::vector<int> boundary_vertices(const PassageGraph& graph, int area);

bool has_internal_vertical(const PassageGraph& graph, int area);

}  // namespace osmag::detail

namespace osmag::detail {

/// State of the passage-level search: standing at the anchor of `vertex` on
/// `side`, i.e. inside areas[side]. Encoded as 2 * vertex + side.
inline int state_of(int vertex, int side) { return 2 * vertex + side; }
inline int state_vertex(int state) { return state / 2; }
inline int state_side(int state) { return state % 2; }

/// Shortest costs from boundary passage `from` of `area` to every boundary
/// passage, staying inside the subtree. With `child_tables` the search hops
/// over non-leaf children; without it every leaf edge is walked and the
/// predecessors are kept.
struct SubtreeSearch {
  std::vector<Cost> exit_cost;  // by boundary index, kInfiniteCost when unreachable
  std::vector<int> exit_state;  // state the exit edge leaves from
  std::vector<int> exit_edge;
  std::vector<Cost> dist;  // by state
  std::vector<int> prev_state;
  std::vector<int> prev_edge;
};

SubtreeSearch subtree_search(const PassageGraph& graph, int area, int from, const std::vector<int>& boundary,
                             const HierarchicalCostIndex* child_tables);

}  // namespace osmag::detail
