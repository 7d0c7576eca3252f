#pragma once

#include "osmag/planner.hpp"
#include "osmag/raster.hpp"

// Serial implementations of the parallel kernels. Slow and simple; kept so
// tests and benchmarks can check the fast paths against them.
namespace osmag::reference {

/// Tests every cell centre with contains_point.
OccupancyRaster rasterize_area(const Area& area, double resolution, std::int64_t cell_cap = kDefaultCellCap);

/// One leaf at a time, one grid A* per passage pair.
PassageGraph build_passage_graph(const MapModel& model, double resolution = kDefaultResolution);

/// Every table from a flat leaf-level search restricted to the subtree.
HierarchicalCostIndex precompute_hierarchy(const MapModel& model, const PassageGraph& graph);

}  // namespace osmag::reference
