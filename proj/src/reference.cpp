#include "osmag/reference.hpp"

#include <cmath>

#include "osmag/error.hpp"
#include "planner_internal.hpp"

namespace osmag::reference {

OccupancyRaster rasterize_area(const Area& area, double resolution, std::int64_t cell_cap) {
  if (area.polygon.empty()) throw Error(Errc::DegeneratePolygon, "area '" + area.id + "' has no valid polygon");
  const BoundingBox& box = area.polygon.bounds();
  OccupancyRaster raster;
  raster.resolution = resolution;
  raster.origin_col = static_cast<std::int64_t>(std::floor(box.min_x / resolution)) - 1;
  raster.origin_row = static_cast<std::int64_t>(std::floor(box.min_y / resolution)) - 1;
  const std::int64_t width = static_cast<std::int64_t>(std::floor(box.max_x / resolution)) + 2 - raster.origin_col;
  const std::int64_t height = static_cast<std::int64_t>(std::floor(box.max_y / resolution)) + 2 - raster.origin_row;
  if (width * height > cell_cap) throw Error(Errc::CellCapExceeded, "area '" + area.id + "' exceeds the cell cap");
  raster.width = static_cast<int>(width);
  raster.height = static_cast<int>(height);
  raster.free.assign(static_cast<std::size_t>(width * height), 0);
  for (int row = 0; row < raster.height; ++row)
    for (int col = 0; col < raster.width; ++col)
      raster.free[raster.index({col, row})] = contains_point(area.polygon, raster.center({col, row})) ? 1 : 0;
  if (raster.free_count() == 0)
    throw Error(Errc::ResolutionTooCoarse, "area '" + area.id + "' has no free cell");
  return raster;
}

PassageGraph build_passage_graph(const MapModel& model, double resolution) {
  PassageGraph graph = detail::build_skeleton(model, resolution);
  const std::vector<int> leaves = detail::traversable_leaves(graph);
  std::vector<detail::LeafResult> results(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const GraphArea& ga = graph.areas[leaves[i]];
    const Area& area = model.area(ga.id);
    auto raster = std::make_shared<OccupancyRaster>(reference::rasterize_area(area, resolution));
    std::vector<Cell> cells;
    for (int vi : ga.vertices) {
      cells.push_back(passage_anchor(*model.find_passage(graph.vertices[vi].id), area, *raster));
      results[i].anchors.emplace_back(vi, cells.back());
    }
    for (std::size_t a = 0; a < cells.size(); ++a)
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        try {
          results[i].pairs.emplace_back(ga.vertices[a], ga.vertices[b], grid_astar(*raster, cells[a], cells[b]).steps);
        } catch (const Error& e) {
          if (e.code() != Errc::Unreachable) throw;
        }
      }
    results[i].raster = std::move(raster);
  }
  detail::assemble(graph, model, results);
  return graph;
}

}  // namespace osmag::reference
