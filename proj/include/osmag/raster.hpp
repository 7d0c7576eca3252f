#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "osmag/geo.hpp"
#include "osmag/model.hpp"

namespace osmag {

inline constexpr double kDefaultResolution = 0.1;             // m per cell
inline constexpr std::int64_t kDefaultCellCap = 4'000'000;   // cells per area raster
inline constexpr int kAnchorSearchRadius = 10;                // cells

struct Cell {
  int col = 0;
  int row = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Grid cost as a count of axis and diagonal steps. Two optimal paths always
/// have identical counts (sqrt 2 is irrational), so costs compare exactly.
struct StepCount {
  std::int64_t axis = 0;
  std::int64_t diagonal = 0;

  double units() const { return static_cast<double>(axis) + static_cast<double>(diagonal) * std::numbers::sqrt2; }
  double metres(double resolution) const { return resolution * units(); }

  friend bool operator==(const StepCount&, const StepCount&) = default;
};

StepCount octile_steps(Cell a, Cell b);

/// Occupancy grid aligned to the global lattice of the local frame: cell
/// (c, r) covers [(x0+c)*res, (x0+c+1)*res) x [(y0+r)*res, (y0+r+1)*res) with
/// x0 = origin_col, y0 = origin_row. Rasters of different areas at the same
/// resolution therefore share cell boundaries.
struct OccupancyRaster {
  std::int64_t origin_col = 0;
  std::int64_t origin_row = 0;
  double resolution = kDefaultResolution;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> free;  // row-major, 1 = free

  bool in_bounds(Cell c) const { return c.col >= 0 && c.row >= 0 && c.col < width && c.row < height; }
  bool is_free(Cell c) const { return in_bounds(c) && free[index(c)] != 0; }
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * width + c.col; }
  LocalPoint origin() const { return {origin_col * resolution, origin_row * resolution}; }
  LocalPoint center(Cell c) const {
    return {(static_cast<double>(origin_col + c.col) + 0.5) * resolution,
            (static_cast<double>(origin_row + c.row) + 0.5) * resolution};
  }
  /// Cell whose square contains the point (may be out of bounds).
  Cell cell_at(LocalPoint p) const;
  /// Position of a local cell on the global lattice.
  std::pair<std::int64_t, std::int64_t> global(Cell c) const { return {origin_col + c.col, origin_row + c.row}; }
  std::size_t free_count() const;
};

/// Cells whose centres lie inside the polygon (boundary inclusive) are free.
/// Rows are classified in parallel with an exact scanline; cells near an
/// edge fall back to contains_point so the result matches a per-cell test.
/// Throws ResolutionTooCoarse (no free cell) and CellCapExceeded.
OccupancyRaster rasterize_polygon(const Polygon2D& polygon, double resolution,
                                  std::int64_t cell_cap = kDefaultCellCap);
OccupancyRaster rasterize_area(const Area& area, double resolution, std::int64_t cell_cap = kDefaultCellCap);

struct GridPath {
  std::vector<Cell> cells;
  StepCount steps;
  double cost = 0.0;  // metres
};

/// 8-connected A* with octile costs and the octile heuristic. A diagonal
/// step is allowed only when both orthogonal neighbours are free. Throws
/// Unreachable.
GridPath grid_astar(const OccupancyRaster& raster, Cell start, Cell goal);

/// One-to-many Dijkstra from `source`; entry i is nullopt when targets[i]
/// is unreachable. Stops once every target is settled.
std::vector<std::optional<StepCount>> grid_costs_from(const OccupancyRaster& raster, Cell source,
                                                      const std::vector<Cell>& targets);

/// Free cell nearest (Euclidean, ties by row-major order) to `p`, searching
/// up to `radius` cells around the cell containing `p`.
std::optional<Cell> nearest_free_cell(const OccupancyRaster& raster, LocalPoint p, int radius = kAnchorSearchRadius);

/// Anchor of a passage inside one of its areas: nearest free cell to the
/// polyline midpoint. Throws NoFreeCellNearPassage.
Cell passage_anchor(const Passage& passage, const Area& area, const OccupancyRaster& raster);

using PassagePair = std::pair<std::string, std::string>;  // ordered (smaller id first)

/// Grid cost between the anchors of every pair of passages touching a leaf
/// area. Missing entries mean the pair is disconnected inside the area.
std::map<PassagePair, double> area_pair_costs(const Area& area, const MapModel& model, double resolution);

/// Binary PGM (P5): 0 = occupied, 255 = free, top row = northmost.
std::string to_pgm(const OccupancyRaster& raster);

}  // namespace osmag
