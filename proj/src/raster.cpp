#include "osmag/raster.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "geo_detail.hpp"
#include "osmag/error.hpp"

namespace osmag {

StepCount octile_steps(Cell a, Cell b) {
  const std::int64_t dx = std::abs(a.col - b.col);
  const std::int64_t dy = std::abs(a.row - b.row);
  return {std::max(dx, dy) - std::min(dx, dy), std::min(dx, dy)};
}

Cell OccupancyRaster::cell_at(LocalPoint p) const {
  const auto gc = static_cast<std::int64_t>(std::floor(p.x / resolution));
  const auto gr = static_cast<std::int64_t>(std::floor(p.y / resolution));
  return {static_cast<int>(gc - origin_col), static_cast<int>(gr - origin_row)};
}

std::size_t OccupancyRaster::free_count() const {
  return static_cast<std::size_t>(std::count(free.begin(), free.end(), std::uint8_t{1}));
}

OccupancyRaster rasterize_polygon(const Polygon2D& polygon, double resolution, std::int64_t cell_cap) {
  if (polygon.empty()) throw Error(Errc::DegeneratePolygon, "cannot rasterize an empty polygon");
  const BoundingBox& box = polygon.bounds();
  OccupancyRaster raster;
  raster.resolution = resolution;
  raster.origin_col = static_cast<std::int64_t>(std::floor(box.min_x / resolution)) - 1;
  raster.origin_row = static_cast<std::int64_t>(std::floor(box.min_y / resolution)) - 1;
  const std::int64_t last_col = static_cast<std::int64_t>(std::floor(box.max_x / resolution)) + 1;
  const std::int64_t last_row = static_cast<std::int64_t>(std::floor(box.max_y / resolution)) + 1;
  const std::int64_t width = last_col - raster.origin_col + 1;
  const std::int64_t height = last_row - raster.origin_row + 1;
  if (width * height > cell_cap)
    throw Error(Errc::CellCapExceeded, std::to_string(width) + "x" + std::to_string(height) +
                                           " cells exceed the cap of " + std::to_string(cell_cap));
  raster.width = static_cast<int>(width);
  raster.height = static_cast<int>(height);
  raster.free.assign(static_cast<std::size_t>(width * height), 0);

  const auto verts = polygon.vertices();
  const std::size_t n = verts.size();
  constexpr double eps = detail::kBoundaryEps;

#pragma omp parallel
  {
    std::vector<double> crossings;
    std::vector<std::uint8_t> near_edge(static_cast<std::size_t>(width));
#pragma omp for schedule(static)
    for (int row = 0; row < raster.height; ++row) {
      const double py = (static_cast<double>(raster.origin_row + row) + 0.5) * resolution;
      const double x0 = static_cast<double>(raster.origin_col) * resolution;
      crossings.clear();
      std::fill(near_edge.begin(), near_edge.end(), std::uint8_t{0});
      for (std::size_t i = 0; i < n; ++i) {
        const LocalPoint& a = verts[i];
        const LocalPoint& b = verts[(i + 1) % n];
        if (detail::straddles(a, b, py)) crossings.push_back(detail::crossing_x(a, b, py));
        // Cells whose centres may lie within eps of this edge get the exact test.
        const double lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
        if (py < lo_y - eps || py > hi_y + eps) continue;
        double lo_x, hi_x;
        const double dy = b.y - a.y;
        if (std::abs(dy) < 1e-12) {
          lo_x = std::min(a.x, b.x);
          hi_x = std::max(a.x, b.x);
        } else {
          double t0 = std::clamp((py - resolution - a.y) / dy, 0.0, 1.0);
          double t1 = std::clamp((py + resolution - a.y) / dy, 0.0, 1.0);
          double xa = a.x + t0 * (b.x - a.x), xb = a.x + t1 * (b.x - a.x);
          lo_x = std::min(xa, xb);
          hi_x = std::max(xa, xb);
        }
        auto c0 = static_cast<std::int64_t>(std::floor((lo_x - resolution - x0) / resolution));
        auto c1 = static_cast<std::int64_t>(std::floor((hi_x + resolution - x0) / resolution)) + 1;
        c0 = std::clamp<std::int64_t>(c0, 0, width - 1);
        c1 = std::clamp<std::int64_t>(c1, 0, width - 1);
        for (auto c = c0; c <= c1; ++c) near_edge[static_cast<std::size_t>(c)] = 1;
      }
      std::sort(crossings.begin(), crossings.end());
      std::size_t passed = 0;  // crossings with x <= px
      for (int col = 0; col < raster.width; ++col) {
        const double px = (static_cast<double>(raster.origin_col + col) + 0.5) * resolution;
        while (passed < crossings.size() && !(px < crossings[passed])) ++passed;
        bool inside;
        if (near_edge[static_cast<std::size_t>(col)])
          inside = contains_point(polygon, {px, py});
        else
          inside = ((crossings.size() - passed) % 2) == 1;
        raster.free[static_cast<std::size_t>(row) * raster.width + col] = inside ? 1 : 0;
      }
    }
  }

  if (raster.free_count() == 0)
    throw Error(Errc::ResolutionTooCoarse, "no cell centre lies inside the polygon at resolution " +
                                               std::to_string(resolution));
  return raster;
}

OccupancyRaster rasterize_area(const Area& area, double resolution, std::int64_t cell_cap) {
  if (area.polygon.empty()) throw Error(Errc::DegeneratePolygon, "area '" + area.id + "' has no valid polygon");
  try {
    return rasterize_polygon(area.polygon, resolution, cell_cap);
  } catch (const Error& e) {
    throw Error(e.code(), "area '" + area.id + "': " + e.what());
  }
}

namespace {

struct Neighbour {
  int dc, dr;
  bool diagonal;
};
constexpr Neighbour kNeighbours[8] = {{1, 0, false},  {-1, 0, false}, {0, 1, false}, {0, -1, false},
                                      {1, 1, true},   {-1, 1, true},  {1, -1, true}, {-1, -1, true}};

// Shared best-first search. Heuristic in step units; Stop(index) returns true
// to end the search once that cell is settled.
template <class Heuristic, class Stop>
void best_first(const OccupancyRaster& raster, Cell start, Heuristic&& heuristic, Stop&& stop,
                std::vector<StepCount>& g, std::vector<std::int32_t>& parent) {
  const std::size_t total = raster.free.size();
  constexpr std::int64_t kUnseen = std::numeric_limits<std::int64_t>::max();
  g.assign(total, StepCount{kUnseen, 0});
  parent.assign(total, -1);
  std::vector<std::uint8_t> closed(total, 0);
  using Entry = std::tuple<double, double, std::size_t>;  // f, g, index
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t s = raster.index(start);
  g[s] = {0, 0};
  open.emplace(heuristic(start), 0.0, s);
  while (!open.empty()) {
    auto [f, gu, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (stop(idx)) return;
    const Cell c{static_cast<int>(idx % raster.width), static_cast<int>(idx / raster.width)};
    for (const auto& nb : kNeighbours) {
      const Cell d{c.col + nb.dc, c.row + nb.dr};
      if (!raster.is_free(d)) continue;
      if (nb.diagonal && (!raster.is_free({c.col + nb.dc, c.row}) || !raster.is_free({c.col, c.row + nb.dr})))
        continue;
      const std::size_t di = raster.index(d);
      if (closed[di]) continue;
      StepCount cand = g[idx];
      (nb.diagonal ? cand.diagonal : cand.axis) += 1;
      if (g[di].axis != kUnseen && !(cand.units() < g[di].units())) continue;
      g[di] = cand;
      parent[di] = static_cast<std::int32_t>(idx);
      open.emplace(cand.units() + heuristic(d), cand.units(), di);
    }
  }
}

}  // namespace

GridPath grid_astar(const OccupancyRaster& raster, Cell start, Cell goal) {
  if (!raster.is_free(start) || !raster.is_free(goal))
    throw Error(Errc::Unreachable, "start or goal cell is not free");
  std::vector<StepCount> g;
  std::vector<std::int32_t> parent;
  const std::size_t target = raster.index(goal);
  bool reached = false;
  best_first(
      raster, start, [&](Cell c) { return octile_steps(c, goal).units(); },
      [&](std::size_t idx) { return reached = (idx == target); }, g, parent);
  if (!reached) throw Error(Errc::Unreachable, "goal cell is not connected to the start cell");
  GridPath path;
  path.steps = g[target];
  path.cost = path.steps.metres(raster.resolution);
  for (std::int64_t at = static_cast<std::int64_t>(target); at >= 0; at = parent[static_cast<std::size_t>(at)])
    path.cells.push_back({static_cast<int>(at % raster.width), static_cast<int>(at / raster.width)});
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

std::vector<std::optional<StepCount>> grid_costs_from(const OccupancyRaster& raster, Cell source,
                                                      const std::vector<Cell>& targets) {
  std::vector<std::optional<StepCount>> out(targets.size());
  if (!raster.is_free(source)) return out;
  std::vector<std::uint8_t> wanted(raster.free.size(), 0);
  std::size_t remaining = 0;
  for (const auto& t : targets) {
    if (!raster.is_free(t)) continue;
    auto& w = wanted[raster.index(t)];
    if (!w) ++remaining;
    w = 1;
  }
  std::vector<StepCount> g;
  std::vector<std::int32_t> parent;
  if (remaining > 0)
    best_first(
        raster, source, [](Cell) { return 0.0; },
        [&](std::size_t idx) { return wanted[idx] && --remaining == 0; }, g, parent);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!raster.is_free(targets[i])) continue;
    const StepCount& s = g[raster.index(targets[i])];
    if (s.axis != std::numeric_limits<std::int64_t>::max()) out[i] = s;
  }
  return out;
}

std::optional<Cell> nearest_free_cell(const OccupancyRaster& raster, LocalPoint p, int radius) {
  const Cell base = raster.cell_at(p);
  // Distances in cell units; near-equal ones count as ties so that a door on
  // a lattice line anchors the same way regardless of rounding.
  constexpr double tie = 1e-9;
  const double px = p.x / raster.resolution - static_cast<double>(raster.origin_col);
  const double py = p.y / raster.resolution - static_cast<double>(raster.origin_row);
  std::optional<Cell> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int row = base.row - radius; row <= base.row + radius; ++row) {
    for (int col = base.col - radius; col <= base.col + radius; ++col) {
      const Cell c{col, row};
      if (!raster.is_free(c)) continue;
      const double dx = col + 0.5 - px;
      const double dy = row + 0.5 - py;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2 - tie) {
        best_d2 = d2;
        best = c;
      }
    }
  }
  return best;
}

Cell passage_anchor(const Passage& passage, const Area& area, const OccupancyRaster& raster) {
  const LocalPoint mid = polyline_midpoint(passage.points);
  auto cell = nearest_free_cell(raster, mid);
  if (!cell)
    throw Error(Errc::NoFreeCellNearPassage, "passage '" + passage.id + "' has no free cell of area '" + area.id +
                                                 "' within " + std::to_string(kAnchorSearchRadius) + " cells");
  return *cell;
}

std::map<PassagePair, double> area_pair_costs(const Area& area, const MapModel& model, double resolution) {
  std::map<PassagePair, double> out;
  auto it = model.area_passages_index.find(area.id);
  if (it == model.area_passages_index.end() || it->second.size() < 2) return out;
  const OccupancyRaster raster = rasterize_area(area, resolution);
  std::vector<std::string> ids = it->second;
  std::sort(ids.begin(), ids.end());
  std::vector<Cell> anchors;
  for (const auto& id : ids) anchors.push_back(passage_anchor(*model.find_passage(id), area, raster));
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    std::vector<Cell> targets(anchors.begin() + static_cast<std::ptrdiff_t>(i) + 1, anchors.end());
    auto costs = grid_costs_from(raster, anchors[i], targets);
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (costs[j]) out[{ids[i], ids[i + 1 + j]}] = costs[j]->metres(resolution);
  }
  return out;
}

std::string to_pgm(const OccupancyRaster& raster) {
  std::string out = "P5\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  for (int row = raster.height - 1; row >= 0; --row)
    for (int col = 0; col < raster.width; ++col) out.push_back(raster.is_free({col, row}) ? '\xff' : '\0');
  return out;
}

}  // namespace osmag
