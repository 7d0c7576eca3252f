#include <algorithm>
#include <cmath>
#include <functional>

#include "osmag/error.hpp"
#include "planner_internal.hpp"

namespace osmag {

Cost metres_to_cost(double metres) { return std::llround(metres * static_cast<double>(kCostPerMetre)); }

Cost grid_cost(StepCount steps, double resolution) {
  const Cost cell = metres_to_cost(resolution);
  const double diagonal = static_cast<double>(steps.diagonal) * static_cast<double>(cell) * std::numbers::sqrt2;
  return steps.axis * cell + static_cast<Cost>(std::ceil(diagonal));
}

Cost scale_cost(Cost c, double factor) {
  if (factor == 1.0) return c;
  return static_cast<Cost>(std::ceil(factor * static_cast<double>(c)));
}

int PassageGraph::area_of(std::string_view id) const {
  auto it = area_index.find(std::string(id));
  return it == area_index.end() ? -1 : it->second;
}

int PassageGraph::vertex_of(std::string_view id) const {
  auto it = vertex_index.find(std::string(id));
  return it == vertex_index.end() ? -1 : it->second;
}

namespace detail {

PassageGraph build_skeleton(const MapModel& model, double resolution) {
  PassageGraph g;
  g.resolution = resolution;
  for (const auto& [id, area] : model.areas) {
    g.area_index[id] = static_cast<int>(g.areas.size());
    GraphArea ga;
    ga.id = id;
    ga.height = area.height;
    g.areas.push_back(std::move(ga));
  }
  for (const auto& [id, children] : model.children_index) {
    const int p = g.area_of(id);
    for (const auto& c : children) {
      const int ci = g.area_of(c);
      g.areas[ci].parent = p;
      g.areas[p].children.push_back(ci);
    }
  }
  for (auto& ga : g.areas) {
    const Area& area = model.area(ga.id);
    ga.leaf = ga.children.empty();
    ga.traversable = ga.leaf && area.type == AreaType::inner && !area.polygon.empty();
    std::sort(ga.children.begin(), ga.children.end());
  }

  // Euler tour and tree heights.
  int clock = 0;
  std::vector<char> visited(g.areas.size(), 0);
  std::function<int(int)> visit = [&](int a) -> int {
    visited[a] = 1;
    g.areas[a].tin = clock++;
    int h = 0;
    for (int c : g.areas[a].children)
      if (!visited[c]) h = std::max(h, visit(c) + 1);
    g.areas[a].tout = clock;
    g.areas[a].tree_height = h;
    return h;
  };
  for (const auto& root : model.tree_roots) visit(g.area_of(root));
  for (std::size_t a = 0; a < g.areas.size(); ++a)
    if (!visited[a]) {  // cyclic parent links; keep them isolated
      g.areas[a].tin = clock++;
      g.areas[a].tout = clock;
    }

  for (const auto& [id, p] : model.passages) {
    const int a = g.area_of(p.from_area);
    const int b = g.area_of(p.to_area);
    if (a < 0 || b < 0 || a == b || !g.areas[a].traversable || !g.areas[b].traversable) continue;
    PassageVertex v;
    v.id = id;
    v.areas = {a, b};
    v.vertical = p.vertical;
    const int vi = static_cast<int>(g.vertices.size());
    g.vertex_index[id] = vi;
    g.vertices.push_back(std::move(v));
    g.areas[a].vertices.push_back(vi);
    g.areas[b].vertices.push_back(vi);
  }
  return g;
}

std::vector<int> traversable_leaves(const PassageGraph& graph) {
  std::vector<int> out;
  for (std::size_t a = 0; a < graph.areas.size(); ++a)
    if (graph.areas[a].traversable) out.push_back(static_cast<int>(a));
  return out;
}

void build_adjacency(PassageGraph& graph) {
  graph.adjacency.assign(graph.vertices.size(), {});
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const GraphEdge& edge = graph.edges[e];
    for (int w : {edge.u, edge.v})
      graph.adjacency[w][graph.vertices[w].side_of(edge.via_area)].push_back(static_cast<int>(e));
  }
}

void assemble(PassageGraph& graph, const MapModel& model, std::vector<LeafResult>& results) {
  const std::vector<int> leaves = traversable_leaves(graph);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    if (results[i].error) std::rethrow_exception(results[i].error);

  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const int a = leaves[i];
    const LeafResult& r = results[i];
    graph.areas[a].raster = r.raster;
    for (const auto& [vi, cell] : r.anchors) {
      PassageVertex& v = graph.vertices[vi];
      const int side = v.side_of(a);
      auto [gc, gr] = r.raster->global(cell);
      v.anchor_col[side] = gc;
      v.anchor_row[side] = gr;
      v.anchor_point[side] = r.raster->center(cell);
    }
    for (const auto& [u, w, steps] : r.pairs)
      graph.edges.push_back({u, w, a, grid_cost(steps, graph.resolution)});
  }
  for (auto& v : graph.vertices) {
    const Cell a{static_cast<int>(v.anchor_col[0]), static_cast<int>(v.anchor_row[0])};
    const Cell b{static_cast<int>(v.anchor_col[1]), static_cast<int>(v.anchor_row[1])};
    v.crossing_horizontal = grid_cost(octile_steps(a, b), graph.resolution);
    v.crossing_vertical = metres_to_cost(std::abs(graph.areas[v.areas[0]].height - graph.areas[v.areas[1]].height));
  }
  (void)model;
  build_adjacency(graph);
}

std::vector<std::vector<int>> levels_bottom_up(const PassageGraph& graph) {
  std::vector<std::vector<int>> levels;
  for (std::size_t a = 0; a < graph.areas.size(); ++a) {
    const int h = graph.areas[a].tree_height;
    if (graph.areas[a].leaf) continue;
    if (static_cast<int>(levels.size()) < h) levels.resize(static_cast<std::size_t>(h));
    levels[static_cast<std::size_t>(h - 1)].push_back(static_cast<int>(a));
  }
  return levels;
}

std::vector<int> boundary_vertices(const PassageGraph& graph, int area) {
  std::vector<int> out;
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    const auto& pv = graph.vertices[v];
    const bool in0 = graph.in_subtree(area, pv.areas[0]);
    const bool in1 = graph.in_subtree(area, pv.areas[1]);
    if (in0 != in1) out.push_back(static_cast<int>(v));
  }
  return out;
}

bool has_internal_vertical(const PassageGraph& graph, int area) {
  for (const auto& pv : graph.vertices)
    if (pv.crossing_vertical > 0 && graph.in_subtree(area, pv.areas[0]) && graph.in_subtree(area, pv.areas[1]))
      return true;
  return false;
}

}  // namespace detail

namespace {

detail::LeafResult leaf_kernel(const MapModel& model, const PassageGraph& graph, int area_index) {
  detail::LeafResult r;
  const GraphArea& ga = graph.areas[area_index];
  const Area& area = model.area(ga.id);
  auto raster = std::make_shared<OccupancyRaster>(rasterize_area(area, graph.resolution));
  std::vector<Cell> cells;
  for (int vi : ga.vertices) {
    Cell c = passage_anchor(*model.find_passage(graph.vertices[vi].id), area, *raster);
    r.anchors.emplace_back(vi, c);
    cells.push_back(c);
  }
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    std::vector<Cell> targets(cells.begin() + static_cast<std::ptrdiff_t>(i) + 1, cells.end());
    auto costs = grid_costs_from(*raster, cells[i], targets);
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (costs[j]) r.pairs.emplace_back(ga.vertices[i], ga.vertices[i + 1 + j], *costs[j]);
  }
  r.raster = std::move(raster);
  return r;
}

}  // namespace

PassageGraph build_passage_graph(const MapModel& model, double resolution) {
  PassageGraph graph = detail::build_skeleton(model, resolution);
  const std::vector<int> leaves = detail::traversable_leaves(graph);
  std::vector<detail::LeafResult> results(leaves.size());
  const auto count = static_cast<std::int64_t>(leaves.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = leaf_kernel(model, graph, leaves[static_cast<std::size_t>(i)]);
    } catch (...) {
      results[static_cast<std::size_t>(i)].error = std::current_exception();
    }
  }
  detail::assemble(graph, model, results);
  return graph;
}

}  // namespace osmag
