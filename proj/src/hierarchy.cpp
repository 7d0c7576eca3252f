#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <queue>

#include "osmag/reference.hpp"
#include "planner_internal.hpp"

namespace osmag {

int AreaTable::row_of(int vertex) const {
  auto it = std::lower_bound(boundary.begin(), boundary.end(), vertex);
  if (it == boundary.end() || *it != vertex) return -1;
  return static_cast<int>(it - boundary.begin());
}

Cost AreaTable::at(int from_vertex, int to_vertex) const {
  const int i = row_of(from_vertex);
  const int j = row_of(to_vertex);
  if (i < 0 || j < 0) return kInfiniteCost;
  return cost[static_cast<std::size_t>(i) * boundary.size() + static_cast<std::size_t>(j)];
}

namespace detail {

namespace {

int child_toward(const PassageGraph& graph, int ancestor, int area) {
  while (graph.areas[area].parent != ancestor) area = graph.areas[area].parent;
  return area;
}

}  // namespace

SubtreeSearch subtree_search(const PassageGraph& graph, int area, int from, const std::vector<int>& boundary,
                             const HierarchicalCostIndex* child_tables) {
  const std::size_t states = 2 * graph.vertices.size();
  SubtreeSearch out;
  out.exit_cost.assign(boundary.size(), kInfiniteCost);
  out.exit_state.assign(boundary.size(), -1);
  out.exit_edge.assign(boundary.size(), -1);
  out.dist.assign(states, kInfiniteCost);
  out.prev_state.assign(states, -1);
  out.prev_edge.assign(states, -1);

  auto boundary_index = [&](int v) {
    auto it = std::lower_bound(boundary.begin(), boundary.end(), v);
    return (it != boundary.end() && *it == v) ? static_cast<int>(it - boundary.begin()) : -1;
  };

  const PassageVertex& start = graph.vertices[from];
  const int start_side = graph.in_subtree(area, start.areas[0]) ? 0 : 1;
  using Item = std::pair<Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const int s0 = state_of(from, start_side);
  out.dist[s0] = 0;
  open.emplace(0, s0);

  auto reach = [&](int w, int side, Cost cost, int from_state, int edge) {
    const int s = state_of(w, side);
    if (cost < out.dist[s]) {
      out.dist[s] = cost;
      out.prev_state[s] = from_state;
      out.prev_edge[s] = edge;
      open.emplace(cost, s);
    }
  };
  auto arrive = [&](int w, int via, Cost cost, int from_state, int edge) {
    const int b = boundary_index(w);
    if (b >= 0) {
      if (cost < out.exit_cost[b]) {
        out.exit_cost[b] = cost;
        out.exit_state[b] = from_state;
        out.exit_edge[b] = edge;
      }
      return;
    }
    const PassageVertex& pv = graph.vertices[w];
    reach(w, 1 - pv.side_of(via), cost + graph.base_crossing(w), from_state, edge);
  };

  while (!open.empty()) {
    auto [d, s] = open.top();
    open.pop();
    if (d != out.dist[s]) continue;
    const int u = state_vertex(s);
    const int x = graph.vertices[u].areas[state_side(s)];
    const int child = child_tables ? child_toward(graph, area, x) : x;
    if (child == x) {
      for (int e : graph.adjacency[u][state_side(s)]) {
        const GraphEdge& edge = graph.edges[e];
        arrive(edge.other(u), x, d + edge.base_cost, s, e);
      }
      continue;
    }
    const AreaTable& table = *child_tables->tables[child];
    const int row = table.row_of(u);
    for (std::size_t j = 0; j < table.boundary.size(); ++j) {
      const int q = table.boundary[j];
      const Cost c = table.cost[static_cast<std::size_t>(row) * table.boundary.size() + j];
      if (q == u || c >= kInfiniteCost) continue;
      const PassageVertex& pq = graph.vertices[q];
      const int inner = graph.in_subtree(child, pq.areas[0]) ? pq.areas[0] : pq.areas[1];
      arrive(q, inner, d + c, s, -1);
    }
  }
  return out;
}

}  // namespace detail

namespace {

AreaTable make_table(const PassageGraph& graph, int area, const HierarchicalCostIndex* child_tables) {
  AreaTable table;
  table.area = area;
  table.boundary = detail::boundary_vertices(graph, area);
  table.has_vertical = detail::has_internal_vertical(graph, area);
  const std::size_t n = table.boundary.size();
  table.cost.assign(n * n, kInfiniteCost);
  for (std::size_t i = 0; i < n; ++i) {
    auto search = detail::subtree_search(graph, area, table.boundary[i], table.boundary, child_tables);
    for (std::size_t j = 0; j < n; ++j) table.cost[i * n + j] = i == j ? 0 : search.exit_cost[j];
  }
  return table;
}

}  // namespace

HierarchicalCostIndex precompute_hierarchy(const MapModel& model, const PassageGraph& graph) {
  (void)model;
  HierarchicalCostIndex index;
  index.tables.resize(graph.areas.size());
  for (const auto& level : detail::levels_bottom_up(graph)) {
    std::vector<std::exception_ptr> errors(level.size());
    const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      try {
        index.tables[static_cast<std::size_t>(level[k])] = make_table(graph, level[k], &index);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return index;
}

namespace reference {

// Declared in osmag/reference.hpp.

HierarchicalCostIndex precompute_hierarchy(const MapModel& model, const PassageGraph& graph) {
  (void)model;
  HierarchicalCostIndex index;
  index.tables.resize(graph.areas.size());
  for (std::size_t a = 0; a < graph.areas.size(); ++a)
    if (!graph.areas[a].leaf) index.tables[a] = make_table(graph, static_cast<int>(a), nullptr);
  return index;
}

}  // namespace reference

}  // namespace osmag
