#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

#include "osmag/error.hpp"
#include "planner_internal.hpp"

namespace osmag {

namespace {

using detail::state_of;
using detail::state_side;
using detail::state_vertex;

enum class Step { none, start, edge, hop, direct, goal };

Cost apply_rule(const Rule* rule, Cost base) {
  if (!rule) return base;
  switch (rule->effect.kind) {
    case Effect::Kind::blocked:
      return kInfiniteCost;
    case Effect::Kind::multiplier:
      return scale_cost(base, rule->effect.value);
    case Effect::Kind::add_cost:
      return base + metres_to_cost(rule->effect.value);
  }
  return base;
}

// Profile applied once per query.
struct Costing {
  std::vector<const Rule*> area_rule;
  std::vector<Cost> crossing;  // kInfiniteCost when blocked
  std::vector<Cost> vertical;
  std::vector<char> table_ok;

  bool blocked(int area) const {
    return area_rule[area] && area_rule[area]->effect.kind == Effect::Kind::blocked;
  }
  Cost leg(int area, Cost base) const { return apply_rule(area_rule[area], base); }
};

Costing make_costing(const MapModel& model, const PassageGraph& graph, const CapabilityProfile& profile) {
  Costing c;
  const double vcpm = profile.vertical_cost_per_meter;
  c.area_rule.resize(graph.areas.size());
  c.table_ok.assign(graph.areas.size(), 1);
  auto mark_up = [&](int from, const std::function<bool(int)>& affects) {
    for (int a = graph.areas[from].parent; a >= 0; a = graph.areas[a].parent)
      if (affects(a)) c.table_ok[a] = 0;
  };
  for (std::size_t a = 0; a < graph.areas.size(); ++a) {
    c.area_rule[a] = profile.match(ElementKind::area, model.area(graph.areas[a].id).tags);
    if (graph.areas[a].leaf && c.area_rule[a] && !c.area_rule[a]->effect.is_identity())
      mark_up(static_cast<int>(a), [](int) { return true; });
  }
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    const PassageVertex& pv = graph.vertices[v];
    const Rule* rule = profile.match(ElementKind::passage, model.find_passage(pv.id)->tags);
    c.vertical.push_back(scale_cost(pv.crossing_vertical, vcpm));
    c.crossing.push_back(apply_rule(rule, pv.crossing_horizontal + c.vertical.back()));
    if (rule && !rule->effect.is_identity())
      mark_up(pv.areas[0], [&](int a) { return graph.in_subtree(a, pv.areas[1]); });
  }
  return c;
}

Cell local_anchor(const PassageVertex& v, int side, const OccupancyRaster& raster) {
  return {static_cast<int>(v.anchor_col[side] - raster.origin_col),
          static_cast<int>(v.anchor_row[side] - raster.origin_row)};
}

struct Traversal {
  int area;
  int entry;  // vertex, -1 for START
  int exit;   // vertex, -1 for GOAL
};

}  // namespace

Route plan_local(const MapModel& model, const PassageGraph& graph, const HierarchicalCostIndex* index,
                 LocalPoint start, double start_height, LocalPoint goal, double goal_height,
                 const CapabilityProfile& profile, const PlanOptions& options) {
  const Area* start_area = locate(model, start, start_height);
  if (!start_area) throw Error(Errc::StartNotLocated, "start is not inside any area at that height");
  const Area* goal_area = locate(model, goal, goal_height);
  if (!goal_area) throw Error(Errc::GoalNotLocated, "goal is not inside any area at that height");
  const int S = graph.area_of(start_area->id);
  const int G = graph.area_of(goal_area->id);
  if (S < 0 || !graph.areas[S].traversable)
    throw Error(Errc::StartNotLocated, "start area '" + start_area->id + "' is not searchable");
  if (G < 0 || !graph.areas[G].traversable)
    throw Error(Errc::GoalNotLocated, "goal area '" + goal_area->id + "' is not searchable");

  const Costing costing = make_costing(model, graph, profile);
  if (costing.blocked(S)) throw Error(Errc::NoPath, "start area '" + start_area->id + "' is blocked by the profile");
  if (costing.blocked(G)) throw Error(Errc::NoPath, "goal area '" + goal_area->id + "' is blocked by the profile");

  std::map<int, std::shared_ptr<const OccupancyRaster>> rasters;
  auto raster_for = [&](int a) -> const OccupancyRaster& {
    if (graph.areas[a].raster) return *graph.areas[a].raster;
    auto& slot = rasters[a];
    if (!slot) slot = std::make_shared<OccupancyRaster>(rasterize_area(model.area(graph.areas[a].id), graph.resolution));
    return *slot;
  };
  auto snap = [&](int a, LocalPoint p, Errc code) {
    const OccupancyRaster& r = raster_for(a);
    const Cell c = r.cell_at(p);
    if (r.is_free(c)) return c;
    auto near = nearest_free_cell(r, p);
    if (!near) throw Error(code, "no free cell near the point in area '" + graph.areas[a].id + "'");
    return *near;
  };
  const Cell start_cell = snap(S, start, Errc::StartNotLocated);
  const Cell goal_cell = snap(G, goal, Errc::GoalNotLocated);

  // Grid costs from the start and goal cells to the anchors of their leaves.
  auto costs_to_anchors = [&](int a, Cell from) {
    const OccupancyRaster& r = raster_for(a);
    std::vector<Cell> targets;
    for (int v : graph.areas[a].vertices) targets.push_back(local_anchor(graph.vertices[v], graph.vertices[v].side_of(a), r));
    auto steps = grid_costs_from(r, from, targets);
    std::map<int, Cost> out;
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i]) out[graph.areas[a].vertices[i]] = costing.leg(a, grid_cost(*steps[i], graph.resolution));
    return out;
  };
  const std::map<int, Cost> start_costs = costs_to_anchors(S, start_cell);
  const std::map<int, Cost> goal_costs = costs_to_anchors(G, goal_cell);

  const int V = static_cast<int>(graph.vertices.size());
  const int GOAL = 2 * V;
  std::vector<Cost> g(static_cast<std::size_t>(GOAL) + 1, kInfiniteCost);
  std::vector<int> prev(g.size(), -1);
  std::vector<Step> how(g.size(), Step::none);
  std::vector<int> aux(g.size(), -1);

  const OccupancyRaster& goal_raster = raster_for(G);
  const LocalPoint goal_center = goal_raster.center(goal_cell);
  const double hs = profile.min_multiplier();
  const double vs = profile.vertical_cost_per_meter * hs;
  const double goal_h = graph.areas[G].height;
  auto heuristic = [&](int state) -> Cost {
    if (state == GOAL) return 0;
    const PassageVertex& pv = graph.vertices[state_vertex(state)];
    const int side = state_side(state);
    const double m = hs * distance(pv.anchor_point[side], goal_center) +
                     vs * std::abs(graph.areas[pv.areas[side]].height - goal_h);
    const double scaled = std::floor(m * static_cast<double>(kCostPerMetre)) - 8.0;
    return scaled > 0 ? static_cast<Cost>(scaled) : 0;
  };

  using Item = std::tuple<Cost, Cost, int>;  // f, g, state
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  auto relax = [&](int state, Cost cost, int from, Step step, int extra) {
    if (cost >= kInfiniteCost || cost >= g[state]) return;
    g[state] = cost;
    prev[state] = from;
    how[state] = step;
    aux[state] = extra;
    open.emplace(cost + heuristic(state), cost, state);
  };

  const auto t0 = std::chrono::steady_clock::now();
  // Same leaf: one grid search, unless the leaf is split and the route must
  // leave it.
  if (S == G) {
    auto direct = grid_costs_from(raster_for(S), start_cell, {goal_cell});
    if (direct[0]) relax(GOAL, costing.leg(S, grid_cost(*direct[0], graph.resolution)), -1, Step::direct, -1);
  }
  for (const auto& [v, c] : start_costs) {
    if (g[GOAL] < kInfiniteCost) break;
    const PassageVertex& pv = graph.vertices[v];
    const int side = 1 - pv.side_of(S);
    if (costing.blocked(pv.areas[side]) || costing.crossing[v] >= kInfiniteCost) continue;
    relax(state_of(v, side), c + costing.crossing[v], -1, Step::start, -1);
  }

  const bool hierarchy = index && options.use_hierarchy;
  const bool vertical_scaled = profile.vertical_cost_per_meter != 1.0;
  std::size_t expanded = 0;
  while (!open.empty()) {
    auto [f, d, s] = open.top();
    open.pop();
    if (d != g[s]) continue;
    if (s == GOAL) break;
    ++expanded;
    const int u = state_vertex(s);
    const PassageVertex& pu = graph.vertices[u];
    const int x = pu.areas[state_side(s)];
    if (options.on_expand) options.on_expand(pu.id, graph.areas[x].id, d, heuristic(s));
    if (x == G) {
      auto it = goal_costs.find(u);
      if (it != goal_costs.end()) relax(GOAL, d + it->second, s, Step::goal, -1);
    }

    int hop = -1;
    if (hierarchy) {
      const int outside = pu.other_area(x);
      for (int a = graph.areas[x].parent; a >= 0; a = graph.areas[a].parent) {
        if (graph.in_subtree(a, S) || graph.in_subtree(a, G)) break;
        const auto& table = index->tables[a];
        if (!table || !costing.table_ok[a] || (vertical_scaled && table->has_vertical)) continue;
        if (graph.in_subtree(a, outside)) continue;
        hop = a;
      }
    }
    if (hop >= 0) {
      const AreaTable& table = *index->tables[hop];
      for (int q : table.boundary) {
        const Cost c = table.at(u, q);
        if (q == u || c >= kInfiniteCost || costing.crossing[q] >= kInfiniteCost) continue;
        const PassageVertex& pq = graph.vertices[q];
        const int side = graph.in_subtree(hop, pq.areas[0]) ? 1 : 0;
        if (costing.blocked(pq.areas[side])) continue;
        relax(state_of(q, side), d + c + costing.crossing[q], s, Step::hop, hop);
      }
      continue;
    }
    for (int e : graph.adjacency[u][state_side(s)]) {
      const GraphEdge& edge = graph.edges[e];
      const int w = edge.other(u);
      const int side = 1 - graph.vertices[w].side_of(x);
      if (costing.blocked(graph.vertices[w].areas[side]) || costing.crossing[w] >= kInfiniteCost) continue;
      relax(state_of(w, side), d + costing.leg(x, edge.base_cost) + costing.crossing[w], s, Step::edge, e);
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  if (g[GOAL] >= kInfiniteCost)
    throw Error(Errc::NoPath, "no path from '" + start_area->id + "' to '" + goal_area->id + "' under profile '" +
                                  profile.name + "'");

  // Walk back to a chain of leaf traversals, expanding table hops.
  std::vector<Traversal> chain;
  for (int s = GOAL; s >= 0; s = prev[s]) {
    const int from = prev[s];
    switch (how[s]) {
      case Step::direct:
        chain.push_back({S, -1, -1});
        break;
      case Step::goal:
        chain.push_back({G, state_vertex(from), -1});
        break;
      case Step::start:
        chain.push_back({S, -1, state_vertex(s)});
        break;
      case Step::edge: {
        const GraphEdge& edge = graph.edges[aux[s]];
        chain.push_back({edge.via_area, state_vertex(from), state_vertex(s)});
        break;
      }
      case Step::hop: {
        const int area = aux[s];
        const AreaTable& table = *index->tables[area];
        const int u = state_vertex(from);
        const int q = state_vertex(s);
        auto search = detail::subtree_search(graph, area, u, table.boundary, nullptr);
        const int b = table.row_of(q);
        if (search.exit_cost[b] != table.at(u, q))
          throw std::logic_error("hierarchy table for '" + graph.areas[area].id + "' disagrees with a leaf search");
        int t = search.exit_state[b];
        int e = search.exit_edge[b];
        int to = q;
        while (true) {
          chain.push_back({graph.edges[e].via_area, state_vertex(t), to});
          if (search.prev_state[t] < 0) break;
          to = state_vertex(t);
          e = search.prev_edge[t];
          t = search.prev_state[t];
        }
        break;
      }
      case Step::none:
        throw std::logic_error("broken predecessor chain");
    }
  }
  std::reverse(chain.begin(), chain.end());

  Route route;
  route.expanded = expanded;
  route.search_microseconds = std::chrono::duration<double, std::micro>(t1 - t0).count();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Traversal& t = chain[i];
    const OccupancyRaster& r = raster_for(t.area);
    const Cell from = t.entry < 0 ? start_cell : local_anchor(graph.vertices[t.entry], graph.vertices[t.entry].side_of(t.area), r);
    const Cell to = t.exit < 0 ? goal_cell : local_anchor(graph.vertices[t.exit], graph.vertices[t.exit].side_of(t.area), r);
    const GridPath path = grid_astar(r, from, to);
    RouteLeg leg;
    leg.area = graph.areas[t.area].id;
    leg.entry = t.entry < 0 ? "START" : graph.vertices[t.entry].id;
    leg.exit = t.exit < 0 ? "GOAL" : graph.vertices[t.exit].id;
    leg.height = graph.areas[t.area].height;
    if (t.entry < 0) leg.polyline.push_back(start);
    for (const Cell& c : path.cells) leg.polyline.push_back(r.center(c));
    if (t.exit < 0) leg.polyline.push_back(goal);
    leg.cost = costing.leg(t.area, grid_cost(path.steps, graph.resolution));
    route.total += leg.cost;
    if (t.exit >= 0) {
      route.passages_crossed.push_back(graph.vertices[t.exit].id);
      route.crossing_cost += costing.crossing[t.exit];
      route.vertical_cost += costing.vertical[t.exit];
    }
    route.legs.push_back(std::move(leg));
  }
  route.total += route.crossing_cost;
  if (route.total != g[GOAL]) throw std::logic_error("rebuilt route cost differs from the search cost");
  route.total_cost = to_metres(route.total);
  return route;
}

Route plan(const MapModel& model, const PassageGraph& graph, const HierarchicalCostIndex* index,
           const Waypoint& start, const Waypoint& goal, const CapabilityProfile& profile, const PlanOptions& options) {
  if (!model.root) throw Error(Errc::MissingRootAnchor, "map has no root anchor");
  return plan_local(model, graph, index, to_local(start.lat, start.lon, *model.root), start.height,
                    to_local(goal.lat, goal.lon, *model.root), goal.height, profile, options);
}

}  // namespace osmag
