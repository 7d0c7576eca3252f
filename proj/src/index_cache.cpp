#include <cstdio>

#include "json.hpp"
#include "osmag/error.hpp"
#include "planner_internal.hpp"

namespace osmag {

using nlohmann::json;

std::string map_content_hash(const MapModel& model) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(model)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string serialize_cache(const MapModel& model, const PassageGraph& graph, const HierarchicalCostIndex& index) {
  json doc;
  doc["version"] = kCacheVersion;
  doc["hash"] = map_content_hash(model);
  doc["resolution"] = graph.resolution;
  json vertices = json::array();
  for (const auto& v : graph.vertices)
    vertices.push_back({{"id", v.id},
                        {"col", {v.anchor_col[0], v.anchor_col[1]}},
                        {"row", {v.anchor_row[0], v.anchor_row[1]}},
                        {"horizontal", v.crossing_horizontal},
                        {"vertical", v.crossing_vertical}});
  doc["vertices"] = std::move(vertices);
  json edges = json::array();
  for (const auto& e : graph.edges) edges.push_back({e.u, e.v, e.via_area, e.base_cost});
  doc["edges"] = std::move(edges);
  json tables = json::array();
  for (const auto& t : index.tables) {
    if (!t) continue;
    json cost = json::array();
    for (Cost c : t->cost) cost.push_back(c >= kInfiniteCost ? Cost{-1} : c);
    tables.push_back({{"area", graph.areas[t->area].id},
                      {"boundary", t->boundary},
                      {"has_vertical", t->has_vertical},
                      {"cost", std::move(cost)}});
  }
  doc["tables"] = std::move(tables);
  return doc.dump();
}

std::optional<LoadedIndex> load_cache(const MapModel& model, std::string_view cache_text, double resolution) {
  json doc;
  try {
    doc = json::parse(cache_text);
  } catch (const json::exception& e) {
    throw Error(Errc::BadCache, e.what());
  }
  try {
    if (doc.at("version").get<int>() != kCacheVersion) return std::nullopt;
    if (doc.at("hash").get<std::string>() != map_content_hash(model)) return std::nullopt;
    if (doc.at("resolution").get<double>() != resolution) return std::nullopt;

    LoadedIndex out;
    PassageGraph& graph = out.graph;
    graph = detail::build_skeleton(model, resolution);
    const json& vertices = doc.at("vertices");
    if (vertices.size() != graph.vertices.size()) throw Error(Errc::BadCache, "vertex count does not match the map");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const json& jv = vertices[i];
      PassageVertex& v = graph.vertices[i];
      if (jv.at("id").get<std::string>() != v.id) throw Error(Errc::BadCache, "vertex '" + v.id + "' is out of order");
      for (int s = 0; s < 2; ++s) {
        v.anchor_col[s] = jv.at("col").at(s).get<std::int64_t>();
        v.anchor_row[s] = jv.at("row").at(s).get<std::int64_t>();
        v.anchor_point[s] = {(static_cast<double>(v.anchor_col[s]) + 0.5) * resolution,
                             (static_cast<double>(v.anchor_row[s]) + 0.5) * resolution};
      }
      v.crossing_horizontal = jv.at("horizontal").get<Cost>();
      v.crossing_vertical = jv.at("vertical").get<Cost>();
    }
    const auto n_vertices = static_cast<int>(graph.vertices.size());
    const auto n_areas = static_cast<int>(graph.areas.size());
    for (const json& je : doc.at("edges")) {
      GraphEdge e{je.at(0).get<int>(), je.at(1).get<int>(), je.at(2).get<int>(), je.at(3).get<Cost>()};
      if (e.u < 0 || e.v < 0 || e.u >= n_vertices || e.v >= n_vertices || e.via_area < 0 || e.via_area >= n_areas)
        throw Error(Errc::BadCache, "edge refers to an unknown vertex or area");
      const auto& areas_u = graph.vertices[e.u].areas;
      const auto& areas_v = graph.vertices[e.v].areas;
      if ((areas_u[0] != e.via_area && areas_u[1] != e.via_area) ||
          (areas_v[0] != e.via_area && areas_v[1] != e.via_area))
        throw Error(Errc::BadCache, "edge does not run through a shared area");
      graph.edges.push_back(e);
    }
    detail::build_adjacency(graph);

    out.index.tables.resize(graph.areas.size());
    for (const json& jt : doc.at("tables")) {
      AreaTable t;
      t.area = graph.area_of(jt.at("area").get<std::string>());
      if (t.area < 0 || graph.areas[t.area].leaf) throw Error(Errc::BadCache, "table for an unknown area");
      t.boundary = jt.at("boundary").get<std::vector<int>>();
      if (t.boundary != detail::boundary_vertices(graph, t.area))
        throw Error(Errc::BadCache, "boundary of '" + graph.areas[t.area].id + "' does not match the map");
      t.has_vertical = jt.at("has_vertical").get<bool>();
      for (const json& c : jt.at("cost")) {
        const Cost v = c.get<Cost>();
        t.cost.push_back(v < 0 ? kInfiniteCost : v);
      }
      if (t.cost.size() != t.boundary.size() * t.boundary.size()) throw Error(Errc::BadCache, "table has the wrong size");
      out.index.tables[t.area] = std::move(t);
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::BadCache, e.what());
  }
}

}  // namespace osmag
