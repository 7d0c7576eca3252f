#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "osmag/error.hpp"
#include "osmag/merge.hpp"
#include "osmag/model.hpp"
#include "osmag/planner.hpp"
#include "osmag/profile.hpp"
#include "osmag/render.hpp"

namespace fs = std::filesystem;
using namespace osmag;

namespace {

enum Exit { kOk = 0, kValidation = 1, kUsage = 2, kRuntime = 3 };

std::string upper_snake(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (std::isupper(static_cast<unsigned char>(c)) && !out.empty()) out += '_';
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

Waypoint parse_waypoint(const std::string& text) {
  std::stringstream in(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw CLI::ValidationError("waypoint", "'" + text + "' is not lat,lon[,height]");
    }
  }
  if (values.size() != 2 && values.size() != 3)
    throw CLI::ValidationError("waypoint", "'" + text + "' is not lat,lon[,height]");
  return {values[0], values[1], values.size() == 3 ? values[2] : 0.0};
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

int cmd_validate(const std::string& file) {
  std::string bytes;
  try {
    bytes = read_file(file);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kRuntime;
  }
  MapModel model;
  try {
    model = build_model(parse_osm(bytes));
  } catch (const Error& e) {
    std::cout << "ERROR " << upper_snake(to_string(e.code())) << " " << file << ": " << e.what() << "\n";
    return kValidation;
  }
  const auto diagnostics = validate(model);
  for (const auto& d : diagnostics) std::cout << format_diagnostic(d) << "\n";
  if (diagnostics.empty()) std::cout << "OK " << file << "\n";
  return has_errors(diagnostics) ? kValidation : kOk;
}

int cmd_info(const std::string& file) {
  const MapModel model = load_model(file);
  int depth = 0;
  double inner_area = 0.0;
  std::set<double> levels;
  for (const auto& [id, a] : model.areas) {
    depth = std::max(depth, static_cast<int>(ancestors_of(model, id).size()) + 1);
    levels.insert(a.height);
    if (model.is_leaf(id) && a.type == AreaType::inner && !a.polygon.empty()) inner_area += polygon_area(a.polygon);
  }
  std::cout << "nodes: " << model.nodes.size() << "\n";
  std::cout << "areas: " << model.areas.size() << "\n";
  std::cout << "passages: " << model.passages.size() << "\n";
  std::cout << "trees: " << model.tree_roots.size() << "\n";
  std::cout << "depth: " << depth << "\n";
  std::cout << "inner area: " << fixed(inner_area, 2) << " m2\n";
  std::cout << "height levels:";
  for (double h : levels) std::cout << " " << fixed(h, 2);
  std::cout << "\n";
  return kOk;
}

struct Planner {
  PassageGraph graph;
  HierarchicalCostIndex index;
  bool cache_hit = false;
};

Planner prepare(const MapModel& model, double resolution, bool hierarchy, const std::string& cache) {
  Planner p;
  if (!cache.empty() && fs::exists(cache)) {
    if (auto loaded = load_cache(model, read_file(cache), resolution)) {
      p.graph = std::move(loaded->graph);
      p.index = std::move(loaded->index);
      p.cache_hit = true;
      return p;
    }
  }
  p.graph = build_passage_graph(model, resolution);
  if (hierarchy || !cache.empty()) p.index = precompute_hierarchy(model, p.graph);
  if (!cache.empty()) write_file(cache, serialize_cache(model, p.graph, p.index));
  return p;
}

nlohmann::json route_json(const Route& route) {
  nlohmann::json legs = nlohmann::json::array();
  for (const auto& leg : route.legs) {
    nlohmann::json line = nlohmann::json::array();
    auto round4 = [](double v) { return std::round(v * 1e4) / 1e4; };
    for (const auto& q : leg.polyline) line.push_back({round4(q.x), round4(q.y)});
    legs.push_back({{"area", leg.area},
                    {"entry", leg.entry},
                    {"exit", leg.exit},
                    {"height", leg.height},
                    {"cost", to_metres(leg.cost)},
                    {"polyline", std::move(line)}});
  }
  return {{"total_cost", route.total_cost},
          {"total_cost_um", route.total},
          {"crossing_cost", to_metres(route.crossing_cost)},
          {"vertical_cost", to_metres(route.vertical_cost)},
          {"passages_crossed", route.passages_crossed},
          {"legs", std::move(legs)},
          {"expanded", route.expanded},
          {"search_us", route.search_microseconds}};
}

void print_route(const Route& route) {
  std::cout << "route:";
  for (std::size_t i = 0; i < route.legs.size(); ++i) {
    std::cout << (i ? " -> [" + route.legs[i].entry + "] -> " : " ") << route.legs[i].area;
  }
  std::cout << "\n";
  for (std::size_t i = 0; i < route.legs.size(); ++i) {
    const auto& leg = route.legs[i];
    std::cout << "  " << i + 1 << ". " << leg.area << " (h " << fixed(leg.height, 2) << "): " << leg.entry << " -> "
              << leg.exit << "  " << fixed(to_metres(leg.cost)) << " m\n";
  }
  std::cout << "passages:";
  for (const auto& p : route.passages_crossed) std::cout << " " << p;
  std::cout << "\n";
  std::cout << "vertical: " << fixed(to_metres(route.vertical_cost)) << " m\n";
  std::cout << "total: " << fixed(route.total_cost) << " m\n";
  std::cout << "search: " << fixed(route.search_microseconds, 1) << " us, " << route.expanded << " expanded\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"osmAG map toolkit: validate, inspect, plan, render and merge osmAG maps"};
  app.require_subcommand(1);

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check map invariants");
  validate_cmd->add_option("file", file, "osmAG XML file")->required();

  auto* info_cmd = app.add_subcommand("info", "Print map statistics");
  info_cmd->add_option("file", file, "osmAG XML file")->required();

  std::string from, to, profile_name = "default", svg_out, cache;
  double resolution = kDefaultResolution;
  bool no_hierarchy = false, json_out = false;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a global path");
  plan_cmd->add_option("file", file, "osmAG XML file")->required();
  plan_cmd->add_option("--from", from, "start as lat,lon,height")->required();
  plan_cmd->add_option("--to", to, "goal as lat,lon,height")->required();
  plan_cmd->add_option("--profile", profile_name, "built-in profile name or JSON file");
  plan_cmd->add_option("--resolution", resolution, "grid resolution in metres")->check(CLI::PositiveNumber);
  plan_cmd->add_flag("--no-hierarchy", no_hierarchy, "search the flat passage graph");
  plan_cmd->add_option("--svg", svg_out, "also render the route on the start level");
  plan_cmd->add_option("--cache", cache, "index cache file (read if valid, written otherwise)");
  plan_cmd->add_flag("--json", json_out, "print one JSON object");

  double level = 0.0;
  std::string out_file, route_spec, style_file;
  bool no_labels = false;
  double wall_width = 0.0;
  auto* render_cmd = app.add_subcommand("render", "Render one level to SVG");
  render_cmd->add_option("file", file, "osmAG XML file")->required();
  render_cmd->add_option("--level", level, "floor height in metres");
  render_cmd->add_option("--out", out_file, "SVG output file")->required();
  render_cmd->add_option("--route", route_spec, "overlay a route given as lat,lon,h/lat,lon,h");
  render_cmd->add_option("--profile", profile_name, "profile for --route");
  render_cmd->add_option("--resolution", resolution, "grid resolution for --route")->check(CLI::PositiveNumber);
  render_cmd->add_option("--style", style_file, "JSON style file");
  render_cmd->add_option("--wall-width", wall_width, "wall stroke in metres")->check(CLI::PositiveNumber);
  render_cmd->add_flag("--no-labels", no_labels, "omit text labels");

  std::string file_b;
  double threshold = kNodeMergeTolerance;
  auto* merge_cmd = app.add_subcommand("merge", "Merge two maps");
  merge_cmd->add_option("a", file, "first map (kept as the base)")->required();
  merge_cmd->add_option("b", file_b, "second map")->required();
  merge_cmd->add_option("--threshold", threshold, "node consolidation distance in metres")->check(CLI::NonNegativeNumber);
  merge_cmd->add_option("-o,--out", out_file, "merged output file")->required();

  auto* pre_cmd = app.add_subcommand("precompute", "Build and store the planning index");
  pre_cmd->add_option("file", file, "osmAG XML file")->required();
  pre_cmd->add_option("--resolution", resolution, "grid resolution in metres")->check(CLI::PositiveNumber);
  pre_cmd->add_option("-o,--out", out_file, "cache file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(file);
    if (*info_cmd) return cmd_info(file);

    if (*plan_cmd) {
      const Waypoint start = parse_waypoint(from);
      const Waypoint goal = parse_waypoint(to);
      const CapabilityProfile profile = resolve_profile(profile_name);
      const MapModel model = load_model(file);
      const Planner planner = prepare(model, resolution, !no_hierarchy, cache);
      const Route route = plan(model, planner.graph, no_hierarchy ? nullptr : &planner.index, start, goal, profile,
                               {.use_hierarchy = !no_hierarchy});
      if (!svg_out.empty()) write_file(svg_out, render_svg(model, style_for_level(start.height), &route));
      if (json_out)
        std::cout << route_json(route).dump() << "\n";
      else
        print_route(route);
      return kOk;
    }

    if (*render_cmd) {
      const MapModel model = load_model(file);
      RenderStyle style = style_for_level(level);
      if (!style_file.empty()) style = parse_render_style(read_file(style_file), style);
      if (wall_width > 0) style.wall_width = wall_width;
      if (no_labels) style.labels = false;
      std::optional<Route> route;
      if (!route_spec.empty()) {
        const auto slash = route_spec.find('/');
        if (slash == std::string::npos) throw CLI::ValidationError("--route", "expected from/to");
        const PassageGraph graph = build_passage_graph(model, resolution);
        route = plan(model, graph, nullptr, parse_waypoint(route_spec.substr(0, slash)),
                     parse_waypoint(route_spec.substr(slash + 1)), resolve_profile(profile_name), {false});
      }
      write_file(out_file, render_svg(model, style, route ? &*route : nullptr));
      std::cout << "wrote " << out_file << "\n";
      return kOk;
    }

    if (*merge_cmd) {
      const BuildOptions lenient{.allow_unresolved_areas = true};
      const MapModel a = load_model(file, lenient);
      const MapModel b = load_model(file_b, lenient);
      auto [merged, report] = merge_maps(a, b, threshold);
      write_file(out_file, serialize(merged));
      std::cout << "consolidated node pairs: " << report.consolidated_node_pairs << "\n";
      std::cout << "renamed ids: " << report.renamed_ids.size() << "\n";
      for (const auto& [old_id, new_id] : report.renamed_ids) std::cout << "  " << old_id << " -> " << new_id << "\n";
      for (const auto& d : report.conflicts) std::cout << format_diagnostic(d) << "\n";
      std::cout << "wrote " << out_file << "\n";
      return kOk;
    }

    if (*pre_cmd) {
      const MapModel model = load_model(file);
      if (fs::exists(out_file)) {
        try {
          if (load_cache(model, read_file(out_file), resolution)) {
            std::cout << "cache valid: " << out_file << "\n";
            return kOk;
          }
        } catch (const Error& e) {
          std::cerr << "ignoring unreadable cache: " << e.what() << "\n";
        }
      }
      using clock = std::chrono::steady_clock;
      const auto t0 = clock::now();
      const PassageGraph graph = build_passage_graph(model, resolution);
      const auto t1 = clock::now();
      const HierarchicalCostIndex index = precompute_hierarchy(model, graph);
      const auto t2 = clock::now();
      write_file(out_file, serialize_cache(model, graph, index));
      auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
      std::size_t tables = 0;
      for (const auto& t : index.tables) tables += t.has_value();
      std::cout << "vertices: " << graph.vertices.size() << ", edges: " << graph.edges.size() << ", tables: " << tables
                << "\n";
      std::cout << "graph: " << fixed(ms(t1 - t0), 1) << " ms, hierarchy: " << fixed(ms(t2 - t1), 1)
                << " ms, total: " << fixed(ms(t2 - t0), 1) << " ms\n";
      std::cout << "wrote " << out_file << "\n";
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == Errc::BadProfile || e.code() == Errc::BadStyle) return kUsage;
    return e.code() == Errc::ValidationFailed ? kValidation : kRuntime;
  }
  return kUsage;
}
