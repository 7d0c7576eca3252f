#include "osmag/model.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>

#include "osmag/error.hpp"

namespace osmag {

namespace {

constexpr std::string_view kId = "osmAG:id";
constexpr std::string_view kType = "osmAG:type";
constexpr std::string_view kAreaType = "osmAG:areatype";
constexpr std::string_view kParent = "osmAG:parent";
constexpr std::string_view kFrom = "osmAG:from";
constexpr std::string_view kTo = "osmAG:to";

std::optional<double> parse_height(const Tags& tags) {
  const std::string* text = find_tag(tags, "height");
  if (!text) return std::nullopt;
  double value = 0.0;
  const char* first = text->data();
  const char* last = text->data() + text->size();
  while (first != last && *first == ' ') ++first;
  auto [p, ec] = std::from_chars(first, last, value);
  if (ec != std::errc()) return std::nullopt;
  return value;  // trailing units such as " m" are ignored
}

std::string way_label(const OsmWay& way) { return "way " + std::to_string(way.id); }

}  // namespace

bool is_vertical_passage(const Tags& tags) {
  const std::string* highway = find_tag(tags, "highway");
  if (highway && (*highway == "elevator" || *highway == "steps")) return true;
  const std::string* vertical = find_tag(tags, "osmAG:vertical");
  return vertical && *vertical == "yes";
}

const Area& MapModel::area(std::string_view id) const {
  const Area* a = find_area(id);
  if (!a) throw Error(Errc::UnknownArea, "no area with osmAG:id '" + std::string(id) + "'");
  return *a;
}

const Area* MapModel::find_area(std::string_view id) const {
  auto it = areas.find(std::string(id));
  return it == areas.end() ? nullptr : &it->second;
}

const Passage* MapModel::find_passage(std::string_view id) const {
  auto it = passages.find(std::string(id));
  return it == passages.end() ? nullptr : &it->second;
}

bool MapModel::is_leaf(std::string_view id) const {
  auto it = children_index.find(std::string(id));
  return it == children_index.end() || it->second.empty();
}

MapModel build_model(const OsmDocument& doc, const BuildOptions& options) {
  MapModel model;
  model.osm_attributes = doc.osm_attributes;
  model.leading_fragments = doc.leading;
  model.trailing_fragments = doc.trailing;

  for (const auto& raw : doc.nodes) {
    GeoNode node{raw.id, raw.lat, raw.lon, raw.tags, raw.attributes, {}};
    const std::string* type = find_tag(raw.tags, kType);
    if (type && *type == "root") {
      if (model.root)
        throw Error(Errc::DuplicateRootAnchor, "nodes " + std::to_string(model.root->node_id) + " and " +
                                                   std::to_string(raw.id) + " are both tagged osmAG:type=root");
      model.root = RootAnchor{raw.id, raw.lat, raw.lon};
    }
    model.nodes[raw.id] = std::move(node);
  }

  std::set<std::string> seen_ids;
  for (const auto& way : doc.ways) {
    const std::string* type = find_tag(way.tags, kType);
    if (!type) {
      model.opaque_ways.push_back(way);
      continue;
    }
    if (*type != "area" && *type != "passage")
      throw Error(Errc::UnknownOsmagType, way_label(way) + " has osmAG:type=" + *type);
    const std::string* id = find_tag(way.tags, kId);
    if (!id || id->empty()) throw Error(Errc::MissingAttribute, way_label(way) + " lacks osmAG:id");
    if (!seen_ids.insert(*id).second) throw Error(Errc::DuplicateOsmagId, "osmAG:id '" + *id + "' used twice");
    for (auto ref : way.refs)
      if (!model.nodes.contains(ref))
        throw Error(Errc::DanglingNodeReference,
                    way_label(way) + " ('" + *id + "') references missing node " + std::to_string(ref));

    if (*type == "area") {
      Area area;
      area.id = *id;
      area.way_id = way.id;
      area.ring = way.refs;
      area.tags = way.tags;
      area.attributes = way.attributes;
      if (const std::string* at = find_tag(way.tags, kAreaType)) {
        if (*at == "inner")
          area.type = AreaType::inner;
        else if (*at == "structure")
          area.type = AreaType::structure;
        else
          throw Error(Errc::UnknownOsmagType, "area '" + *id + "' has osmAG:areatype=" + *at);
      }
      if (const std::string* parent = find_tag(way.tags, kParent)) area.parent = *parent;
      model.areas.emplace(area.id, std::move(area));
    } else {
      Passage p;
      p.id = *id;
      p.way_id = way.id;
      p.polyline = way.refs;
      p.tags = way.tags;
      p.attributes = way.attributes;
      const std::string* from = find_tag(way.tags, kFrom);
      const std::string* to = find_tag(way.tags, kTo);
      if (!from || !to) throw Error(Errc::MissingAttribute, "passage '" + *id + "' lacks osmAG:from or osmAG:to");
      p.from_area = *from;
      p.to_area = *to;
      model.passages.emplace(p.id, std::move(p));
    }
  }

  if (!model.root && (!model.areas.empty() || !model.passages.empty()))
    throw Error(Errc::MissingRootAnchor, "no node is tagged osmAG:type=root");

  if (!options.allow_unresolved_areas) {
    for (const auto& [id, p] : model.passages)
      for (const auto* end : {&p.from_area, &p.to_area})
        if (!model.areas.contains(*end))
          throw Error(Errc::DanglingAreaReference, "passage '" + id + "' names unknown area '" + *end + "'");
  }

  reindex(model);
  return model;
}

void reindex(MapModel& model) {
  if (model.root)
    for (auto& [id, node] : model.nodes) node.local = to_local(node.lat, node.lon, *model.root);

  for (auto& [id, area] : model.areas) {
    area.outline.clear();
    for (auto ref : area.ring) {
      auto it = model.nodes.find(ref);
      if (it != model.nodes.end()) area.outline.push_back(it->second.local);
    }
    if (area.closed() && !area.outline.empty()) area.outline.pop_back();
    try {
      area.polygon = Polygon2D(area.outline);
    } catch (const Error&) {
      area.polygon = Polygon2D();
    }
  }

  // Heights inherit down the tree; a cycle falls back to the area's own tag.
  std::map<std::string, double> resolved;
  std::function<double(const Area&, std::size_t)> height_of = [&](const Area& a, std::size_t depth) -> double {
    if (auto it = resolved.find(a.id); it != resolved.end()) return it->second;
    double h = 0.0;
    if (auto own = parse_height(a.tags)) {
      h = *own;
    } else if (a.parent && depth < model.areas.size()) {
      if (const Area* parent = model.find_area(*a.parent)) h = height_of(*parent, depth + 1);
    }
    resolved[a.id] = h;
    return h;
  };
  for (auto& [id, area] : model.areas) area.height = height_of(area, 0);

  model.children_index.clear();
  model.tree_roots.clear();
  for (const auto& [id, area] : model.areas) {
    if (area.parent && model.areas.contains(*area.parent) && *area.parent != id)
      model.children_index[*area.parent].push_back(id);
    else
      model.tree_roots.push_back(id);
  }

  model.area_passages_index.clear();
  for (auto& [id, p] : model.passages) {
    p.vertical = is_vertical_passage(p.tags);
    p.points.clear();
    for (auto ref : p.polyline) {
      auto it = model.nodes.find(ref);
      if (it != model.nodes.end()) p.points.push_back(it->second.local);
    }
    if (model.areas.contains(p.from_area)) model.area_passages_index[p.from_area].push_back(id);
    if (p.to_area != p.from_area && model.areas.contains(p.to_area)) model.area_passages_index[p.to_area].push_back(id);
  }
}

OsmDocument to_document(const MapModel& model) {
  OsmDocument doc;
  doc.osm_attributes = model.osm_attributes;
  doc.leading = model.leading_fragments;
  doc.trailing = model.trailing_fragments;
  for (const auto& [id, n] : model.nodes) doc.nodes.push_back({n.id, n.lat, n.lon, n.tags, n.attributes});
  for (const auto& [id, a] : model.areas) doc.ways.push_back({a.way_id, a.ring, a.tags, a.attributes});
  for (const auto& [id, p] : model.passages) doc.ways.push_back({p.way_id, p.polyline, p.tags, p.attributes});
  doc.ways.insert(doc.ways.end(), model.opaque_ways.begin(), model.opaque_ways.end());
  return doc;
}

std::string serialize(const MapModel& model) { return serialize(to_document(model)); }

MapModel load_model(const std::filesystem::path& path, const BuildOptions& options) {
  return build_model(parse_osm(read_file(path)), options);
}

std::vector<const Area*> leaf_areas(const MapModel& model) {
  std::vector<const Area*> out;
  for (const auto& [id, a] : model.areas)
    if (model.is_leaf(id)) out.push_back(&a);
  return out;
}

std::optional<const Area*> parent_of(const MapModel& model, std::string_view id) {
  const Area& a = model.area(id);
  if (!a.parent) return std::nullopt;
  const Area* p = model.find_area(*a.parent);
  if (!p) return std::nullopt;
  return p;
}

std::vector<const Area*> children_of(const MapModel& model, std::string_view id) {
  model.area(id);
  std::vector<const Area*> out;
  auto it = model.children_index.find(std::string(id));
  if (it != model.children_index.end())
    for (const auto& c : it->second) out.push_back(&model.area(c));
  return out;
}

std::vector<const Area*> ancestors_of(const MapModel& model, std::string_view id) {
  std::vector<const Area*> out;
  const Area* cur = &model.area(id);
  while (cur->parent && out.size() < model.areas.size()) {
    const Area* p = model.find_area(*cur->parent);
    if (!p || p == cur) break;
    out.push_back(p);
    cur = p;
  }
  return out;
}

bool is_ancestor(const MapModel& model, std::string_view ancestor, std::string_view descendant) {
  for (const Area* a : ancestors_of(model, descendant))
    if (a->id == ancestor) return true;
  return false;
}

const Area* locate(const MapModel& model, LocalPoint point, double height) {
  const Area* best = nullptr;
  std::vector<const Area*> stack;
  for (const auto& id : model.tree_roots) stack.push_back(&model.area(id));
  std::size_t visited = 0;
  while (!stack.empty() && visited++ <= model.areas.size()) {
    const Area* a = stack.back();
    stack.pop_back();
    if (a->polygon.empty()) continue;
    if (model.is_leaf(a->id)) {
      if (a->type != AreaType::inner || std::abs(a->height - height) > kHeightTolerance) continue;
      if (!contains_point(a->polygon, point)) continue;
      if (!best || a->id < best->id) best = a;
      continue;
    }
    if (!contains_point(a->polygon, point) && distance_to_boundary(a->polygon, point) > kContainmentTolerance)
      continue;
    for (const auto& c : model.children_index.at(a->id)) stack.push_back(&model.area(c));
  }
  return best;
}

}  // namespace osmag
