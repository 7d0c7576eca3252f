#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace osmag::fixtures {

std::vector<LocalPoint> rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

void MapBuilder::area(const std::string& id, std::vector<LocalPoint> ring, double height, AreaOptions options) {
  areas_.push_back({id, std::move(ring), height, std::move(options)});
}

void MapBuilder::passage(const std::string& id, const std::string& from, const std::string& to,
                         std::vector<LocalPoint> points, Tags tags) {
  find(from);
  find(to);
  passages_.push_back({id, from, to, std::move(points), std::move(tags)});
}

void MapBuilder::point(LocalPoint p, Tags tags) { points_.emplace_back(p, std::move(tags)); }

const MapBuilder::AreaDef& MapBuilder::find(const std::string& id) const {
  for (const auto& a : areas_)
    if (a.id == id) return a;
  throw std::invalid_argument("fixture area '" + id + "' is not defined");
}

namespace {

using Key = std::tuple<long long, long long, long long>;
Key key_of(LocalPoint p, double h) { return {std::llround(p.x * 1000), std::llround(p.y * 1000), std::llround(h * 1000)}; }

// Points of `level` strictly inside segment ab, ordered from a to b.
std::vector<LocalPoint> on_segment(const std::vector<LocalPoint>& level, LocalPoint a, LocalPoint b) {
  std::vector<std::pair<double, LocalPoint>> hits;
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  for (const auto& p : level) {
    const double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    if (t <= 1e-9 || t >= 1 - 1e-9) continue;
    const double cx = a.x + t * dx - p.x, cy = a.y + t * dy - p.y;
    if (cx * cx + cy * cy < 1e-10) hits.emplace_back(t, p);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  std::vector<LocalPoint> out;
  for (const auto& [t, p] : hits)
    if (out.empty() || distance(out.back(), p) > 1e-6) out.push_back(p);
  return out;
}

std::string fmt_height(double h) {
  std::string s = std::to_string(h);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

OsmDocument MapBuilder::build() const {
  std::map<long long, std::vector<LocalPoint>> levels;  // height (mm) -> registered points
  auto level_of = [](double h) { return std::llround(h * 1000); };
  for (const auto& a : areas_)
    for (const auto& p : a.ring) levels[level_of(a.height)].push_back(p);
  for (const auto& ps : passages_) {
    levels[level_of(find(ps.from).height)].insert(levels[level_of(find(ps.from).height)].end(), ps.points.begin(),
                                                  ps.points.end());
    levels[level_of(find(ps.to).height)].insert(levels[level_of(find(ps.to).height)].end(), ps.points.begin(),
                                                ps.points.end());
  }

  OsmDocument doc;
  doc.osm_attributes = {{"version", "0.6"}, {"generator", "osmag-fixtures"}};
  std::map<Key, std::int64_t> ids;
  std::int64_t next_node = 2;
  const auto root_geo = from_local({0, 0}, root_);
  doc.nodes.push_back({root_.node_id, root_geo.lat, root_geo.lon, {{"osmAG:type", "root"}}, {}});
  auto node = [&](LocalPoint p, double h) {
    auto [it, inserted] = ids.emplace(key_of(p, h), next_node);
    if (inserted) {
      const auto g = from_local(p, root_);
      doc.nodes.push_back({next_node++, g.lat, g.lon, {}, {}});
    }
    return it->second;
  };

  std::int64_t next_way = 1;
  for (const auto& a : areas_) {
    const auto& level = levels[level_of(a.height)];
    OsmWay way;
    way.id = next_way++;
    for (std::size_t i = 0; i < a.ring.size(); ++i) {
      const LocalPoint p = a.ring[i], q = a.ring[(i + 1) % a.ring.size()];
      way.refs.push_back(node(p, a.height));
      for (const auto& m : on_segment(level, p, q)) way.refs.push_back(node(m, a.height));
    }
    way.refs.push_back(way.refs.front());
    way.tags = {{"osmAG:type", "area"}, {"osmAG:id", a.id},
                {"osmAG:areatype", a.options.structure ? "structure" : "inner"}};
    if (a.options.parent) way.tags.push_back({"osmAG:parent", *a.options.parent});
    if (a.options.tag_height) way.tags.push_back({"height", fmt_height(a.height)});
    way.tags.insert(way.tags.end(), a.options.tags.begin(), a.options.tags.end());
    doc.ways.push_back(std::move(way));
  }
  for (const auto& ps : passages_) {
    OsmWay way;
    way.id = next_way++;
    const double h = find(ps.from).height;
    for (const auto& p : ps.points) {
      auto it = ids.find(key_of(p, h));
      if (it == ids.end()) throw std::logic_error("passage '" + ps.id + "' point is not on a ring of '" + ps.from + "'");
      way.refs.push_back(it->second);
    }
    way.tags = {{"osmAG:type", "passage"}, {"osmAG:id", ps.id}, {"osmAG:from", ps.from}, {"osmAG:to", ps.to}};
    way.tags.insert(way.tags.end(), ps.tags.begin(), ps.tags.end());
    doc.ways.push_back(std::move(way));
  }
  for (const auto& [p, tags] : points_) {
    const auto g = from_local(p, root_);
    doc.nodes.push_back({next_node++, g.lat, g.lon, tags, {}});
  }
  return doc;
}

// ---------------------------------------------------------------------------

namespace {

std::string floor_id(const std::string& b, int f) { return b + ".F" + std::to_string(f); }

std::vector<LocalPoint> shifted(LocalPoint o, std::vector<LocalPoint> pts) {
  for (auto& p : pts) p = {p.x + o.x, p.y + o.y};
  return pts;
}

std::vector<LocalPoint> hdoor(LocalPoint o, double x0, double x1, double y) {
  const double mid = (x0 + x1) / 2;
  return shifted(o, {{mid - 0.5, y}, {mid + 0.5, y}});
}

}  // namespace

std::string entrance_corridor(const std::string& building, int end) {
  return floor_id(building, 0) + (end == 0 ? ".C0" : ".C2");
}

std::vector<LocalPoint> entrance_span(LocalPoint o, int end) {
  const double x = end == 0 ? 0.0 : 36.0;
  return shifted(o, {{x, 6.5}, {x, 8.5}});
}

void add_building(MapBuilder& b, const std::string& id, LocalPoint o, int floors, double floor_height,
                  const std::optional<std::string>& parent) {
  b.area(id, shifted(o, rect(0, 0, 36, 15)), 0.0, {.parent = parent, .structure = true, .tags = {{"building", "yes"}}});
  for (int f = 0; f < floors; ++f) {
    const double h = f * floor_height;
    const std::string fid = floor_id(id, f);
    b.area(fid, shifted(o, rect(0, 0, 36, 15)), h,
           {.parent = id, .structure = true, .tags = {{"level", std::to_string(f)}}});
    int room = 0;
    auto leaf = [&](const std::string& leaf_id, const std::string& wing, std::vector<LocalPoint> ring, Tags tags,
                    bool structure = false) {
      b.area(leaf_id, shifted(o, std::move(ring)), h,
             {.parent = wing, .structure = structure, .tag_height = false, .tags = std::move(tags)});
    };
    for (int w = 0; w < 3; ++w) {
      const std::string wid = fid + ".W" + std::to_string(w);
      b.area(wid, shifted(o, rect(12.0 * w, 0, 12.0 * w + 12, 15)), h, {.parent = fid, .structure = true, .tags = {}});
      leaf(fid + ".C" + std::to_string(w), wid, rect(12.0 * w, 6, 12.0 * w + 12, 9), {{"indoor", "corridor"}});
    }
    auto add_room = [&](int wing, double x0, double x1, bool north) {
      const std::string rid = fid + ".R" + (room < 10 ? "0" : "") + std::to_string(room);
      ++room;
      const std::string wid = fid + ".W" + std::to_string(wing);
      leaf(rid, wid, north ? rect(x0, 9, x1, 15) : rect(x0, 0, x1, 6),
           {{"indoor", "room"}, {"name", "Room " + std::to_string(f) + std::to_string(room)}});
      b.passage(rid + ".D", fid + ".C" + std::to_string(wing), rid, hdoor(o, x0, x1, north ? 9 : 6),
                {{"door", "hinged"}});
    };
    auto add_shaft = [&](int wing, int n, std::vector<LocalPoint> ring) {
      leaf(fid + ".SH" + std::to_string(n), fid + ".W" + std::to_string(wing), std::move(ring), {{"indoor", "shaft"}},
           true);
    };
    // Wing 0
    leaf(fid + ".ELEV", fid + ".W0", rect(0, 9, 2, 11.5), {{"indoor", "elevator"}});
    b.passage(fid + ".ELEV.D", fid + ".C0", fid + ".ELEV", hdoor(o, 0, 2, 9), {{"door", "elevatordoor"}});
    add_room(0, 2, 7, true);
    add_room(0, 7, 12, true);
    add_room(0, 0, 5, false);
    add_room(0, 5, 10, false);
    add_shaft(0, 0, rect(10, 0, 12, 6));
    // Wing 1
    add_room(1, 12, 17, true);
    add_room(1, 17, 22, true);
    add_shaft(1, 1, rect(22, 9, 24, 15));
    add_room(1, 12, 17, false);
    add_room(1, 17, 22, false);
    add_shaft(1, 2, rect(22, 0, 24, 6));
    // Wing 2
    add_room(2, 24, 29, true);
    add_room(2, 29, 34, true);
    add_shaft(2, 3, rect(34, 9, 36, 15));
    add_room(2, 24, 29, false);
    leaf(fid + ".STAIR", fid + ".W2", rect(29, 0, 36, 6), {{"indoor", "staircase"}, {"stairs", "yes"}});
    b.passage(fid + ".STAIR.D", fid + ".C2", fid + ".STAIR", hdoor(o, 30, 31, 6));
    b.passage(fid + ".J0", fid + ".C0", fid + ".C1", shifted(o, {{12, 6}, {12, 9}}));
    b.passage(fid + ".J1", fid + ".C1", fid + ".C2", shifted(o, {{24, 6}, {24, 9}}));
    if (f > 0) {
      const std::string below = floor_id(id, f - 1);
      b.passage(id + ".LIFT" + std::to_string(f - 1) + std::to_string(f), below + ".ELEV", fid + ".ELEV",
                shifted(o, {{0, 11.5}, {2, 11.5}}), {{"highway", "elevator"}});
      b.passage(id + ".STEPS" + std::to_string(f - 1) + std::to_string(f), below + ".STAIR", fid + ".STAIR",
                shifted(o, {{33, 0}, {35, 0}}), {{"highway", "steps"}, {"stairs", "yes"}});
    }
  }
}

namespace {

MapBuilder::AreaOptions child(const std::string& parent, Tags tags = {}) {
  return {.parent = parent, .structure = false, .tag_height = true, .tags = std::move(tags)};
}
MapBuilder::AreaOptions structure(std::optional<std::string> parent = {}) {
  return {.parent = std::move(parent), .structure = true, .tag_height = true, .tags = {}};
}

MapBuilder two_rooms_builder() {
  MapBuilder b;
  b.area("house", rect(0, 0, 10, 4), 0, structure());
  b.area("room_a", rect(0, 0, 5, 4), 0, child("house", {{"name", "Kitchen"}}));
  b.area("room_b", rect(5, 0, 10, 4), 0, child("house", {{"name", "Hall"}}));
  b.passage("door_ab", "room_a", "room_b", {{5, 1.5}, {5, 2.5}}, {{"door", "hinged"}});
  return b;
}

std::string two_rooms() { return two_rooms_builder().xml(); }

std::string corridor_5() {
  MapBuilder b;
  b.area("floor", rect(0, 0, 25, 8), 0, structure());
  b.area("corridor", rect(0, 0, 25, 3), 0, child("floor", {{"indoor", "corridor"}}));
  for (int i = 0; i < 5; ++i) {
    const std::string r = "room" + std::to_string(i);
    b.area(r, rect(5.0 * i, 3, 5.0 * i + 5, 8), 0, child("floor", {{"indoor", "room"}}));
    b.passage("door" + std::to_string(i), "corridor", r, {{5.0 * i + 2, 3}, {5.0 * i + 3, 3}});
  }
  return b.xml();
}

std::string l_shaped() {
  MapBuilder b;
  b.area("floor", rect(0, 0, 20, 15), 0, structure());
  b.area("hall", {{0, 0}, {20, 0}, {20, 3}, {4, 3}, {3, 4}, {3, 15}, {0, 15}}, 0,
         child("floor", {{"indoor", "corridor"}}));
  b.area("r1", rect(4, 3, 9, 9), 0, child("floor"));
  b.area("r2", rect(9, 3, 13, 9), 0, child("floor"));
  b.area("r3", {{13, 3}, {20, 3}, {20, 15}, {15, 15}, {15, 9}, {13, 9}}, 0, child("floor", {{"name", "Lab"}}));
  b.area("r4", rect(3, 9, 9, 12), 0, child("floor"));
  b.area("r5", rect(3, 12, 9, 15), 0, child("floor"));
  b.passage("d1", "hall", "r1", {{6, 3}, {7, 3}});
  b.passage("d2", "hall", "r2", {{10.5, 3}, {11.5, 3}});
  b.passage("d3", "hall", "r3", {{16, 3}, {17, 3}});
  b.passage("d4", "hall", "r4", {{3, 10}, {3, 11}});
  b.passage("d5", "hall", "r5", {{3, 13}, {3, 14}});
  b.passage("d23", "r2", "r3", {{13, 5}, {13, 6}});
  b.passage("d45", "r4", "r5", {{5, 12}, {6, 12}});
  b.passage("d14", "r1", "r4", {{7, 9}, {8, 9}});
  return b.xml();
}

std::string office_floor() {
  MapBuilder b;
  add_building(b, "office", {0, 0}, 1, 4.0, std::nullopt);
  return b.xml();
}

std::string two_floor() {
  MapBuilder b;
  add_building(b, "tower", {0, 0}, 2, 4.0, std::nullopt);
  return b.xml();
}

std::string two_trees() {
  MapBuilder b;
  add_building(b, "east", {50, 0}, 1, 4.0, std::nullopt);
  add_building(b, "west", {0, 0}, 1, 4.0, std::nullopt);
  return b.xml();
}

std::string two_buildings() {
  MapBuilder b;
  b.area("campus", rect(0, 0, 112, 35), 0, structure());
  b.area("out.S", rect(0, 0, 112, 10), 0, child("campus", {{"highway", "footway"}, {"surface", "pavement"}}));
  b.area("out.W", rect(0, 10, 10, 35), 0, child("campus", {{"surface", "pavement"}}));
  b.area("out.M", rect(46, 10, 66, 35), 0, child("campus", {{"surface", "pavement"}, {"name", "Plaza"}}));
  b.area("out.E", rect(102, 10, 112, 35), 0, child("campus", {{"surface", "pavement"}}));
  add_building(b, "A", {10, 10}, 2, 4.0, "campus");
  add_building(b, "B", {66, 10}, 2, 4.0, "campus");
  b.passage("out.SW", "out.S", "out.W", {{3, 10}, {7, 10}});
  b.passage("out.SM", "out.S", "out.M", {{52, 10}, {60, 10}});
  b.passage("out.SE", "out.S", "out.E", {{105, 10}, {109, 10}});
  b.passage("A.IN.W", "out.W", entrance_corridor("A", 0), entrance_span({10, 10}, 0),
            {{"door", "automatic"}, {"kerb:height", "0.02"}});
  b.passage("A.IN.E", "out.M", entrance_corridor("A", 1), entrance_span({10, 10}, 1),
            {{"door", "automatic"}, {"kerb:height", "0.02"}});
  b.passage("B.IN.W", "out.M", entrance_corridor("B", 0), entrance_span({66, 10}, 0),
            {{"door", "automatic"}, {"kerb:height", "0.12"}});
  b.passage("B.IN.E", "out.E", entrance_corridor("B", 1), entrance_span({66, 10}, 1),
            {{"door", "automatic"}, {"kerb:height", "0.02"}});
  return b.xml();
}

}  // namespace

// 500 areas, 347 passages and 4908 nodes, the size of the campus map the
// planner was evaluated on.
std::string campus() {
  MapBuilder b;
  b.area("campus", rect(0, 0, 112, 70), 0, structure());
  b.area("zone.west", rect(0, 0, 10, 70), 0, structure("campus"));
  b.area("zone.mid", rect(46, 0, 66, 70), 0, structure("campus"));
  b.area("zone.east", rect(102, 0, 112, 70), 0, structure("campus"));
  const Tags pave{{"surface", "pavement"}};
  b.area("out.W1", rect(0, 0, 10, 35), 0, child("zone.west", pave));
  b.area("out.W2", rect(0, 35, 10, 70), 0, child("zone.west", pave));
  b.area("out.M1", rect(46, 0, 66, 35), 0, child("zone.mid", {{"surface", "grass"}}));
  b.area("out.M2", rect(46, 35, 66, 70), 0, child("zone.mid", {{"surface", "grass"}}));
  b.area("out.E1", rect(102, 0, 112, 35), 0, child("zone.east", pave));
  b.area("out.E2", rect(102, 35, 112, 70), 0, child("zone.east", pave));
  b.area("out.S1", rect(10, 25, 46, 45), 0, child("campus", pave));
  b.area("out.S2", rect(66, 25, 102, 45), 0, child("campus", pave));
  const std::vector<std::pair<std::string, LocalPoint>> buildings{
      {"A", {10, 10}}, {"B", {66, 10}}, {"C", {10, 45}}, {"D", {66, 45}}};
  for (const auto& [id, o] : buildings) {
    b.area("lot." + id, shifted(o, rect(0, 0, 36, 15)), 0, structure("campus"));
    add_building(b, id, o, 5, 4.0, "lot." + id);
  }
  b.passage("out.W12", "out.W1", "out.W2", {{3, 35}, {7, 35}});
  b.passage("out.W1S1", "out.W1", "out.S1", {{10, 28}, {10, 32}});
  b.passage("out.S1M1", "out.S1", "out.M1", {{46, 28}, {46, 32}});
  b.passage("out.M12", "out.M1", "out.M2", {{52, 35}, {60, 35}});
  b.passage("out.M1S2", "out.M1", "out.S2", {{66, 28}, {66, 32}});
  b.passage("out.S2E1", "out.S2", "out.E1", {{102, 28}, {102, 32}});
  b.passage("out.E12", "out.E1", "out.E2", {{105, 35}, {109, 35}});
  const std::map<std::string, std::pair<std::string, std::string>> doors{
      {"A", {"out.W1", "out.M1"}}, {"B", {"out.M1", "out.E1"}}, {"C", {"out.W2", "out.M2"}}, {"D", {"out.M2", "out.E2"}}};
  for (const auto& [id, o] : buildings) {
    b.passage(id + ".IN.W", doors.at(id).first, entrance_corridor(id, 0), entrance_span(o, 0), {{"door", "automatic"}});
    b.passage(id + ".IN.E", doors.at(id).second, entrance_corridor(id, 1), entrance_span(o, 1), {{"door", "automatic"}});
  }
  // Survey markers along the north edge bring the node count to 4908.
  const std::size_t have = b.build().nodes.size();
  constexpr std::size_t kNodes = 4908;
  if (have > kNodes) throw std::logic_error("campus fixture has too many nodes");
  for (std::size_t i = 0; i < kNodes - have; ++i)
    b.point({12.0 + 0.1 * static_cast<double>(i % 300), 64.0 + 0.5 * static_cast<double>(i / 300)},
            {{"survey:point", "yes"}});
  return b.xml();
}

namespace {

std::string passthrough() {
  OsmDocument doc = two_rooms_builder().build();
  doc.osm_attributes.emplace_back("upload", "never");
  // Negative ids as produced by editors for unsaved objects.
  std::map<std::int64_t, std::int64_t> renumber;
  for (auto& n : doc.nodes)
    if (n.id >= 4) {
      renumber[n.id] = -n.id;
      n.id = -n.id;
    }
  for (auto& w : doc.ways)
    for (auto& r : w.refs)
      if (renumber.contains(r)) r = renumber[r];
  for (auto& n : doc.nodes) {
    n.attributes = {{"version", "3"}, {"user", "mapper & co"}, {"visible", "true"}};
    if (n.id == 2) n.tags.push_back({"note", "corner <north-west> \"A\"\nsecond line"});
  }
  doc.ways[0].tags.push_back({"addr:street", "Haike Road"});
  doc.ways[1].attributes = {{"version", "2"}, {"changeset", "42"}};
  doc.ways.push_back({-7, {2, 3}, {{"barrier", "wall"}, {"material", "brick"}}, {}});
  doc.leading.push_back(R"(<bounds minlat="31.1789000" minlon="121.5899000" maxlat="31.1791000" maxlon="121.5902000"/>)");
  doc.trailing.push_back(
      "<relation id=\"-5\" version=\"1\">\n    <member type=\"way\" ref=\"1\" role=\"outer\"/>\n"
      "    <tag k=\"type\" v=\"multipolygon\"/>\n  </relation>");
  return serialize(doc);
}

}  // namespace

std::vector<std::string> valid_fixture_names() {
  return {"two_rooms", "corridor_5",  "l_shaped", "office_floor", "two_floor",
          "two_buildings", "two_trees", "campus",   "passthrough",  "empty"};
}

std::string make_fixture(std::string_view name) {
  if (name == "two_rooms") return two_rooms();
  if (name == "corridor_5") return corridor_5();
  if (name == "l_shaped") return l_shaped();
  if (name == "office_floor") return office_floor();
  if (name == "two_floor") return two_floor();
  if (name == "two_buildings") return two_buildings();
  if (name == "two_trees") return two_trees();
  if (name == "campus") return campus();
  if (name == "passthrough") return passthrough();
  if (name == "empty") return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<osm version=\"0.6\"/>\n";
  throw std::invalid_argument("unknown fixture " + std::string(name));
}

// ---------------------------------------------------------------------------

namespace {

OsmWay& way_named(OsmDocument& doc, std::string_view id) {
  for (auto& w : doc.ways)
    if (const std::string* v = find_tag(w.tags, "osmAG:id"); v && *v == id) return w;
  throw std::invalid_argument("no way " + std::string(id));
}

const OsmNode& node_by_id(const OsmDocument& doc, std::int64_t id) {
  for (const auto& n : doc.nodes)
    if (n.id == id) return n;
  throw std::invalid_argument("no node");
}

std::int64_t max_node(const OsmDocument& doc) {
  std::int64_t m = 0;
  for (const auto& n : doc.nodes) m = std::max(m, n.id);
  return m;
}

MapBuilder big_house() {
  MapBuilder b;
  b.area("house", rect(0, 0, 10, 8), 0, structure());
  b.area("room_a", rect(0, 0, 5, 4), 0, child("house"));
  b.area("room_b", rect(5, 0, 10, 4), 0, child("house"));
  b.passage("door_ab", "room_a", "room_b", {{5, 1.5}, {5, 2.5}});
  return b;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> defect_fixtures() {
  return {{"containment", "CONTAINMENT"},
          {"overlap", "OVERLAP"},
          {"open_ring", "OPEN_RING"},
          {"self_intersect", "SELF_INTERSECT"},
          {"bad_parent", "BAD_PARENT"},
          {"passage_share", "PASSAGE_SHARE"},
          {"vertical_share", "PASSAGE_SHARE"},
          {"dangling_node", "DANGLING_NODE_REFERENCE"},
          {"dangling_area", "DANGLING_AREA_REFERENCE"},
          {"duplicate_id", "DUPLICATE_OSMAG_ID"}};
}

std::string make_defect(std::string_view name) {
  if (name == "containment") {
    MapBuilder b;
    b.area("house", rect(0, 0, 10, 4), 0, structure());
    b.area("room_a", rect(0, 0, 5, 4), 0, child("house"));
    b.area("room_b", rect(5, 0, 11, 4), 0, child("house"));
    b.passage("door_ab", "room_a", "room_b", {{5, 1.5}, {5, 2.5}});
    return b.xml();
  }
  if (name == "overlap") {
    MapBuilder b = two_rooms_builder();
    b.area("closet", rect(8, 1, 10, 3), 0, child("house"));
    return b.xml();
  }
  if (name == "open_ring") {
    OsmDocument doc = two_rooms_builder().build();
    way_named(doc, "room_b").refs.pop_back();
    return serialize(doc);
  }
  if (name == "self_intersect") {
    MapBuilder b = big_house();
    b.area("bowtie", {{1, 5}, {4, 7.5}, {4, 5}, {1, 7}}, 0, child("house"));
    return b.xml();
  }
  if (name == "bad_parent") {
    MapBuilder b = two_rooms_builder();
    b.area("shed", rect(20, 0, 23, 3), 0, child("garden"));
    return b.xml();
  }
  if (name == "passage_share") {
    OsmDocument doc = two_rooms_builder().build();
    OsmWay& door = way_named(doc, "door_ab");
    OsmNode copy = node_by_id(doc, door.refs[0]);
    copy.id = max_node(doc) + 1;
    door.refs[0] = copy.id;
    doc.nodes.push_back(copy);
    return serialize(doc);
  }
  if (name == "vertical_share") {
    MapBuilder b;
    add_building(b, "tower", {0, 0}, 2, 4.0, std::nullopt);
    OsmDocument doc = b.build();
    OsmWay& lift = way_named(doc, "tower.LIFT01");
    const auto g = from_local({1.0, 12.5}, b.root());
    const std::int64_t id = max_node(doc) + 1;
    doc.nodes.push_back({id, g.lat, g.lon, {}, {}});
    lift.refs[1] = id;
    return serialize(doc);
  }
  if (name == "dangling_node") {
    OsmDocument doc = two_rooms_builder().build();
    way_named(doc, "room_a").refs[1] = 999;
    return serialize(doc);
  }
  if (name == "dangling_area") {
    OsmDocument doc = two_rooms_builder().build();
    set_tag(way_named(doc, "door_ab").tags, "osmAG:to", "ghost");
    return serialize(doc);
  }
  if (name == "duplicate_id") {
    OsmDocument doc = two_rooms_builder().build();
    set_tag(way_named(doc, "room_b").tags, "osmAG:id", "room_a");
    return serialize(doc);
  }
  throw std::invalid_argument("unknown defect " + std::string(name));
}

}  // namespace osmag::fixtures
