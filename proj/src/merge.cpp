#include "osmag/merge.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_map>

#include "osmag/error.hpp"

namespace osmag {

namespace {

struct CellKey {
  std::int64_t x, y;
  bool operator==(const CellKey&) const = default;
};
struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    return std::hash<std::int64_t>()(k.x * 73856093LL ^ k.y * 19349663LL);
  }
};

// Heights of the areas each osmAG node belongs to.
std::map<std::int64_t, std::vector<double>> node_heights(const MapModel& m) {
  std::map<std::int64_t, std::vector<double>> out;
  auto add = [&](std::int64_t node, double h) {
    auto& v = out[node];
    if (std::find(v.begin(), v.end(), h) == v.end()) v.push_back(h);
  };
  for (const auto& [id, area] : m.areas)
    for (auto n : area.ring) add(n, area.height);
  for (const auto& [id, p] : m.passages)
    for (const auto* end : {&p.from_area, &p.to_area})
      if (const Area* area = m.find_area(*end))
        for (auto n : p.polyline) add(n, area->height);
  return out;
}

bool same_levels(const std::vector<double>& a, const std::vector<double>& b) {
  auto covered = [](const std::vector<double>& x, const std::vector<double>& y) {
    return std::all_of(x.begin(), x.end(), [&](double h) {
      return std::any_of(y.begin(), y.end(), [&](double k) { return std::abs(h - k) <= kHeightTolerance; });
    });
  };
  return !a.empty() && !b.empty() && covered(a, b) && covered(b, a);
}

bool is_root(const GeoNode& n) {
  const std::string* type = find_tag(n.tags, "osmAG:type");
  return type && *type == "root";
}

}  // namespace

std::pair<MapModel, MergeReport> merge_maps(const MapModel& a, const MapModel& b, double threshold) {
  MergeReport report;
  if (b.areas.empty() && b.passages.empty() && b.opaque_ways.empty()) return {a, report};
  if (a.areas.empty() && a.passages.empty() && a.opaque_ways.empty() && a.nodes.empty()) return {b, report};
  if (!a.root || !b.root) throw Error(Errc::MissingRootAnchor, "both maps need a root anchor to be merged");
  const double separation = distance(to_local(b.root->lat0, b.root->lon0, *a.root), {0.0, 0.0});
  if (separation > kMaxRootSeparation)
    throw Error(Errc::IncompatibleRoots, "root anchors are " + std::to_string(separation) + " m apart");

  // Candidate pairs through a bucket grid over a's nodes.
  const auto heights_a = node_heights(a);
  const auto heights_b = node_heights(b);
  std::unordered_map<CellKey, std::vector<std::int64_t>, CellHash> buckets;
  const double cell = std::max(threshold, 1e-6);
  auto key_of = [&](LocalPoint p) {
    return CellKey{static_cast<std::int64_t>(std::floor(p.x / cell)), static_cast<std::int64_t>(std::floor(p.y / cell))};
  };
  for (const auto& [id, h] : heights_a) buckets[key_of(a.nodes.at(id).local)].push_back(id);

  std::vector<std::tuple<double, std::int64_t, std::int64_t>> pairs;  // distance, b id, a id
  std::map<std::int64_t, LocalPoint> b_local;
  for (const auto& [id, node] : b.nodes) b_local[id] = to_local(node.lat, node.lon, *a.root);
  for (const auto& [bid, hb] : heights_b) {
    const LocalPoint p = b_local.at(bid);
    const CellKey k = key_of(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({k.x + dx, k.y + dy});
        if (it == buckets.end()) continue;
        for (auto aid : it->second) {
          const double d = distance(p, a.nodes.at(aid).local);
          if (d <= threshold && same_levels(heights_a.at(aid), hb)) pairs.emplace_back(d, bid, aid);
        }
      }
  }
  std::sort(pairs.begin(), pairs.end());
  std::map<std::int64_t, std::int64_t> node_map;  // b node -> result node
  std::set<std::int64_t> used_a;
  for (const auto& [d, bid, aid] : pairs) {
    if (node_map.contains(bid) || used_a.contains(aid)) continue;
    node_map[bid] = aid;
    used_a.insert(aid);
    ++report.consolidated_node_pairs;
  }

  OsmDocument doc = to_document(a);
  const OsmDocument db = to_document(b);

  // Fresh negative ids below everything in use.
  std::int64_t next_node = 0, next_way = 0;
  for (const auto& n : doc.nodes) next_node = std::min(next_node, n.id);
  for (const auto& n : db.nodes) next_node = std::min(next_node, n.id);
  for (const auto& w : doc.ways) next_way = std::min(next_way, w.id);
  for (const auto& w : db.ways) next_way = std::min(next_way, w.id);
  std::set<std::int64_t> node_ids, way_ids;
  for (const auto& n : doc.nodes) node_ids.insert(n.id);
  for (const auto& w : doc.ways) way_ids.insert(w.id);

  std::set<std::int64_t> referenced;
  for (const auto& w : db.ways) referenced.insert(w.refs.begin(), w.refs.end());
  for (const auto& n : db.nodes) {
    if (node_map.contains(n.id)) continue;
    OsmNode copy = n;
    if (is_root(b.nodes.at(n.id))) {
      if (!referenced.contains(n.id)) continue;
      erase_tag(copy.tags, "osmAG:type");
    }
    if (node_ids.contains(copy.id)) copy.id = --next_node;
    node_map[n.id] = copy.id;
    node_ids.insert(copy.id);
    doc.nodes.push_back(std::move(copy));
  }

  // osmAG ids of b that collide with a get a deterministic suffix.
  std::set<std::string> taken;
  for (const auto& [id, area] : a.areas) taken.insert(id);
  for (const auto& [id, p] : a.passages) taken.insert(id);
  for (const auto& [id, area] : b.areas) taken.insert(id);
  for (const auto& [id, p] : b.passages) taken.insert(id);
  auto rename = [&](const std::string& id) {
    if (!a.areas.contains(id) && !a.passages.contains(id)) return;
    for (int n = 1;; ++n) {
      std::string candidate = id + ".m" + std::to_string(n);
      if (taken.insert(candidate).second) {
        report.renamed_ids[id] = candidate;
        return;
      }
    }
  };
  for (const auto& [id, area] : b.areas) rename(id);
  for (const auto& [id, p] : b.passages) rename(id);
  auto renamed = [&](const std::string& id) {
    auto it = report.renamed_ids.find(id);
    return it == report.renamed_ids.end() ? id : it->second;
  };

  for (const auto& w : db.ways) {
    OsmWay copy = w;
    for (auto& r : copy.refs) r = node_map.at(r);
    for (const char* key : {"osmAG:id", "osmAG:parent", "osmAG:from", "osmAG:to"})
      if (const std::string* v = find_tag(copy.tags, key)) {
        // Ids of b that name areas absent from b refer to a and stay as they are.
        if (std::string_view(key) != "osmAG:id" && !b.areas.contains(*v)) continue;
        set_tag(copy.tags, key, renamed(*v));
      }
    if (way_ids.contains(copy.id)) copy.id = --next_way;
    way_ids.insert(copy.id);
    doc.ways.push_back(std::move(copy));
  }

  MapModel merged;
  try {
    merged = build_model(doc);
  } catch (const Error& e) {
    throw Error(Errc::ValidationFailed, std::string("merged map does not build: ") + e.what());
  }
  std::vector<Diagnostic> diagnostics = validate(merged);
  if (has_errors(diagnostics)) {
    std::string message = "merged map has errors:";
    for (const auto& d : diagnostics)
      if (d.severity == Severity::error) message += "\n" + format_diagnostic(d);
    throw Error(Errc::ValidationFailed, message);
  }
  report.conflicts = std::move(diagnostics);
  return {std::move(merged), report};
}

}  // namespace osmag
