#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "osmag/model.hpp"

namespace osmag {

namespace {

Diagnostic error(std::string code, std::string subject, std::string message) {
  return {Severity::error, std::move(code), std::move(subject), std::move(message)};
}

Diagnostic warning(std::string code, std::string subject, std::string message) {
  return {Severity::warning, std::move(code), std::move(subject), std::move(message)};
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << v;
  return s.str();
}

// Each polyline node must coincide with some ring node of the area.
bool coincides_with_ring(const MapModel& model, const Passage& p, const Area& area) {
  for (auto ref : p.polyline) {
    const LocalPoint at = model.nodes.at(ref).local;
    bool found = false;
    for (auto r : area.ring) {
      if (r == ref || distance(model.nodes.at(r).local, at) <= kNodeMergeTolerance) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool shares_all_nodes(const Passage& p, const Area& area) {
  return std::all_of(p.polyline.begin(), p.polyline.end(), [&](std::int64_t ref) {
    return std::find(area.ring.begin(), area.ring.end(), ref) != area.ring.end();
  });
}

}  // namespace

std::vector<Diagnostic> validate(const MapModel& model) {
  std::vector<Diagnostic> out;

  // Rings.
  for (const auto& [id, area] : model.areas) {
    if (!area.closed()) out.push_back(error("OPEN_RING", id, "area ring is not closed (first node must repeat as last)"));
    if (area.polygon.empty()) {
      out.push_back(error("DEGENERATE_RING", id, "area ring has fewer than 3 distinct vertices or zero area"));
      continue;
    }
    if (ring_self_intersects(area.polygon.vertices()))
      out.push_back(error("SELF_INTERSECT", id, "area ring intersects itself"));
  }

  // Hierarchy.
  for (const auto& [id, area] : model.areas) {
    if (!area.parent) continue;
    const Area* parent = model.find_area(*area.parent);
    if (!parent || *area.parent == id) {
      out.push_back(error("BAD_PARENT", id, "osmAG:parent '" + *area.parent + "' does not name another area"));
      continue;
    }
    // Cycle check: walk up at most |areas| steps.
    const Area* cur = &area;
    bool cycle = false;
    for (std::size_t steps = 0; cur->parent; ++steps) {
      const Area* next = model.find_area(*cur->parent);
      if (!next) break;
      if (next == &area || steps > model.areas.size()) {
        cycle = true;
        break;
      }
      cur = next;
    }
    if (cycle) {
      out.push_back(error("BAD_PARENT", id, "parent links form a cycle"));
      continue;
    }
    if (!area.polygon.empty() && !parent->polygon.empty() &&
        !polygon_contains_polygon(parent->polygon, area.polygon, kContainmentTolerance))
      out.push_back(error("CONTAINMENT", id, "area is not contained in its parent '" + parent->id + "'"));
  }

  // Overlap between same-height areas outside an ancestor relation.
  std::vector<const Area*> shaped;
  for (const auto& [id, area] : model.areas)
    if (!area.polygon.empty()) shaped.push_back(&area);
  for (std::size_t i = 0; i < shaped.size(); ++i) {
    for (std::size_t j = i + 1; j < shaped.size(); ++j) {
      const Area& a = *shaped[i];
      const Area& b = *shaped[j];
      if (std::abs(a.height - b.height) > kHeightTolerance) continue;
      if (!a.polygon.bounds().intersects(b.polygon.bounds())) continue;
      if (is_ancestor(model, a.id, b.id) || is_ancestor(model, b.id, a.id)) continue;
      double overlap = polygons_overlap_area(a.polygon, b.polygon);
      if (overlap > kOverlapTolerance)
        out.push_back(error("OVERLAP", a.id, "overlaps area '" + b.id + "' by " + fmt(overlap) + " m^2"));
    }
  }

  // Passages.
  for (const auto& [id, p] : model.passages) {
    const Area* from = model.find_area(p.from_area);
    const Area* to = model.find_area(p.to_area);
    if (!from || !to) {
      out.push_back(error("DANGLING_AREA", id, "passage names an unknown area"));
      continue;
    }
    if (p.from_area == p.to_area) {
      out.push_back(error("PASSAGE_ENDPOINTS", id, "passage connects area '" + p.from_area + "' to itself"));
      continue;
    }
    bool ok = p.polyline.size() >= 2;
    if (ok && p.vertical)
      ok = coincides_with_ring(model, p, *from) && coincides_with_ring(model, p, *to);
    else if (ok)
      ok = shares_all_nodes(p, *from) && shares_all_nodes(p, *to);
    if (!ok)
      out.push_back(error("PASSAGE_SHARE", id,
                          p.vertical ? "vertical passage nodes do not coincide with both areas' rings"
                                     : "passage nodes are not shared by both areas' rings"));
    if (!model.is_leaf(p.from_area) || !model.is_leaf(p.to_area))
      out.push_back(warning("MIXED_DEPTH_PASSAGE", id, "passage touches a non-leaf area; ignored by the planner"));
  }

  for (const auto& [id, area] : model.areas)
    if (!area.parent && model.is_leaf(id))
      out.push_back(warning("ISOLATED", id, "area has neither parent nor children"));

  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::string(d.severity == Severity::error ? "ERROR" : "WARNING") + " " + d.code + " " + d.subject + ": " +
         d.message;
}

}  // namespace osmag
