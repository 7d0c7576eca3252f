#include "osmag/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"
#include "osmag/error.hpp"
#include "xml.hpp"

namespace osmag {

namespace {

std::string num(double v) {
  v = std::round(v * 1000.0) / 1000.0;
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  std::string s(buf, end);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string points(const std::vector<LocalPoint>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ' ';
    out += num(p.x) + "," + num(-p.y);
  }
  return out;
}

int depth_of(const MapModel& model, const Area& a) { return static_cast<int>(ancestors_of(model, a.id).size()); }

std::string label_for(const Tags& tags, const std::string& fallback) {
  for (const char* key : {"name", "highway", "door", "stairs"})
    if (const std::string* v = find_tag(tags, key)) return std::string(key) == "name" ? *v : std::string(key) + "=" + *v;
  return fallback;
}

}  // namespace

RenderStyle style_for_level(double height) {
  RenderStyle s;
  s.level_min = height - kHeightTolerance;
  s.level_max = height + kHeightTolerance;
  return s;
}

RenderStyle parse_render_style(std::string_view json_text, RenderStyle s) {
  try {
    const auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) throw Error(Errc::BadStyle, "style must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "wall_width") s.wall_width = value.get<double>();
      else if (key == "inner_fill") s.inner_fill = value.get<std::string>();
      else if (key == "structure_fill") s.structure_fill = value.get<std::string>();
      else if (key == "wall_stroke") s.wall_stroke = value.get<std::string>();
      else if (key == "passage_stroke") s.passage_stroke = value.get<std::string>();
      else if (key == "passage_width") s.passage_width = value.get<double>();
      else if (key == "route_stroke") s.route_stroke = value.get<std::string>();
      else if (key == "route_width") s.route_width = value.get<double>();
      else if (key == "level_min") s.level_min = value.get<double>();
      else if (key == "level_max") s.level_max = value.get<double>();
      else if (key == "labels") s.labels = value.get<bool>();
      else if (key == "font_size") s.font_size = value.get<double>();
      else throw Error(Errc::BadStyle, "unknown style key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadStyle, e.what());
  }
  return s;
}

std::string render_svg(const MapModel& model, const RenderStyle& style, const Route* route) {
  if (!(style.wall_width > 0 && style.passage_width > 0 && style.route_width > 0 && style.font_size > 0))
    throw Error(Errc::BadStyle, "stroke widths and font size must be positive");
  if (!(style.level_min <= style.level_max)) throw Error(Errc::BadStyle, "height band is empty");
  auto in_band = [&](double h) { return h >= style.level_min && h <= style.level_max; };

  std::vector<const Area*> areas;
  for (const auto& [id, a] : model.areas)
    if (in_band(a.height) && a.outline.size() >= 3) areas.push_back(&a);
  if (areas.empty())
    throw Error(Errc::EmptySelection, "no area between heights " + num(style.level_min) + " and " + num(style.level_max));
  std::vector<std::pair<int, const Area*>> ordered;
  for (const Area* a : areas) ordered.emplace_back(depth_of(model, *a), a);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<const Passage*> passages;
  for (const auto& [id, p] : model.passages) {
    const Area* from = model.find_area(p.from_area);
    const Area* to = model.find_area(p.to_area);
    if (p.points.size() >= 2 && ((from && in_band(from->height)) || (to && in_band(to->height)))) passages.push_back(&p);
  }

  BoundingBox box{1e300, 1e300, -1e300, -1e300};
  auto grow = [&](LocalPoint p) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  };
  for (const Area* a : areas)
    for (const auto& p : a->outline) grow(p);
  for (const Passage* p : passages)
    for (const auto& q : p->points) grow(q);
  if (route)
    for (const auto& leg : route->legs)
      if (in_band(leg.height))
        for (const auto& q : leg.polyline) grow(q);
  constexpr double margin = 1.0;
  const double vx = box.min_x - margin, vy = -box.max_y - margin;
  const double vw = box.max_x - box.min_x + 2 * margin, vh = box.max_y - box.min_y + 2 * margin;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(vx) + " " + num(vy) + " " +
         num(vw) + " " + num(vh) + "\" width=\"" + num(vw * 20) + "\" height=\"" + num(vh * 20) + "\">\n";
  out += "<!-- map x,y in metres drawn at svg x,-y -->\n";
  out += "<g id=\"areas\" stroke=\"" + xml::escape(style.wall_stroke) + "\" stroke-width=\"" + num(style.wall_width) +
         "\" stroke-linejoin=\"round\">\n";
  for (const auto& [depth, a] : ordered) {
    const bool inner = a->type == AreaType::inner;
    out += "<polygon id=\"area:" + xml::escape(a->id) + "\" class=\"" + (inner ? "inner" : "structure") +
           "\" fill=\"" + xml::escape(inner ? style.inner_fill : style.structure_fill) + "\" points=\"" +
           points(a->outline) + "\"/>\n";
  }
  out += "</g>\n";
  out += "<g id=\"passages\" stroke=\"" + xml::escape(style.passage_stroke) + "\" stroke-width=\"" +
         num(style.passage_width) + "\" fill=\"none\" stroke-linecap=\"round\">\n";
  for (const Passage* p : passages)
    out += "<polyline id=\"passage:" + xml::escape(p->id) + "\" class=\"passage" + (p->vertical ? " vertical" : "") +
           "\" points=\"" + points(p->points) + "\"/>\n";
  out += "</g>\n";
  if (route && !route->legs.empty()) {
    out += "<g id=\"route\" stroke=\"" + xml::escape(style.route_stroke) + "\" stroke-width=\"" +
           num(style.route_width) + "\" fill=\"none\" stroke-linejoin=\"round\">\n";
    for (const auto& leg : route->legs) {
      out += "<polyline class=\"leg\" data-area=\"" + xml::escape(leg.area) + "\"";
      if (!in_band(leg.height)) out += " stroke-dasharray=\"" + num(style.route_width * 2) + "\" opacity=\"0.5\"";
      out += " points=\"" + points(leg.polyline) + "\"/>\n";
    }
    out += "</g>\n";
  }
  if (style.labels) {
    out += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"" + num(style.font_size) +
           "\" text-anchor=\"middle\" fill=\"#222222\">\n";
    for (const auto& [depth, a] : ordered) {
      if (!model.is_leaf(a->id) || a->polygon.empty()) continue;
      const LocalPoint c = polygon_centroid(a->polygon);
      out += "<text x=\"" + num(c.x) + "\" y=\"" + num(-c.y) + "\">" + xml::escape(label_for(a->tags, a->id)) +
             "</text>\n";
    }
    for (const Passage* p : passages) {
      if (!find_tag(p->tags, "highway") && !find_tag(p->tags, "door") && !find_tag(p->tags, "stairs")) continue;
      const LocalPoint m = polyline_midpoint(p->points);
      out += "<text class=\"passage-label\" x=\"" + num(m.x) + "\" y=\"" + num(-m.y) + "\">" +
             xml::escape(label_for(p->tags, p->id)) + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace osmag
