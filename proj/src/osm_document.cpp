#include "osmag/osm_document.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "osmag/error.hpp"
#include "xml.hpp"

namespace osmag {

const std::string* find_tag(const Tags& tags, std::string_view key) {
  for (const auto& t : tags)
    if (t.key == key) return &t.value;
  return nullptr;
}

void set_tag(Tags& tags, std::string_view key, std::string_view value) {
  for (auto& t : tags) {
    if (t.key == key) {
      t.value = std::string(value);
      return;
    }
  }
  tags.push_back({std::string(key), std::string(value)});
}

void erase_tag(Tags& tags, std::string_view key) {
  std::erase_if(tags, [&](const Tag& t) { return t.key == key; });
}

namespace {

std::string where(const xml::Element& el) {
  return "<" + el.name + "> at line " + std::to_string(el.line) + ", column " +
         std::to_string(el.column);
}

const std::string& required(const xml::Element& el, std::string_view attr) {
  const std::string* v = el.attribute(attr);
  if (!v) throw Error(Errc::MissingAttribute, where(el) + " lacks attribute '" + std::string(attr) + "'");
  return *v;
}

std::int64_t parse_id(const xml::Element& el, std::string_view attr) {
  const std::string& text = required(el, attr);
  std::int64_t id = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (ec != std::errc() || p != text.data() + text.size())
    throw Error(Errc::MissingAttribute, where(el) + " has non-integer " + std::string(attr) + "=\"" + text + "\"");
  return id;
}

double parse_coordinate(const xml::Element& el, std::string_view attr, double limit) {
  const std::string& text = required(el, attr);
  double value = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p != text.data() + text.size() || !std::isfinite(value) || std::abs(value) > limit)
    throw Error(Errc::NonNumericCoordinate, where(el) + " has " + std::string(attr) + "=\"" + text + "\"");
  return value;
}

Tags parse_tags(const xml::Element& el) {
  Tags tags;
  for (const auto& child : el.children)
    if (child.name == "tag") tags.push_back({required(child, "k"), required(child, "v")});
  return tags;
}

Attributes extra_attributes(const xml::Element& el, std::initializer_list<std::string_view> skip) {
  Attributes out;
  for (const auto& [k, v] : el.attributes)
    if (std::find(skip.begin(), skip.end(), k) == skip.end()) out.emplace_back(k, v);
  return out;
}

// Attribute order on output: version first (defaulted), the rest by key.
Attributes normalized(Attributes attrs, bool default_version) {
  std::stable_sort(attrs.begin(), attrs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto version = std::find_if(attrs.begin(), attrs.end(), [](const auto& a) { return a.first == "version"; });
  if (version != attrs.end()) {
    std::rotate(attrs.begin(), version, version + 1);
  } else if (default_version) {
    attrs.insert(attrs.begin(), {"version", "1"});
  }
  return attrs;
}

void write_attributes(std::string& out, const Attributes& attrs) {
  for (const auto& [k, v] : attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += xml::escape(v);
    out += '"';
  }
}

void write_tags(std::string& out, Tags tags) {
  std::stable_sort(tags.begin(), tags.end());
  for (const auto& t : tags) {
    out += "    <tag k=\"";
    out += xml::escape(t.key);
    out += "\" v=\"";
    out += xml::escape(t.value);
    out += "\"/>\n";
  }
}

Tags sorted(Tags t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

OsmDocument parse_osm(std::string_view bytes) {
  xml::Element root = xml::parse(bytes);
  if (root.name != "osm") throw Error(Errc::XmlSyntax, "root element is <" + root.name + ">, expected <osm>");
  OsmDocument doc;
  doc.osm_attributes = root.attributes;
  bool seen_data = false;
  for (const auto& el : root.children) {
    if (el.name == "node") {
      OsmNode node;
      node.id = parse_id(el, "id");
      node.lat = parse_coordinate(el, "lat", 90.0);
      node.lon = parse_coordinate(el, "lon", 180.0);
      node.tags = parse_tags(el);
      node.attributes = extra_attributes(el, {"id", "lat", "lon"});
      doc.nodes.push_back(std::move(node));
      seen_data = true;
    } else if (el.name == "way") {
      OsmWay way;
      way.id = parse_id(el, "id");
      for (const auto& child : el.children)
        if (child.name == "nd") way.refs.push_back(parse_id(child, "ref"));
      way.tags = parse_tags(el);
      way.attributes = extra_attributes(el, {"id"});
      doc.ways.push_back(std::move(way));
      seen_data = true;
    } else {
      std::string fragment(bytes.substr(el.begin, el.end - el.begin));
      if (!seen_data && (el.name == "bounds" || el.name == "bound"))
        doc.leading.push_back(std::move(fragment));
      else
        doc.trailing.push_back(std::move(fragment));
    }
  }
  return doc;
}

std::string format_coordinate(double degrees) {
  if (degrees == 0.0) degrees = 0.0;  // no "-0"
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, degrees, std::chars_format::fixed, 7);
  std::string out(buf, p);
  if (out == "-0.0000000") out = "0.0000000";
  return out;
}

std::string serialize(const OsmDocument& doc) {
  std::string out;
  out.reserve(128 * (doc.nodes.size() + doc.ways.size()) + 256);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<osm";
  Attributes osm_attrs = doc.osm_attributes;
  if (std::none_of(osm_attrs.begin(), osm_attrs.end(), [](const auto& a) { return a.first == "version"; }))
    osm_attrs.emplace_back("version", "0.6");
  std::stable_sort(osm_attrs.begin(), osm_attrs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  write_attributes(out, osm_attrs);
  out += ">\n";
  for (const auto& fragment : doc.leading) {
    out += "  ";
    out += fragment;
    out += '\n';
  }

  std::vector<const OsmNode*> nodes;
  for (const auto& n : doc.nodes) nodes.push_back(&n);
  std::stable_sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const OsmNode* n : nodes) {
    out += "  <node id=\"" + std::to_string(n->id) + "\" lat=\"" + format_coordinate(n->lat) + "\" lon=\"" +
           format_coordinate(n->lon) + '"';
    write_attributes(out, normalized(n->attributes, true));
    if (n->tags.empty()) {
      out += "/>\n";
    } else {
      out += ">\n";
      write_tags(out, n->tags);
      out += "  </node>\n";
    }
  }

  std::vector<const OsmWay*> ways;
  for (const auto& w : doc.ways) ways.push_back(&w);
  std::stable_sort(ways.begin(), ways.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const OsmWay* w : ways) {
    out += "  <way id=\"" + std::to_string(w->id) + '"';
    write_attributes(out, normalized(w->attributes, true));
    out += ">\n";
    for (auto ref : w->refs) out += "    <nd ref=\"" + std::to_string(ref) + "\"/>\n";
    write_tags(out, w->tags);
    out += "  </way>\n";
  }
  for (const auto& fragment : doc.trailing) {
    out += "  ";
    out += fragment;
    out += '\n';
  }
  out += "</osm>\n";
  return out;
}

bool structurally_equal(const OsmDocument& a, const OsmDocument& b) {
  if (a.nodes.size() != b.nodes.size() || a.ways.size() != b.ways.size()) return false;
  std::map<std::int64_t, const OsmNode*> nodes;
  for (const auto& n : a.nodes) nodes[n.id] = &n;
  if (nodes.size() != a.nodes.size()) return false;
  for (const auto& n : b.nodes) {
    auto it = nodes.find(n.id);
    if (it == nodes.end()) return false;
    const OsmNode& m = *it->second;
    if (m.lat != n.lat || m.lon != n.lon || sorted(m.tags) != sorted(n.tags)) return false;
  }
  std::map<std::int64_t, const OsmWay*> ways;
  for (const auto& w : a.ways) ways[w.id] = &w;
  if (ways.size() != a.ways.size()) return false;
  for (const auto& w : b.ways) {
    auto it = ways.find(w.id);
    if (it == ways.end()) return false;
    if (it->second->refs != w.refs || sorted(it->second->tags) != sorted(w.tags)) return false;
  }
  auto all_fragments = [](const OsmDocument& d) {
    std::vector<std::string> f = d.leading;
    f.insert(f.end(), d.trailing.begin(), d.trailing.end());
    return f;
  };
  return all_fragments(a) == all_fragments(b);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

}  // namespace osmag
