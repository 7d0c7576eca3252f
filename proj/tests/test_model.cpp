#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "osmag/error.hpp"
#include "osmag/model.hpp"
#include "test_util.hpp"

using namespace osmag;

namespace {

Errc build_error(std::string_view xml) {
  try {
    build_model(parse_osm(xml));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a build error");
  return Errc::Io;
}

}  // namespace

TEST_CASE("valid fixtures have no validation errors") {
  for (const auto& name : fixtures::valid_fixture_names()) {
    CAPTURE(name);
    const auto diagnostics = validate(load_fixture(name));
    for (const auto& d : diagnostics)
      if (d.severity == Severity::error) MESSAGE(format_diagnostic(d));
    CHECK_FALSE(has_errors(diagnostics));
  }
}

TEST_CASE("each seeded defect yields exactly its code") {
  for (const auto& [stem, code] : fixtures::defect_fixtures()) {
    CAPTURE(stem);
    const auto path = std::filesystem::path(OSMAG_FIXTURE_DIR) / "defects" / (stem + ".osm");
    std::set<std::string> codes;
    try {
      for (const auto& d : validate(load_model(path)))
        if (d.severity == Severity::error) codes.insert(d.code);
    } catch (const Error& e) {
      std::string upper;
      for (char ch : to_string(e.code())) {
        if (std::isupper(static_cast<unsigned char>(ch)) && !upper.empty()) upper += '_';
        upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      }
      codes.insert(upper);
    }
    CHECK(codes == std::set<std::string>{code});
  }
}

TEST_CASE("isolated areas are reported as warnings") {
  fixtures::MapBuilder b;
  b.area("lonely", fixtures::rect(0, 0, 4, 4), 0);
  const auto diagnostics = validate(model_from(b));
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].severity == Severity::warning);
  CHECK(diagnostics[0].code == "ISOLATED");
}

TEST_CASE("build failures use their own error codes") {
  CHECK(build_error(R"(<osm><node id="1" lat="0" lon="0"/><way id="2"><nd ref="1"/>
    <tag k="osmAG:type" v="area"/><tag k="osmAG:id" v="a"/></way></osm>)") == Errc::MissingRootAnchor);
  CHECK(build_error(R"(<osm><node id="1" lat="0" lon="0"><tag k="osmAG:type" v="root"/></node>
    <node id="2" lat="0" lon="0"><tag k="osmAG:type" v="root"/></node></osm>)") == Errc::DuplicateRootAnchor);
  CHECK(build_error(R"(<osm><node id="1" lat="0" lon="0"><tag k="osmAG:type" v="root"/></node>
    <way id="2"><nd ref="1"/><tag k="osmAG:type" v="hallway"/><tag k="osmAG:id" v="a"/></way></osm>)") ==
        Errc::UnknownOsmagType);
}

TEST_CASE("heights are inherited from the parent") {
  fixtures::MapBuilder b;
  b.area("floor", fixtures::rect(0, 0, 10, 10), 3, {.structure = true});
  b.area("room", fixtures::rect(0, 0, 5, 10), 3, {.parent = "floor", .tag_height = false});
  b.area("other", fixtures::rect(5, 0, 10, 10), 3, {.parent = "floor", .tag_height = false});
  b.passage("door", "room", "other", {{5, 4}, {5, 5}});
  const MapModel m = model_from(b);
  CHECK(find_tag(m.area("room").tags, "height") == nullptr);
  CHECK(m.area("room").height == 3.0);
}

TEST_CASE("hierarchy queries") {
  const MapModel m = load_fixture("office_floor");
  const auto up = ancestors_of(m, "office.F0.R03");
  REQUIRE(up.size() == 3);
  CHECK(up[0]->id == "office.F0.W0");
  CHECK(up[1]->id == "office.F0");
  CHECK(up[2]->id == "office");
  CHECK(is_ancestor(m, "office", "office.F0.R03"));
  CHECK_FALSE(is_ancestor(m, "office.F0.R03", "office"));
  CHECK((*parent_of(m, "office.F0"))->id == "office");
  CHECK(children_of(m, "office.F0").size() == 3);
  CHECK(m.is_leaf("office.F0.R03"));
  CHECK_FALSE(m.is_leaf("office.F0"));
}

TEST_CASE("parent links terminate at a root") {
  for (const auto& name : fixtures::valid_fixture_names()) {
    const MapModel m = load_fixture(name);
    for (const auto& [id, area] : m.areas) {
      std::size_t steps = 0;
      std::optional<std::string> p = area.parent;
      while (p && steps <= m.areas.size()) {
        p = m.area(*p).parent;
        ++steps;
      }
      CHECK(steps <= m.areas.size());
    }
  }
}

TEST_CASE("indices match a rebuild and list every passage at both ends") {
  for (const char* name : {"two_buildings", "campus", "l_shaped"}) {
    const MapModel m = load_fixture(name);
    for (const auto& [id, p] : m.passages) {
      for (const auto& end : {p.from_area, p.to_area}) {
        const auto& list = m.area_passages_index.at(end);
        CHECK(std::find(list.begin(), list.end(), id) != list.end());
      }
    }
    MapModel copy = m;
    copy.children_index.clear();
    copy.area_passages_index.clear();
    reindex(copy);
    CHECK(copy.children_index == m.children_index);
    CHECK(copy.area_passages_index == m.area_passages_index);
    CHECK(copy.tree_roots == m.tree_roots);
  }
}

TEST_CASE("locate agrees with a brute-force scan") {
  for (const char* name : {"l_shaped", "two_buildings", "two_floor", "campus"}) {
    const MapModel m = load_fixture(name);
    std::mt19937 rng(42);
    double min_x = 1e18, min_y = 1e18, max_x = -1e18, max_y = -1e18;
    std::vector<double> heights;
    for (const auto& [id, a] : m.areas) {
      min_x = std::min(min_x, a.polygon.bounds().min_x);
      min_y = std::min(min_y, a.polygon.bounds().min_y);
      max_x = std::max(max_x, a.polygon.bounds().max_x);
      max_y = std::max(max_y, a.polygon.bounds().max_y);
      heights.push_back(a.height);
    }
    std::uniform_real_distribution<double> ux(min_x - 2, max_x + 2), uy(min_y - 2, max_y + 2);
    std::uniform_int_distribution<std::size_t> uh(0, heights.size() - 1);
    for (int i = 0; i < 1000; ++i) {
      const LocalPoint p{ux(rng), uy(rng)};
      const double h = heights[uh(rng)];
      const Area* got = locate(m, p, h);
      const Area* want = oracle::brute_locate(m, p, h);
      CAPTURE(name);
      CHECK(got == want);
    }
  }
}

TEST_CASE("locate examples") {
  const MapModel m = load_fixture("two_floor");
  const Area& room = m.area("tower.F0.R03");
  CHECK(locate(m, polygon_centroid(room.polygon), room.height) == &room);
  CHECK(locate(m, {1000, 1000}, 0) == nullptr);
  const Area* upstairs = locate(m, polygon_centroid(room.polygon), 4.0);
  REQUIRE(upstairs != nullptr);
  CHECK(upstairs->height == 4.0);
  CHECK(upstairs->id.starts_with("tower.F1"));
}

TEST_CASE("structure areas are never located") {
  const MapModel m = load_fixture("office_floor");
  const Area* a = locate(m, {1.0, 12.5}, 0);  // inside shaft-free room space
  if (a) CHECK(a->type == AreaType::inner);
  for (const auto& [id, area] : m.areas) {
    if (area.type != AreaType::structure || !m.is_leaf(id)) continue;
    const Area* hit = locate(m, polygon_centroid(area.polygon), area.height);
    CHECK((hit == nullptr || hit->type == AreaType::inner));
  }
}
