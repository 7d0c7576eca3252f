#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osmag/geo.hpp"
#include "osmag/osm_document.hpp"

namespace osmag::fixtures {

inline constexpr double kLat0 = 31.1790;
inline constexpr double kLon0 = 121.5900;

std::vector<LocalPoint> rect(double x0, double y0, double x1, double y1);

struct AreaOptions {
  std::optional<std::string> parent;
  bool structure = false;
  bool tag_height = true;
  Tags tags;
};

/// Builds osmAG documents from polygons in local metres. Nodes at the same
/// (x, y, height) are shared; ring edges get a vertex wherever another
/// registered point of the same height lies on them, so passages and
/// T-junctions always share ring nodes.
class MapBuilder {
 public:
  explicit MapBuilder(double lat0 = kLat0, double lon0 = kLon0) : root_{1, lat0, lon0} {}

  using AreaOptions = fixtures::AreaOptions;
  void area(const std::string& id, std::vector<LocalPoint> ring, double height, AreaOptions options = {});

  /// Both areas must already exist. Vertical passages register their
  /// points on both heights and reuse the nodes of the `from` level.
  void passage(const std::string& id, const std::string& from, const std::string& to, std::vector<LocalPoint> points,
               Tags tags = {});

  /// Standalone tagged node (not part of any way).
  void point(LocalPoint p, Tags tags);

  OsmDocument build() const;
  std::string xml() const { return serialize(build()); }
  const RootAnchor& root() const { return root_; }

 private:
  struct AreaDef {
    std::string id;
    std::vector<LocalPoint> ring;
    double height;
    AreaOptions options;
  };
  struct PassageDef {
    std::string id, from, to;
    std::vector<LocalPoint> points;
    Tags tags;
  };
  const AreaDef& find(const std::string& id) const;

  RootAnchor root_;
  std::vector<AreaDef> areas_;
  std::vector<PassageDef> passages_;
  std::vector<std::pair<LocalPoint, Tags>> points_;
};

/// One building: structure outline, one floor area per storey, three wing
/// areas per floor. A floor (local to `origin`) has a corridor band
/// y in [6, 9] split across the wings, rooms north and south, an elevator
/// cab at the west end, stairs at the east end and four shafts.
void add_building(MapBuilder& b, const std::string& id, LocalPoint origin, int floors, double floor_height,
                  const std::optional<std::string>& parent);
/// Corridor leaf at the given end (west = 0, east = 1) of floor 0, and the
/// door span on the building wall.
std::string entrance_corridor(const std::string& building, int end);
std::vector<LocalPoint> entrance_span(LocalPoint origin, int end);

std::vector<std::string> valid_fixture_names();
std::string make_fixture(std::string_view name);
std::string campus();

/// (file stem, diagnostic code the map must produce).
std::vector<std::pair<std::string, std::string>> defect_fixtures();
std::string make_defect(std::string_view name);

/// Local point of a building-relative position.
inline LocalPoint at(LocalPoint origin, double x, double y) { return {origin.x + x, origin.y + y}; }

}  // namespace osmag::fixtures
