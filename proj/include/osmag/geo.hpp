#pragma once

#include <span>
#include <vector>

namespace osmag {

/// Metres east (x) and north (y) of the map's root anchor.
struct LocalPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
};

struct RootAnchor {
  long long node_id = 0;
  double lat0 = 0.0;
  double lon0 = 0.0;
};

/// WGS84 semi-major axis.
inline constexpr double kEarthRadius = 6378137.0;

/// Equirectangular tangent-plane projection around the root anchor.
LocalPoint to_local(double lat, double lon, const RootAnchor& root);

struct GeoCoordinate {
  double lat = 0.0;
  double lon = 0.0;
};
GeoCoordinate from_local(LocalPoint p, const RootAnchor& root);

double distance(LocalPoint a, LocalPoint b);

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  bool intersects(const BoundingBox& o, double slack = 0.0) const {
    return min_x <= o.max_x + slack && o.min_x <= max_x + slack && min_y <= o.max_y + slack &&
           o.min_y <= max_y + slack;
  }
};

/// Simple polygon stored counter-clockwise without a repeated closing vertex.
class Polygon2D {
 public:
  Polygon2D() = default;

  /// Drops consecutive duplicate vertices (and a closing duplicate) and
  /// reorients to counter-clockwise. Throws DegeneratePolygon below three
  /// distinct vertices or for zero area.
  explicit Polygon2D(std::span<const LocalPoint> vertices);

  std::span<const LocalPoint> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const BoundingBox& bounds() const { return bounds_; }
  bool empty() const { return vertices_.empty(); }

 private:
  std::vector<LocalPoint> vertices_;
  BoundingBox bounds_;
};

/// Shoelace area, positive for counter-clockwise input. Accepts an open
/// vertex list (closing edge implied).
double signed_area(std::span<const LocalPoint> ring);
double polygon_area(const Polygon2D& poly);
LocalPoint polygon_centroid(const Polygon2D& poly);

/// Ray casting; points on the boundary (within 1e-9 m) count as inside.
bool contains_point(const Polygon2D& poly, LocalPoint p);

double distance_to_segment(LocalPoint p, LocalPoint a, LocalPoint b);
double distance_to_boundary(const Polygon2D& poly, LocalPoint p);

/// True when every point of `inner` lies inside `outer` dilated by `slack`.
/// Inner edges are split at their crossings with the outer boundary and
/// every piece is tested, so concave parents are handled.
bool polygon_contains_polygon(const Polygon2D& outer, const Polygon2D& inner, double slack);

/// Area of the intersection of two simple polygons.
double polygons_overlap_area(const Polygon2D& a, const Polygon2D& b);

double polyline_length(std::span<const LocalPoint> pts);
/// Point at half of the total arc length.
LocalPoint polyline_midpoint(std::span<const LocalPoint> pts);

enum class SegmentContact { none, touch, proper };

/// Proper = the segments cross at a single point interior to both.
/// Touch = any other contact (shared endpoint, T-junction, collinear overlap).
SegmentContact segment_contact(LocalPoint a, LocalPoint b, LocalPoint c, LocalPoint d);

/// True if two non-adjacent edges of the ring touch or cross.
bool ring_self_intersects(std::span<const LocalPoint> ring);

}  // namespace osmag
