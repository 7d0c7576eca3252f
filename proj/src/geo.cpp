#include "osmag/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "geo_detail.hpp"
#include "osmag/error.hpp"

namespace osmag {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double cross(LocalPoint o, LocalPoint a, LocalPoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation(LocalPoint a, LocalPoint b, LocalPoint c) {
  double v = cross(a, b, c);
  double scale = distance(a, b) * distance(a, c) + distance(a, b) * distance(b, c);
  if (std::abs(v) <= 1e-12 * scale + 1e-18) return 0;
  return v > 0 ? 1 : -1;
}

bool within_box(LocalPoint p, LocalPoint a, LocalPoint b) {
  constexpr double eps = 1e-12;
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

BoundingBox box_of(std::span<const LocalPoint> pts) {
  BoundingBox box{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

}  // namespace

LocalPoint to_local(double lat, double lon, const RootAnchor& root) {
  return {(lon - root.lon0) * kDegToRad * kEarthRadius * std::cos(root.lat0 * kDegToRad),
          (lat - root.lat0) * kDegToRad * kEarthRadius};
}

GeoCoordinate from_local(LocalPoint p, const RootAnchor& root) {
  return {root.lat0 + p.y / kEarthRadius / kDegToRad,
          root.lon0 + p.x / (kEarthRadius * std::cos(root.lat0 * kDegToRad)) / kDegToRad};
}

double distance(LocalPoint a, LocalPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

Polygon2D::Polygon2D(std::span<const LocalPoint> vertices) {
  for (const auto& v : vertices) {
    if (!vertices_.empty() && distance(vertices_.back(), v) <= detail::kBoundaryEps) continue;
    vertices_.push_back(v);
  }
  while (vertices_.size() > 1 && distance(vertices_.front(), vertices_.back()) <= detail::kBoundaryEps)
    vertices_.pop_back();
  if (vertices_.size() < 3)
    throw Error(Errc::DegeneratePolygon, "polygon has fewer than 3 distinct vertices");
  double area = signed_area(vertices_);
  if (std::abs(area) <= 1e-12) throw Error(Errc::DegeneratePolygon, "polygon has zero area");
  if (area < 0) std::reverse(vertices_.begin(), vertices_.end());
  bounds_ = box_of(vertices_);
}

double signed_area(std::span<const LocalPoint> ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

double polygon_area(const Polygon2D& poly) { return signed_area(poly.vertices()); }

LocalPoint polygon_centroid(const Polygon2D& poly) {
  auto v = poly.vertices();
  // Shift to the first vertex to keep the products small.
  const LocalPoint o = v[0];
  double cx = 0.0, cy = 0.0, twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    LocalPoint a{v[i].x - o.x, v[i].y - o.y};
    LocalPoint b{v[(i + 1) % v.size()].x - o.x, v[(i + 1) % v.size()].y - o.y};
    double c = a.x * b.y - b.x * a.y;
    twice += c;
    cx += (a.x + b.x) * c;
    cy += (a.y + b.y) * c;
  }
  return {o.x + cx / (3.0 * twice), o.y + cy / (3.0 * twice)};
}

double distance_to_segment(LocalPoint p, LocalPoint a, LocalPoint b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {a.x + t * dx, a.y + t * dy});
}

double distance_to_boundary(const Polygon2D& poly, LocalPoint p) {
  auto v = poly.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, distance_to_segment(p, v[i], v[(i + 1) % v.size()]));
  return best;
}

bool contains_point(const Polygon2D& poly, LocalPoint p) {
  const auto& box = poly.bounds();
  constexpr double eps = detail::kBoundaryEps;
  if (p.x < box.min_x - eps || p.x > box.max_x + eps || p.y < box.min_y - eps || p.y > box.max_y + eps) return false;
  auto v = poly.vertices();
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const LocalPoint& a = v[i];
    const LocalPoint& b = v[(i + 1) % n];
    if (distance_to_segment(p, a, b) <= eps) return true;
    if (detail::straddles(a, b, p.y) && p.x < detail::crossing_x(a, b, p.y)) inside = !inside;
  }
  return inside;
}

SegmentContact segment_contact(LocalPoint a, LocalPoint b, LocalPoint c, LocalPoint d) {
  int o1 = orientation(a, b, c);
  int o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a);
  int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentContact::proper;
  if ((o1 == 0 && within_box(c, a, b)) || (o2 == 0 && within_box(d, a, b)) ||
      (o3 == 0 && within_box(a, c, d)) || (o4 == 0 && within_box(b, c, d)))
    return SegmentContact::touch;
  return SegmentContact::none;
}

bool ring_self_intersects(std::span<const LocalPoint> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  auto edge = [&](std::size_t i) { return std::pair{ring[i], ring[(i + 1) % n]}; };
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = edge(i);
    // Spike: the next edge folds back over this one.
    const LocalPoint c = ring[(i + 2) % n];
    if (orientation(a, b, c) == 0 && (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) < 0) return true;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      auto [p, q] = edge(j);
      if (segment_contact(a, b, p, q) != SegmentContact::none) return true;
    }
  }
  return false;
}

bool polygon_contains_polygon(const Polygon2D& outer, const Polygon2D& inner, double slack) {
  const auto& ob = outer.bounds();
  const auto& ib = inner.bounds();
  if (ib.min_x < ob.min_x - slack || ib.max_x > ob.max_x + slack || ib.min_y < ob.min_y - slack ||
      ib.max_y > ob.max_y + slack)
    return false;
  auto ok = [&](LocalPoint p) { return contains_point(outer, p) || distance_to_boundary(outer, p) <= slack; };
  auto ov = outer.vertices();
  auto iv = inner.vertices();
  std::vector<double> cuts;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const LocalPoint a = iv[i];
    const LocalPoint b = iv[(i + 1) % iv.size()];
    if (!ok(a)) return false;
    const double rx = b.x - a.x, ry = b.y - a.y;
    const double len2 = rx * rx + ry * ry;
    cuts.assign({0.0, 1.0});
    for (std::size_t j = 0; j < ov.size(); ++j) {
      const LocalPoint c = ov[j];
      const LocalPoint d = ov[(j + 1) % ov.size()];
      const double sx = d.x - c.x, sy = d.y - c.y;
      const double denom = rx * sy - ry * sx;
      const double qx = c.x - a.x, qy = c.y - a.y;
      if (std::abs(denom) > 1e-12 * std::sqrt(len2 * (sx * sx + sy * sy))) {
        double t = (qx * sy - qy * sx) / denom;
        double u = (qx * ry - qy * rx) / denom;
        if (t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0) cuts.push_back(t);
      } else if (orientation(a, b, c) == 0) {
        for (LocalPoint e : {c, d}) {
          double t = ((e.x - a.x) * rx + (e.y - a.y) * ry) / len2;
          if (t > 0.0 && t < 1.0) cuts.push_back(t);
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      double t = 0.5 * (cuts[k] + cuts[k + 1]);
      if (!ok({a.x + t * rx, a.y + t * ry})) return false;
    }
  }
  return true;
}

double polygons_overlap_area(const Polygon2D& a, const Polygon2D& b) {
  namespace bg = boost::geometry;
  if (!a.bounds().intersects(b.bounds())) return 0.0;
  using Point = bg::model::d2::point_xy<double>;
  using Poly = bg::model::polygon<Point, false, true>;  // counter-clockwise, closed
  auto convert = [](const Polygon2D& src) {
    Poly out;
    for (const auto& v : src.vertices()) bg::append(out.outer(), Point(v.x, v.y));
    bg::append(out.outer(), Point(src.vertices()[0].x, src.vertices()[0].y));
    return out;
  };
  const Poly pa = convert(a);
  const Poly pb = convert(b);
  bg::model::multi_polygon<Poly> result;
  bg::intersection(pa, pb, result);
  return bg::area(result);
}

double polyline_length(std::span<const LocalPoint> pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

LocalPoint polyline_midpoint(std::span<const LocalPoint> pts) {
  if (pts.empty()) return {};
  const double half = polyline_length(pts) / 2.0;
  double walked = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double step = distance(pts[i - 1], pts[i]);
    if (walked + step >= half && step > 0.0) {
      double t = (half - walked) / step;
      return {pts[i - 1].x + t * (pts[i].x - pts[i - 1].x), pts[i - 1].y + t * (pts[i].y - pts[i - 1].y)};
    }
    walked += step;
  }
  return pts.back();
}

}  // namespace osmag
