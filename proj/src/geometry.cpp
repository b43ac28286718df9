#include "softjig/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace softjig {

namespace {

double cross3(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// r is assumed collinear with segment pq.
bool on_segment(Vec2 p, Vec2 q, Vec2 r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

// Endpoint and collinear touches count.
bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross3(q1, q2, p1);
  const double d2 = cross3(q1, q2, p2);
  const double d3 = cross3(p1, p2, q1);
  const double d4 = cross3(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool segments_cross_properly(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross3(q1, q2, p1);
  const double d2 = cross3(q1, q2, p2);
  const double d3 = cross3(p1, p2, q1);
  const double d4 = cross3(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double signed_area2(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    s += a.x * b.y - a.y * b.x;
  }
  return s;
}

bool point_in_verts(const Vec2* v, std::size_t n, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % n];
    if (cross3(a, b, p) == 0 && on_segment(a, b, p)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double t = (p.y - a.y) / (b.y - a.y);
      const double x_int = a.x + t * (b.x - a.x);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

void validate_simple(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const Vec2& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("polygon vertex is not finite");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % n];
    if (a.x == b.x && a.y == b.y) {
      throw std::invalid_argument("polygon has a zero-length edge");
    }
  }
  if (std::abs(signed_area2(v)) <= 1e-12) {
    throw std::invalid_argument("polygon area is degenerate");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Vec2 p1 = v[i], p2 = v[(i + 1) % n];
      const Vec2 q1 = v[j], q2 = v[(j + 1) % n];
      if (segments_cross_properly(p1, p2, q1, q2)) {
        throw std::invalid_argument("polygon is self-intersecting");
      }
      // Collinear overlap of non-adjacent edges also breaks simplicity.
      if (cross3(p1, p2, q1) == 0 && cross3(p1, p2, q2) == 0) {
        if (on_segment(p1, p2, q1) || on_segment(p1, p2, q2) ||
            on_segment(q1, q2, p1) || on_segment(q1, q2, p2)) {
          throw std::invalid_argument("polygon has overlapping edges");
        }
      }
    }
  }
}

bool is_convex_ccw(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross3(v[i], v[(i + 1) % n], v[(i + 2) % n]) < 0) return false;
  }
  return true;
}

bool strictly_inside_triangle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  return cross3(a, b, p) > 0 && cross3(b, c, p) > 0 && cross3(c, a, p) > 0;
}

std::vector<std::vector<Vec2>> triangulate_ccw(const std::vector<Vec2>& verts) {
  std::vector<std::vector<Vec2>> out;
  std::vector<std::size_t> idx(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) idx[i] = i;

  auto emit = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (cross3(verts[a], verts[b], verts[c]) > 0) {
      out.push_back({verts[a], verts[b], verts[c]});
    }
  };

  while (idx.size() > 3) {
    const std::size_t m = idx.size();
    bool clipped = false;
    std::size_t best_k = 0;
    double best_cross = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t ia = idx[(k + m - 1) % m];
      const std::size_t ib = idx[k];
      const std::size_t ic = idx[(k + 1) % m];
      const double c = cross3(verts[ia], verts[ib], verts[ic]);
      if (c > best_cross) {
        best_cross = c;
        best_k = k;
      }
      if (c < 0) continue;
      if (c == 0) {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
        clipped = true;
        break;
      }
      bool blocked = false;
      for (std::size_t t = 0; t < m; ++t) {
        const std::size_t it = idx[t];
        if (it == ia || it == ib || it == ic) continue;
        if (strictly_inside_triangle(verts[ia], verts[ib], verts[ic], verts[it])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      emit(ia, ib, ic);
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped) {
      // Numeric fallback: clip the flattest convex corner to keep progressing.
      const std::size_t ia = idx[(best_k + m - 1) % m];
      const std::size_t ib = idx[best_k];
      const std::size_t ic = idx[(best_k + 1) % m];
      emit(ia, ib, ic);
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(best_k));
    }
  }
  emit(idx[0], idx[1], idx[2]);
  return out;
}

double project_interval_min(const std::vector<Vec2>& v, Vec2 axis) {
  double lo = std::numeric_limits<double>::infinity();
  for (const Vec2& p : v) lo = std::min(lo, dot(p, axis));
  return lo;
}

double project_interval_max(const std::vector<Vec2>& v, Vec2 axis) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : v) hi = std::max(hi, dot(p, axis));
  return hi;
}

// Minimal translation overlap between convex pieces, 0 when separated.
double sat_overlap(const ConvexPiece& a, const ConvexPiece& b) {
  double best = std::numeric_limits<double>::infinity();
  const std::vector<Vec2>* polys[2] = {&a.verts, &b.verts};
  for (const auto* pv : polys) {
    const std::vector<Vec2>& v = *pv;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = v[(i + 1) % n] - v[i];
      const double len = std::hypot(e.x, e.y);
      if (len < 1e-12) continue;
      const Vec2 axis{-e.y / len, e.x / len};
      const double a_lo = project_interval_min(a.verts, axis);
      const double a_hi = project_interval_max(a.verts, axis);
      const double b_lo = project_interval_min(b.verts, axis);
      const double b_hi = project_interval_max(b.verts, axis);
      const double ov = std::min(a_hi, b_hi) - std::max(a_lo, b_lo);
      if (ov <= 0) return 0.0;
      best = std::min(best, ov);
    }
  }
  return std::isfinite(best) ? best : 0.0;
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double norm_sq(Vec2 v) { return v.x * v.x + v.y * v.y; }

double wrap_angle(double a) {
  if (a > -kPi && a <= kPi) return a;  // exact for in-range values
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  return r - kPi;
}

Pose2::Pose2(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_angle(theta_)) {}

Vec2 apply(const Pose2& pose, Vec2 p) {
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  return {p.x * c - p.y * s + pose.x, p.x * s + p.y * c + pose.y};
}

Pose2 compose(const Pose2& a, const Pose2& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return Pose2(a.x + b.x * c - b.y * s, a.y + b.x * s + b.y * c, a.theta + b.theta);
}

Pose2 inverse(const Pose2& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return Pose2(-(p.x * c + p.y * s), -(-p.x * s + p.y * c), -p.theta);
}

bool boxes_overlap(const Box& a, const Box& b) {
  return a.max_x >= b.min_x && b.max_x >= a.min_x && a.max_y >= b.min_y && b.max_y >= a.min_y;
}

Box bounding_box(const Vec2* verts, std::size_t n) {
  Box box{verts[0].x, verts[0].y, verts[0].x, verts[0].y};
  for (std::size_t i = 1; i < n; ++i) {
    box.min_x = std::min(box.min_x, verts[i].x);
    box.min_y = std::min(box.min_y, verts[i].y);
    box.max_x = std::max(box.max_x, verts[i].x);
    box.max_y = std::max(box.max_y, verts[i].y);
  }
  return box;
}

Polygon::Polygon(std::vector<Vec2> verts) : verts_(std::move(verts)) {
  validate_simple(verts_);
  if (signed_area2(verts_) < 0) {
    std::reverse(verts_.begin(), verts_.end());
  }
  bbox_ = bounding_box(verts_.data(), verts_.size());
  for (const Vec2& v : verts_) max_radius_ = std::max(max_radius_, norm(v));
}

Polygon::Polygon(std::vector<Vec2> verts, Trusted) : verts_(std::move(verts)) {
  bbox_ = bounding_box(verts_.data(), verts_.size());
  for (const Vec2& v : verts_) max_radius_ = std::max(max_radius_, norm(v));
}

double Polygon::area() const { return 0.5 * signed_area2(verts_); }

Polygon transform(const Polygon& poly, const Pose2& pose) {
  std::vector<Vec2> out;
  out.reserve(poly.size());
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  for (const Vec2& v : poly.vertices()) {
    out.push_back({v.x * c - v.y * s + pose.x, v.x * s + v.y * c + pose.y});
  }
  return Polygon(std::move(out), Polygon::Trusted{});
}

bool polygons_intersect(const Vec2* a, std::size_t na, const Box& box_a,
                        const Vec2* b, std::size_t nb, const Box& box_b) {
  if (!boxes_overlap(box_a, box_b)) return false;
  for (std::size_t i = 0; i < na; ++i) {
    const Vec2 p1 = a[i];
    const Vec2 p2 = a[(i + 1) % na];
    const double lo_x = std::min(p1.x, p2.x), hi_x = std::max(p1.x, p2.x);
    const double lo_y = std::min(p1.y, p2.y), hi_y = std::max(p1.y, p2.y);
    if (hi_x < box_b.min_x || lo_x > box_b.max_x || hi_y < box_b.min_y || lo_y > box_b.max_y) {
      continue;
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (segments_touch(p1, p2, b[j], b[(j + 1) % nb])) return true;
    }
  }
  if (point_in_verts(b, nb, a[0])) return true;
  if (point_in_verts(a, na, b[0])) return true;
  return false;
}

bool intersects(const Polygon& a, const Polygon& b) {
  return polygons_intersect(a.vertices().data(), a.size(), a.bounds(),
                            b.vertices().data(), b.size(), b.bounds());
}

bool contains_point(const Polygon& poly, Vec2 p) {
  return point_in_verts(poly.vertices().data(), poly.size(), p);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return norm(p - a);
  double t = dot(p - a, ab) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double segment_distance(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  if (segments_touch(p1, p2, q1, q2)) return 0.0;
  double d = point_segment_distance(p1, q1, q2);
  d = std::min(d, point_segment_distance(p2, q1, q2));
  d = std::min(d, point_segment_distance(q1, p1, p2));
  d = std::min(d, point_segment_distance(q2, p1, p2));
  return d;
}

ConvexDecomposition decompose_convex(const Polygon& poly) {
  ConvexDecomposition out;
  if (is_convex_ccw(poly.vertices())) {
    out.pieces.push_back({poly.vertices(), poly.bounds()});
    return out;
  }
  for (auto& tri : triangulate_ccw(poly.vertices())) {
    ConvexPiece piece;
    piece.bbox = bounding_box(tri.data(), tri.size());
    piece.verts = std::move(tri);
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

ConvexDecomposition transform(const ConvexDecomposition& d, const Pose2& pose) {
  ConvexDecomposition out;
  out.pieces.reserve(d.pieces.size());
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  for (const ConvexPiece& piece : d.pieces) {
    ConvexPiece moved;
    moved.verts.reserve(piece.verts.size());
    for (const Vec2& v : piece.verts) {
      moved.verts.push_back({v.x * c - v.y * s + pose.x, v.x * s + v.y * c + pose.y});
    }
    moved.bbox = bounding_box(moved.verts.data(), moved.verts.size());
    out.pieces.push_back(std::move(moved));
  }
  return out;
}

double penetration_depth(const ConvexDecomposition& a, const ConvexDecomposition& b) {
  double depth = 0.0;
  for (const ConvexPiece& pa : a.pieces) {
    for (const ConvexPiece& pb : b.pieces) {
      if (!boxes_overlap(pa.bbox, pb.bbox)) continue;
      depth = std::max(depth, sat_overlap(pa, pb));
    }
  }
  return depth;
}

double clearance(const Polygon& a, const Polygon& b) {
  if (intersects(a, b)) {
    const double depth = penetration_depth(decompose_convex(a), decompose_convex(b));
    return depth > 0.0 ? -depth : 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  for (std::size_t i = 0; i < va.size(); ++i) {
    for (std::size_t j = 0; j < vb.size(); ++j) {
      best = std::min(best, segment_distance(va[i], va[(i + 1) % va.size()],
                                             vb[j], vb[(j + 1) % vb.size()]));
    }
  }
  return best;
}

Polygon arc_to_polygon(const AnnularArc& arc, int segments) {
  if (!(arc.inner_radius > 0.0) || !(arc.outer_radius > arc.inner_radius)) {
    throw std::invalid_argument("annular arc radii must satisfy 0 < inner < outer");
  }
  if (!(arc.span > 0.0) || arc.span >= 2.0 * kPi) {
    throw std::invalid_argument("annular arc span must lie in (0, 2*pi)");
  }
  if (segments < 8) throw std::invalid_argument("segments must be >= 8");

  std::vector<Vec2> verts;
  verts.reserve(2 * (static_cast<std::size_t>(segments) + 1));
  for (int i = 0; i <= segments; ++i) {
    const double t = arc.start_angle + arc.span * (static_cast<double>(i) / segments);
    verts.push_back({arc.center.x + arc.outer_radius * std::cos(t),
                     arc.center.y + arc.outer_radius * std::sin(t)});
  }
  for (int i = segments; i >= 0; --i) {
    const double t = arc.start_angle + arc.span * (static_cast<double>(i) / segments);
    verts.push_back({arc.center.x + arc.inner_radius * std::cos(t),
                     arc.center.y + arc.inner_radius * std::sin(t)});
  }
  return Polygon(std::move(verts));
}

Polygon make_rect(double width, double height) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("rect dimensions must be positive");
  }
  const double hw = 0.5 * width;
  const double hh = 0.5 * height;
  return Polygon({{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}});
}

Polygon make_disc(double radius, int segments) {
  if (!(radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
  if (segments < 3) throw std::invalid_argument("disc needs at least 3 segments");
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(segments));
  for (int i = 0; i < segments; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / segments;
    verts.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return Polygon(std::move(verts));
}

}  // namespace softjig
