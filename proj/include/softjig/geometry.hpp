#pragma once

#include <cstddef>
#include <vector>

namespace softjig {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

double norm(Vec2 v);
double norm_sq(Vec2 v);

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

// Rigid planar pose. theta is normalized on construction.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose2() = default;
  Pose2(double x_, double y_, double theta_);
};

Vec2 apply(const Pose2& pose, Vec2 p);
// compose(a, b): apply b first, then a.
Pose2 compose(const Pose2& a, const Pose2& b);
Pose2 inverse(const Pose2& p);

struct Box {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

bool boxes_overlap(const Box& a, const Box& b);
Box bounding_box(const Vec2* verts, std::size_t n);

// Simple polygon, stored counter-clockwise. The constructor validates
// simplicity and non-degenerate area and flips orientation if needed.
class Polygon {
 public:
  explicit Polygon(std::vector<Vec2> verts);

  const std::vector<Vec2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  double area() const;
  const Box& bounds() const { return bbox_; }
  // Radius of the smallest origin-centered disc containing the polygon.
  double max_radius() const { return max_radius_; }

 private:
  struct Trusted {};
  Polygon(std::vector<Vec2> verts, Trusted);

  std::vector<Vec2> verts_;
  Box bbox_;
  double max_radius_ = 0.0;

  friend Polygon transform(const Polygon& poly, const Pose2& pose);
};

Polygon transform(const Polygon& poly, const Pose2& pose);

// Closed-set test: shared boundary points count as intersection.
bool intersects(const Polygon& a, const Polygon& b);

// Positive separation distance, 0 when touching, negative penetration
// depth (minimal translation estimate) when interiors overlap.
double clearance(const Polygon& a, const Polygon& b);

// Boundary-inclusive point containment.
bool contains_point(const Polygon& poly, Vec2 p);

struct AnnularArc {
  Vec2 center;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  double start_angle = 0.0;
  double span = 0.0;  // radians, in (0, 2*pi)
};

// Polygonizes the arc with `segments` chords per boundary arc.
// Produces 2 * (segments + 1) vertices.
Polygon arc_to_polygon(const AnnularArc& arc, int segments);

Polygon make_rect(double width, double height);
Polygon make_disc(double radius, int segments = 48);

struct ConvexPiece {
  std::vector<Vec2> verts;
  Box bbox;
};

struct ConvexDecomposition {
  std::vector<ConvexPiece> pieces;
};

ConvexDecomposition decompose_convex(const Polygon& poly);
ConvexDecomposition transform(const ConvexDecomposition& d, const Pose2& pose);

// Maximal SAT overlap over piece pairs; 0 when interiors do not overlap.
double penetration_depth(const ConvexDecomposition& a, const ConvexDecomposition& b);

// Raw-span variant of intersects() for scanners that keep scratch buffers.
// Decisions are identical to intersects() on the same vertex data.
bool polygons_intersect(const Vec2* a, std::size_t na, const Box& box_a,
                        const Vec2* b, std::size_t nb, const Box& box_b);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_distance(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

}  // namespace softjig
