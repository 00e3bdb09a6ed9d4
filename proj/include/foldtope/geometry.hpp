#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "foldtope/config.hpp"

namespace foldtope {

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonSimple : GeometryError {
  using GeometryError::GeometryError;
};
struct InessentialVertex : GeometryError {
  using GeometryError::GeometryError;
};
struct DegenerateEdge : GeometryError {
  using GeometryError::GeometryError;
};

// Simple polygon, counterclockwise, all vertices essential.
// Immutable after construction; derived quantities cached.
class Polygon {
 public:
  static Polygon build(std::vector<Vec2> points);   // validates everything
  static Polygon regular_ngon(int n, double edge = 1.0);

  int size() const { return static_cast<int>(pts_.size()); }
  Vec2 vertex(int i) const { return pts_[index(i)]; }
  double edge_length(int i) const { return elen_[index(i)]; }
  double perimeter() const { return perim_; }
  double interior_angle(int i) const { return theta_[index(i)]; }
  double turn_angle(int i) const { return M_PI - theta_[index(i)]; }
  bool convex() const { return convex_; }
  // arc-length coordinate of vertex i, in [0, L)
  double vertex_arc(int i) const { return varc_[index(i)]; }
  double eps_len() const { return global_config().tol.eps_len_rel * perim_; }

  Vec2 point_at_arc(double s) const;      // position in the plane
  int index(int i) const {                // cyclic vertex index
    int n = static_cast<int>(pts_.size());
    i %= n;
    return i < 0 ? i + n : i;
  }

 private:
  std::vector<Vec2> pts_;
  std::vector<double> elen_, theta_, varc_;
  double perim_ = 0;
  bool convex_ = false;
};

// A point of the boundary: edge index + offset from the edge's start vertex.
struct BoundaryPoint {
  int edge = 0;
  double offset = 0;
};

BoundaryPoint boundary_point(const Polygon& p, int edge, double offset);
BoundaryPoint boundary_point_at_arc(const Polygon& p, double s);
double arc_of(const Polygon& p, const BoundaryPoint& b);  // in [0, L)
bool is_vertex(const Polygon& p, const BoundaryPoint& b, int* which = nullptr);

// counterclockwise arc length from a to b, in [0, L)
double boundary_distance(const Polygon& p, const BoundaryPoint& a,
                         const BoundaryPoint& b);

// interior angle glued at b: theta_i at a vertex, pi inside an edge
double angle_at(const Polygon& p, const BoundaryPoint& b);

}  // namespace foldtope
