#include "foldtope/geometry.hpp"

#include <algorithm>

namespace foldtope {

RunConfig& global_config() {
  static RunConfig cfg;
  return cfg;
}

namespace {

// proper segment intersection test for the O(n^2) simplicity check
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    double v = cross(q - p, r - p);
    if (v > 1e-15) return 1;
    if (v < -1e-15) return -1;
    return 0;
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  auto on = [](Vec2 p, Vec2 q, Vec2 r) {  // r on segment pq, collinear known
    return std::min(p.x, q.x) - 1e-15 <= r.x && r.x <= std::max(p.x, q.x) + 1e-15 &&
           std::min(p.y, q.y) - 1e-15 <= r.y && r.y <= std::max(p.y, q.y) + 1e-15;
  };
  if (o1 == 0 && on(a, b, c)) return true;
  if (o2 == 0 && on(a, b, d)) return true;
  if (o3 == 0 && on(c, d, a)) return true;
  if (o4 == 0 && on(c, d, b)) return true;
  return false;
}

double signed_area(const std::vector<Vec2>& pts) {
  double s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Vec2 a = pts[i], b = pts[(i + 1) % pts.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

}  // namespace

Polygon Polygon::build(std::vector<Vec2> points) {
  if (points.size() < 3) throw GeometryError("need at least 3 points");
  if (signed_area(points) < 0) std::reverse(points.begin(), points.end());

  Polygon p;
  p.pts_ = std::move(points);
  int n = p.size();
  const double eps_angle = global_config().tol.eps_angle;

  p.elen_.resize(n);
  double perim = 0;
  for (int i = 0; i < n; ++i) {
    p.elen_[i] = dist(p.pts_[i], p.pts_[(i + 1) % n]);
    perim += p.elen_[i];
  }
  p.perim_ = perim;
  for (int i = 0; i < n; ++i)
    if (p.elen_[i] <= global_config().tol.eps_len_rel * perim)
      throw DegenerateEdge("zero-length edge at vertex " + std::to_string(i));

  p.theta_.resize(n);
  p.convex_ = true;
  for (int i = 0; i < n; ++i) {
    Vec2 prev = p.pts_[(i + n - 1) % n], cur = p.pts_[i], next = p.pts_[(i + 1) % n];
    Vec2 u = cur - prev, v = next - cur;
    // interior angle = pi - signed turn
    double turn = std::atan2(cross(u, v), dot(u, v));
    double theta = M_PI - turn;
    p.theta_[i] = theta;
    if (std::fabs(theta - M_PI) <= eps_angle)
      throw InessentialVertex("flat vertex " + std::to_string(i));
    if (turn <= 0) p.convex_ = false;
  }

  // adjacent edges sharing only the common vertex is implied by the angle
  // check; test all non-adjacent pairs
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(p.pts_[i], p.pts_[(i + 1) % n], p.pts_[j],
                         p.pts_[(j + 1) % n]))
        throw NonSimple("edges " + std::to_string(i) + " and " +
                        std::to_string(j) + " intersect");
    }

  p.varc_.resize(n);
  double s = 0;
  for (int i = 0; i < n; ++i) {
    p.varc_[i] = s;
    s += p.elen_[i];
  }
  return p;
}

Polygon Polygon::regular_ngon(int n, double edge) {
  if (n < 3) throw GeometryError("regular_ngon: n < 3");
  if (edge <= 0) throw GeometryError("regular_ngon: edge <= 0");
  double r = edge / (2.0 * std::sin(M_PI / n));
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * M_PI * i / n;
    pts[i] = {r * std::cos(a), r * std::sin(a)};
  }
  return build(std::move(pts));
}

Vec2 Polygon::point_at_arc(double s) const {
  double L = perim_;
  s = std::fmod(s, L);
  if (s < 0) s += L;
  int n = size();
  for (int i = 0; i < n; ++i) {
    double end = (i + 1 < n) ? varc_[i + 1] : L;
    if (s <= end || i == n - 1) {
      double t = s - varc_[i];
      Vec2 a = pts_[i], b = pts_[(i + 1) % n];
      Vec2 dir = (b - a) * (1.0 / elen_[i]);
      return a + dir * t;
    }
  }
  return pts_[0];
}

BoundaryPoint boundary_point(const Polygon& p, int edge, double offset) {
  int e = p.index(edge);
  double len = p.edge_length(e);
  double eps = p.eps_len();
  if (offset < -eps || offset >= len + eps)
    throw GeometryError("boundary point offset out of range");
  if (offset < 0) offset = 0;
  if (offset >= len - eps) {  // normalize to the start of the next edge
    return {p.index(e + 1), 0.0};
  }
  return {e, offset};
}

BoundaryPoint boundary_point_at_arc(const Polygon& p, double s) {
  double L = p.perimeter();
  s = std::fmod(s, L);
  if (s < 0) s += L;
  int n = p.size();
  for (int i = n - 1; i >= 0; --i)
    if (s >= p.vertex_arc(i)) return boundary_point(p, i, s - p.vertex_arc(i));
  return {0, 0.0};
}

double arc_of(const Polygon& p, const BoundaryPoint& b) {
  return p.vertex_arc(p.index(b.edge)) + b.offset;
}

bool is_vertex(const Polygon& p, const BoundaryPoint& b, int* which) {
  double eps = p.eps_len();
  int e = p.index(b.edge);
  if (b.offset <= eps) {
    if (which) *which = e;
    return true;
  }
  if (b.offset >= p.edge_length(e) - eps) {
    if (which) *which = p.index(e + 1);
    return true;
  }
  return false;
}

double boundary_distance(const Polygon& p, const BoundaryPoint& a,
                         const BoundaryPoint& b) {
  double L = p.perimeter();
  double d = std::fmod(arc_of(p, b) - arc_of(p, a), L);
  if (d < 0) d += L;
  return d;
}

double angle_at(const Polygon& p, const BoundaryPoint& b) {
  int v;
  if (is_vertex(p, b, &v)) return p.interior_angle(v);
  return M_PI;
}

}  // namespace foldtope
