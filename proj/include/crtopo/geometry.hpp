#ifndef CRTOPO_GEOMETRY_HPP
#define CRTOPO_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace crtopo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline Vec2 midpoint(Vec2 a, Vec2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Signed area, positive for counter-clockwise vertex order.
inline double signed_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

/// Affine data of a triangle: area and constant gradients of the barycentric
/// coordinates. Local vertex i is opposite local edge i.
struct TriangleGeometry {
  std::array<Vec2, 3> vertex;
  double area = 0.0;
  std::array<Vec2, 3> grad_lambda;

  Vec2 point(const std::array<double, 3>& lambda) const {
    return lambda[0] * vertex[0] + lambda[1] * vertex[1] + lambda[2] * vertex[2];
  }
};

inline TriangleGeometry triangle_geometry(Vec2 p0, Vec2 p1, Vec2 p2) {
  TriangleGeometry g;
  g.vertex = {p0, p1, p2};
  g.area = signed_area(p0, p1, p2);
  const double inv = 1.0 / (2.0 * g.area);
  for (int i = 0; i < 3; ++i) {
    const Vec2 pj = g.vertex[(i + 1) % 3];
    const Vec2 pk = g.vertex[(i + 2) % 3];
    g.grad_lambda[i] = {(pj.y - pk.y) * inv, (pk.x - pj.x) * inv};
  }
  return g;
}

} // namespace crtopo

#endif
