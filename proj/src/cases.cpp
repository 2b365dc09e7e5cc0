#include "crtopo/cases.hpp"

#include <cmath>
#include <string>

#include "crtopo/error.hpp"

namespace crtopo {

namespace {

using Side = BoundarySegment::Side;

CaseGeometry make_pipe_bend() {
  CaseGeometry g{CaseId::pipe_bend, {{0.0, 0.0}, {1.0, 1.0}}, {}, {}, 30};
  g.boundary.inlet_profiles = {[](Vec2) { return Vec2{1.0, 0.0}; }};
  g.segments = {{Side::left, 0.7, 0.9, BoundaryTag::inlet(0)},
                {Side::bottom, 0.7, 0.9, BoundaryTag::outlet()}};
  return g;
}

CaseGeometry make_left_inflow() {
  CaseGeometry g{CaseId::left_inflow, {{0.0, 0.0}, {1.0, 1.0}}, {}, {}, 30};
  g.boundary.inlet_profiles = {[](Vec2 p) { return Vec2{4.0 * p.y * (1.0 - p.y), 0.0}; }};
  g.segments = {{Side::left, 0.0, 1.0, BoundaryTag::inlet(0)},
                {Side::right, 0.3, 0.7, BoundaryTag::outlet()}};
  return g;
}

CaseGeometry make_three_inflows() {
  CaseGeometry g{CaseId::three_inflows, {{0.0, 0.0}, {1.0, 1.0}}, {}, {}, 30};
  g.boundary.inlet_profiles = {[](Vec2) { return Vec2{0.0, -1.0}; },
                               [](Vec2) { return Vec2{0.0, 1.0}; },
                               [](Vec2) { return Vec2{1.0, 0.0}; }};
  g.segments = {{Side::top, 0.4, 0.6, BoundaryTag::inlet(0)},
                {Side::bottom, 0.4, 0.6, BoundaryTag::inlet(1)},
                {Side::left, 0.4, 0.6, BoundaryTag::inlet(2)},
                {Side::right, 0.4, 0.6, BoundaryTag::outlet()}};
  return g;
}

CaseGeometry make_rugby() {
  CaseGeometry g{CaseId::rugby, {{-0.5, -0.5}, {1.5, 0.5}}, {}, {}, 20};
  g.boundary.inlet_profiles = {
      [](Vec2 p) { return Vec2{-(p.y - 0.5) * (p.y + 0.5), 0.0}; }};
  g.segments = {{Side::left, -0.5, 0.5, BoundaryTag::inlet(0)},
                {Side::right, -0.5, 0.5, BoundaryTag::outlet()}};
  return g;
}

CaseGeometry make_bypass() {
  CaseGeometry g{CaseId::bypass, {{0.0, -0.5}, {1.5, 0.5}}, {}, {}, 40};
  g.boundary.inlet_profiles = {[](Vec2 p) {
    const double y2 = p.y * p.y;
    return Vec2{-100.0 * (y2 - 0.35 * 0.35) * (y2 - 0.15 * 0.15), 0.0};
  }};
  g.segments = {{Side::left, 0.15, 0.35, BoundaryTag::inlet(0)},
                {Side::left, -0.35, -0.15, BoundaryTag::inlet(0)},
                {Side::right, 0.15, 0.35, BoundaryTag::outlet()},
                {Side::right, -0.35, -0.15, BoundaryTag::outlet()}};
  return g;
}

bool on_grid(double value, double origin, int n) {
  const double s = (value - origin) * n;
  return std::abs(s - std::round(s)) < 1e-9;
}

int cells_along(double length, int n, CaseId id) {
  const double s = length * n;
  if (std::abs(s - std::round(s)) > 1e-9)
    throw ValidationError("generate_case_mesh: resolution " + std::to_string(n) +
                          " does not divide the " + std::string(case_name(id)) + " domain");
  return static_cast<int>(std::lround(s));
}

} // namespace

std::string_view case_name(CaseId id) {
  switch (id) {
  case CaseId::pipe_bend: return "pipe_bend";
  case CaseId::left_inflow: return "left_inflow";
  case CaseId::three_inflows: return "three_inflows";
  case CaseId::rugby: return "rugby";
  case CaseId::bypass: return "bypass";
  }
  return "unknown";
}

std::optional<CaseId> parse_case_name(std::string_view name) {
  for (CaseId id : kAllCases) {
    if (case_name(id) == name) return id;
  }
  return std::nullopt;
}

const CaseGeometry& case_geometry(CaseId id) {
  static const std::array<CaseGeometry, 5> table = {make_pipe_bend(), make_left_inflow(),
                                                    make_three_inflows(), make_rugby(),
                                                    make_bypass()};
  return table[static_cast<std::size_t>(id)];
}

Mesh generate_rectangle_mesh(const Box& box, int nx, int ny) {
  if (nx < 1 || ny < 1) throw ValidationError("generate_rectangle_mesh: need nx, ny >= 1");
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  const double dx = (box.hi.x - box.lo.x) / nx;
  const double dy = (box.hi.y - box.lo.y) / ny;
  for (int j = 0; j <= ny; ++j) {
    const double y = j == ny ? box.hi.y : box.lo.y + j * dy;
    for (int i = 0; i <= nx; ++i) {
      const double x = i == nx ? box.hi.x : box.lo.x + i * dx;
      vertices.push_back({x, y});
    }
  }
  std::vector<Cell> cells;
  cells.reserve(2 * static_cast<std::size_t>(nx) * ny);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return build_topology(std::move(vertices), std::move(cells));
}

Mesh generate_case_mesh(CaseId id, int n) {
  if (n < 4) throw ValidationError("generate_case_mesh: resolution must be at least 4");
  const CaseGeometry& g = case_geometry(id);
  const int nx = cells_along(g.domain.hi.x - g.domain.lo.x, n, id);
  const int ny = cells_along(g.domain.hi.y - g.domain.lo.y, n, id);
  for (const BoundarySegment& s : g.segments) {
    const bool vertical = s.side == Side::left || s.side == Side::right;
    const double origin = vertical ? g.domain.lo.y : g.domain.lo.x;
    if (!on_grid(s.from, origin, n) || !on_grid(s.to, origin, n))
      throw ValidationError("generate_case_mesh: segment [" + std::to_string(s.from) + ", " +
                            std::to_string(s.to) + "] of " + std::string(case_name(id)) +
                            " is not resolved by resolution " + std::to_string(n));
  }

  Mesh mesh = generate_rectangle_mesh(g.domain, nx, ny);
  const double tol = 1e-9 * std::max(g.domain.hi.x - g.domain.lo.x, g.domain.hi.y - g.domain.lo.y);
  tag_boundary(mesh, [&](Vec2 a, Vec2 b) {
    const Vec2 m = midpoint(a, b);
    for (const BoundarySegment& s : g.segments) {
      double fixed = 0.0, along = 0.0, side_value = 0.0;
      switch (s.side) {
      case Side::left: fixed = m.x; along = m.y; side_value = g.domain.lo.x; break;
      case Side::right: fixed = m.x; along = m.y; side_value = g.domain.hi.x; break;
      case Side::bottom: fixed = m.y; along = m.x; side_value = g.domain.lo.y; break;
      case Side::top: fixed = m.y; along = m.x; side_value = g.domain.hi.y; break;
      }
      if (std::abs(fixed - side_value) < tol && along > s.from && along < s.to) return s.tag;
    }
    return BoundaryTag::wall();
  });
  return mesh;
}

} // namespace crtopo
