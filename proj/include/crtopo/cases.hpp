#ifndef CRTOPO_CASES_HPP
#define CRTOPO_CASES_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crtopo/geometry.hpp"
#include "crtopo/mesh.hpp"

namespace crtopo {

/// The five two-dimensional benchmark configurations.
enum class CaseId { pipe_bend, left_inflow, three_inflows, rugby, bypass };

inline constexpr std::array<CaseId, 5> kAllCases = {CaseId::pipe_bend, CaseId::left_inflow,
                                                    CaseId::three_inflows, CaseId::rugby,
                                                    CaseId::bypass};

std::string_view case_name(CaseId id);
std::optional<CaseId> parse_case_name(std::string_view name);

using VectorFunction = std::function<Vec2(Vec2)>;

/// Inlet velocity profiles, indexed by BoundaryTag::profile.
struct BoundaryData {
  std::vector<VectorFunction> inlet_profiles;
};

struct Box {
  Vec2 lo;
  Vec2 hi;
  double area() const { return (hi.x - lo.x) * (hi.y - lo.y); }
};

/// Straight piece of the domain boundary: side x = const or y = const,
/// restricted to [from, to] along the other coordinate.
struct BoundarySegment {
  enum class Side { left, right, bottom, top } side;
  double from;
  double to;
  BoundaryTag tag;
};

struct CaseGeometry {
  CaseId id;
  Box domain;
  std::vector<BoundarySegment> segments; ///< inlets/outlets; the rest is wall
  BoundaryData boundary;
  int default_resolution; ///< cells per unit length of the level-0 preset
};

const CaseGeometry& case_geometry(CaseId id);

/// Structured right-triangle mesh of the case rectangle with `n` cells per
/// unit length, boundary edges tagged per the case. Throws ValidationError
/// when n < 4 or a segment endpoint does not land on a grid line.
Mesh generate_case_mesh(CaseId id, int n);

/// Structured mesh of an arbitrary rectangle, all boundary edges walls.
Mesh generate_rectangle_mesh(const Box& box, int nx, int ny);

} // namespace crtopo

#endif
