#ifndef CRTOPO_MESH_HPP
#define CRTOPO_MESH_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "crtopo/geometry.hpp"

namespace crtopo {

enum class BoundaryKind : std::uint8_t {
  interior,       ///< not a boundary edge
  inlet,          ///< Dirichlet velocity given by an inlet profile
  outlet,         ///< zero-traction (natural) condition
  wall,           ///< homogeneous Dirichlet velocity
};

struct BoundaryTag {
  BoundaryKind kind = BoundaryKind::interior;
  int profile = -1; ///< index into the inlet profile list, inlet edges only

  static BoundaryTag inlet(int profile_id) { return {BoundaryKind::inlet, profile_id}; }
  static BoundaryTag outlet() { return {BoundaryKind::outlet, -1}; }
  static BoundaryTag wall() { return {BoundaryKind::wall, -1}; }

  bool is_dirichlet() const { return kind == BoundaryKind::inlet || kind == BoundaryKind::wall; }
  friend bool operator==(const BoundaryTag&, const BoundaryTag&) = default;
};

using Cell = std::array<int, 3>;
using EdgeVerts = std::array<int, 2>;

/// Conforming 2D triangulation with edge topology.
///
/// Cells are counter-clockwise. Edges are sorted vertex pairs, numbered in
/// lexicographic order. `cell_edges[c][i]` is the edge opposite local vertex
/// i of cell c. `edge_cells[e][1] == -1` marks a boundary edge. Meshes produced
/// by refine_red also record for every vertex the two coarse vertices whose
/// midpoint it is (equal pair for inherited vertices).
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<Cell> cells;
  std::vector<EdgeVerts> edges;
  std::vector<std::array<int, 3>> cell_edges;
  std::vector<std::array<int, 2>> edge_cells;
  std::vector<BoundaryTag> edge_tags;
  std::vector<std::array<int, 2>> vertex_parents;
  int level = 0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  bool is_boundary_edge(int e) const { return edge_cells[e][1] < 0; }
  TriangleGeometry geometry(int c) const {
    const Cell& t = cells[c];
    return triangle_geometry(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  }
  Vec2 edge_midpoint(int e) const { return midpoint(vertices[edges[e][0]], vertices[edges[e][1]]); }
  double edge_length(int e) const { return norm(vertices[edges[e][1]] - vertices[edges[e][0]]); }
  double cell_area(int c) const;
  double domain_area() const;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Builds edge topology. Every boundary edge is tagged as a wall until retagged.
/// Throws ValidationError for out-of-range indices, duplicate cells, inverted
/// or degenerate cells, dangling vertices and non-manifold edges.
Mesh build_topology(std::vector<Vec2> vertices, std::vector<Cell> cells);

/// Retags every boundary edge with `tagger(a, b)` for endpoints a, b.
void tag_boundary(Mesh& mesh, const std::function<BoundaryTag(Vec2, Vec2)>& tagger);

/// Uniform red refinement: each triangle is split into four similar children.
/// New vertex V + e is the midpoint of coarse edge e.
Mesh refine_red(const Mesh& coarse);

/// Vertex, edge and cell counts with the DOF counts of the CR-P0 and
/// P2-P1 (Taylor-Hood) pairs on the same mesh.
struct DofReport {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t cells = 0;
  std::int64_t cr_velocity_dofs = 0;
  std::int64_t p0_pressure_dofs = 0;
  std::int64_t th_velocity_dofs = 0;
  std::int64_t th_pressure_dofs = 0;

  friend bool operator==(const DofReport&, const DofReport&) = default;
};

DofReport dof_counts(const Mesh& mesh);
DofReport dof_counts(std::int64_t vertices, std::int64_t edges, std::int64_t cells);

/// Counts of `levels + 1` meshes obtained by repeated red refinement of a
/// simply connected mesh with the given vertex and cell counts.
std::vector<DofReport> refinement_dof_table(std::int64_t vertices, std::int64_t cells, int levels);

struct MeshQuality {
  double h_max = 0.0;     ///< max over cells of |T|^{1/2}
  double h_min = 0.0;     ///< min over cells of |T|^{1/2}
  double min_angle = 0.0; ///< degrees
};

MeshQuality mesh_quality(const Mesh& mesh);

/// Writes `<prefix>.nodes` ("x y" per line) and `<prefix>.cells` ("i j k", 0-based).
void write_mesh_text(const Mesh& mesh, const std::filesystem::path& prefix);

} // namespace crtopo

#endif
