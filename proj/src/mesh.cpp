#include "crtopo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <tuple>

#include "crtopo/error.hpp"

namespace crtopo {

double Mesh::cell_area(int c) const {
  const Cell& t = cells[c];
  return signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
}

double Mesh::domain_area() const {
  double total = 0.0;
  for (int c = 0; c < num_cells(); ++c) total += cell_area(c);
  return total;
}

Mesh build_topology(std::vector<Vec2> vertices, std::vector<Cell> cells) {
  const int nv = static_cast<int>(vertices.size());
  const int nc = static_cast<int>(cells.size());
  if (nv == 0 || nc == 0) throw ValidationError("build_topology: empty mesh");

  Vec2 lo = vertices.front(), hi = vertices.front();
  for (const Vec2& p : vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double diag = norm(hi - lo);
  const double area_floor = 1e-14 * diag * diag;

  std::vector<int> use_count(nv, 0);
  std::set<std::array<int, 3>> seen;
  for (int c = 0; c < nc; ++c) {
    const Cell& t = cells[c];
    for (int v : t) {
      if (v < 0 || v >= nv)
        throw ValidationError("build_topology: cell " + std::to_string(c) + " has vertex index " +
                              std::to_string(v) + " out of range");
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw ValidationError("build_topology: degenerate cell " + std::to_string(c) +
                            " (repeated vertex)");
    std::array<int, 3> key = t;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      throw ValidationError("build_topology: duplicate cell " + std::to_string(c));
    const double a = signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    if (std::abs(a) <= area_floor)
      throw ValidationError("build_topology: degenerate cell " + std::to_string(c) + " (zero area)");
    if (a < 0.0)
      throw ValidationError("build_topology: inverted cell " + std::to_string(c) +
                            " (clockwise orientation)");
    for (int v : t) ++use_count[v];
  }
  for (int v = 0; v < nv; ++v) {
    if (use_count[v] == 0)
      throw ValidationError("build_topology: dangling vertex " + std::to_string(v));
  }

  // (a, b, cell, local edge) with a < b, sorted lexicographically.
  struct HalfEdge {
    int a, b, cell, local;
  };
  std::vector<HalfEdge> half;
  half.reserve(3 * static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < 3; ++i) {
      int a = cells[c][(i + 1) % 3];
      int b = cells[c][(i + 2) % 3];
      if (a > b) std::swap(a, b);
      half.push_back({a, b, c, i});
    }
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& l, const HalfEdge& r) {
    return std::tie(l.a, l.b, l.cell) < std::tie(r.a, r.b, r.cell);
  });

  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.cells = std::move(cells);
  mesh.cell_edges.assign(nc, {-1, -1, -1});
  for (std::size_t k = 0; k < half.size();) {
    std::size_t end = k;
    while (end < half.size() && half[end].a == half[k].a && half[end].b == half[k].b) ++end;
    if (end - k > 2)
      throw ValidationError("build_topology: non-manifold edge (" + std::to_string(half[k].a) +
                            ", " + std::to_string(half[k].b) + ") has " +
                            std::to_string(end - k) + " incident cells");
    const int e = mesh.num_edges();
    mesh.edges.push_back({half[k].a, half[k].b});
    mesh.edge_cells.push_back({half[k].cell, end - k == 2 ? half[k + 1].cell : -1});
    for (std::size_t j = k; j < end; ++j) mesh.cell_edges[half[j].cell][half[j].local] = e;
    k = end;
  }

  mesh.edge_tags.resize(mesh.edges.size());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.is_boundary_edge(e)) mesh.edge_tags[e] = BoundaryTag::wall();
  }
  mesh.vertex_parents.resize(mesh.vertices.size());
  for (int v = 0; v < nv; ++v) mesh.vertex_parents[v] = {v, v};
  return mesh;
}

void tag_boundary(Mesh& mesh, const std::function<BoundaryTag(Vec2, Vec2)>& tagger) {
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    BoundaryTag tag = tagger(mesh.vertices[mesh.edges[e][0]], mesh.vertices[mesh.edges[e][1]]);
    if (tag.kind == BoundaryKind::interior)
      throw ValidationError("tag_boundary: boundary edge " + std::to_string(e) + " left untagged");
    mesh.edge_tags[e] = tag;
  }
}

Mesh refine_red(const Mesh& coarse) {
  const int nv = coarse.num_vertices();
  std::vector<Vec2> vertices = coarse.vertices;
  vertices.reserve(nv + coarse.edges.size());
  for (int e = 0; e < coarse.num_edges(); ++e) vertices.push_back(coarse.edge_midpoint(e));

  std::vector<Cell> cells;
  cells.reserve(4 * coarse.cells.size());
  for (int c = 0; c < coarse.num_cells(); ++c) {
    const Cell& t = coarse.cells[c];
    const int m0 = nv + coarse.cell_edges[c][0];
    const int m1 = nv + coarse.cell_edges[c][1];
    const int m2 = nv + coarse.cell_edges[c][2];
    cells.push_back({t[0], m2, m1});
    cells.push_back({m2, t[1], m0});
    cells.push_back({m1, m0, t[2]});
    cells.push_back({m0, m1, m2});
  }

  Mesh fine = build_topology(std::move(vertices), std::move(cells));
  for (int e = 0; e < fine.num_edges(); ++e) {
    if (!fine.is_boundary_edge(e)) continue;
    const int v = std::max(fine.edges[e][0], fine.edges[e][1]);
    fine.edge_tags[e] = coarse.edge_tags[v - nv];
  }
  for (int e = 0; e < coarse.num_edges(); ++e) fine.vertex_parents[nv + e] = coarse.edges[e];
  fine.level = coarse.level + 1;
  return fine;
}

DofReport dof_counts(std::int64_t vertices, std::int64_t edges, std::int64_t cells) {
  DofReport r;
  r.vertices = vertices;
  r.edges = edges;
  r.cells = cells;
  r.cr_velocity_dofs = 2 * edges;
  r.p0_pressure_dofs = cells;
  r.th_velocity_dofs = 2 * (vertices + edges);
  r.th_pressure_dofs = vertices;
  return r;
}

DofReport dof_counts(const Mesh& mesh) {
  return dof_counts(mesh.num_vertices(), mesh.num_edges(), mesh.num_cells());
}

std::vector<DofReport> refinement_dof_table(std::int64_t vertices, std::int64_t cells, int levels) {
  if (levels < 0) throw ValidationError("refinement_dof_table: levels must be non-negative");
  std::int64_t v = vertices, t = cells;
  std::int64_t e = v + t - 1; // Euler relation for a simply connected mesh
  std::vector<DofReport> table;
  for (int k = 0; k <= levels; ++k) {
    table.push_back(dof_counts(v, e, t));
    const std::int64_t v_next = v + e;
    const std::int64_t e_next = 2 * e + 3 * t;
    t *= 4;
    v = v_next;
    e = e_next;
  }
  return table;
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q;
  q.h_min = std::numeric_limits<double>::infinity();
  q.min_angle = 180.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const double h = std::sqrt(mesh.cell_area(c));
    q.h_max = std::max(q.h_max, h);
    q.h_min = std::min(q.h_min, h);
    const Cell& t = mesh.cells[c];
    for (int i = 0; i < 3; ++i) {
      const Vec2 p = mesh.vertices[t[i]];
      const Vec2 a = mesh.vertices[t[(i + 1) % 3]] - p;
      const Vec2 b = mesh.vertices[t[(i + 2) % 3]] - p;
      const double angle = std::atan2(std::abs(cross(a, b)), dot(a, b)) * 180.0 / std::numbers::pi;
      q.min_angle = std::min(q.min_angle, angle);
    }
  }
  return q;
}

void write_mesh_text(const Mesh& mesh, const std::filesystem::path& prefix) {
  const auto nodes_path = std::filesystem::path(prefix.string() + ".nodes");
  const auto cells_path = std::filesystem::path(prefix.string() + ".cells");
  std::ofstream nodes(nodes_path);
  std::ofstream cells(cells_path);
  if (!nodes || !cells)
    throw SolverError("write_mesh_text: cannot open " + nodes_path.string() + " for writing");
  nodes.precision(17);
  for (const Vec2& p : mesh.vertices) nodes << p.x << ' ' << p.y << '\n';
  for (const Cell& t : mesh.cells) cells << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  if (!nodes || !cells) throw SolverError("write_mesh_text: write failed for " + prefix.string());
}

} // namespace crtopo
