#ifndef CRTOPO_SPACES_HPP
#define CRTOPO_SPACES_HPP

#include <array>
#include <vector>

#include "crtopo/cases.hpp"
#include "crtopo/geometry.hpp"
#include "crtopo/mesh.hpp"

namespace crtopo {

/// Crouzeix-Raviart vector field: one 2-vector per edge (the value at the
/// edge midpoint). Storage is all x-components by edge index, then all
/// y-components.
struct CrField {
  MeshPtr mesh;
  std::vector<double> values;

  CrField() = default;
  explicit CrField(MeshPtr m) : mesh(std::move(m)), values(2 * static_cast<std::size_t>(mesh->num_edges()), 0.0) {}

  int num_edges() const { return mesh->num_edges(); }
  Vec2 at_edge(int e) const { return {values[e], values[num_edges() + e]}; }
  void set_edge(int e, Vec2 v) {
    values[e] = v.x;
    values[num_edges() + e] = v.y;
  }
  /// Value of the cell polynomial at barycentric coordinates `lambda`.
  Vec2 evaluate(int cell, const std::array<double, 3>& lambda) const;
  /// Constant gradient on a cell: row k is the gradient of component k.
  std::array<Vec2, 2> gradient(int cell, const TriangleGeometry& geometry) const;
};

/// Piecewise constant scalar field, one value per cell.
struct P0Field {
  MeshPtr mesh;
  std::vector<double> values;

  P0Field() = default;
  explicit P0Field(MeshPtr m) : mesh(std::move(m)), values(mesh->num_cells(), 0.0) {}
  /// sum_T value_T |T|
  double integral() const;
};

/// Continuous piecewise linear scalar field, one value per vertex.
struct P1Field {
  MeshPtr mesh;
  std::vector<double> values;

  P1Field() = default;
  P1Field(MeshPtr m, double constant)
      : mesh(std::move(m)), values(mesh->num_vertices(), constant) {}
  double evaluate(int cell, const std::array<double, 3>& lambda) const;
};

/// CR basis function of local edge i at barycentric point lambda.
inline double cr_basis(int i, const std::array<double, 3>& lambda) { return 1.0 - 2.0 * lambda[i]; }

/// Edge average of `v` computed with two-point Gauss (exact for cubics).
Vec2 edge_average(const Mesh& mesh, int edge, const VectorFunction& v);

CrField cr_interpolate(const MeshPtr& mesh, const VectorFunction& v);

/// Scalar P1 nodal interpolant.
P1Field p1_interpolate(const MeshPtr& mesh, const std::function<double(Vec2)>& f);

/// Conforming P2 nodal values of a CR field: at each vertex the mean of the
/// incident cells' polynomials, at each edge midpoint the CR value.
struct EnrichedField {
  std::vector<Vec2> vertex_values;
  std::vector<Vec2> midpoint_values;
};

EnrichedField enrich_cr(const CrField& u);

/// Nodal interpolation onto the red refinement `fine` of phi's mesh.
/// Throws ValidationError when `fine` is not that refinement.
P1Field prolong_p1(const P1Field& phi, const MeshPtr& fine);

/// True when `fine` is the red refinement of `coarse` produced by refine_red.
bool is_red_child(const Mesh& coarse, const Mesh& fine);

enum class NormKind { l2, broken_h1 };

/// Exact L2 norm or broken H1 seminorm of a discrete field.
double field_norm(const CrField& u, NormKind kind);
double field_norm(const P1Field& phi, NormKind kind);

} // namespace crtopo

#endif
