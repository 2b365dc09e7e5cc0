#include "crtopo/spaces.hpp"

#include <cmath>

#include "crtopo/error.hpp"
#include "crtopo/quadrature.hpp"

namespace crtopo {

Vec2 CrField::evaluate(int cell, const std::array<double, 3>& lambda) const {
  Vec2 v;
  for (int i = 0; i < 3; ++i) v = v + cr_basis(i, lambda) * at_edge(mesh->cell_edges[cell][i]);
  return v;
}

std::array<Vec2, 2> CrField::gradient(int cell, const TriangleGeometry& geometry) const {
  std::array<Vec2, 2> g{};
  for (int i = 0; i < 3; ++i) {
    const Vec2 u = at_edge(mesh->cell_edges[cell][i]);
    const Vec2 grad_psi = -2.0 * geometry.grad_lambda[i];
    g[0] = g[0] + u.x * grad_psi;
    g[1] = g[1] + u.y * grad_psi;
  }
  return g;
}

double P0Field::integral() const {
  double s = 0.0;
  for (int c = 0; c < mesh->num_cells(); ++c) s += values[c] * mesh->cell_area(c);
  return s;
}

double P1Field::evaluate(int cell, const std::array<double, 3>& lambda) const {
  const Cell& t = mesh->cells[cell];
  return lambda[0] * values[t[0]] + lambda[1] * values[t[1]] + lambda[2] * values[t[2]];
}

Vec2 edge_average(const Mesh& mesh, int edge, const VectorFunction& v) {
  const Vec2 a = mesh.vertices[mesh.edges[edge][0]];
  const Vec2 b = mesh.vertices[mesh.edges[edge][1]];
  Vec2 avg;
  for (const auto& q : quadrature::gauss2()) avg = avg + q.weight * v(a + q.t * (b - a));
  return avg;
}

CrField cr_interpolate(const MeshPtr& mesh, const VectorFunction& v) {
  CrField u(mesh);
  for (int e = 0; e < mesh->num_edges(); ++e) u.set_edge(e, edge_average(*mesh, e, v));
  return u;
}

P1Field p1_interpolate(const MeshPtr& mesh, const std::function<double(Vec2)>& f) {
  P1Field phi(mesh, 0.0);
  for (int v = 0; v < mesh->num_vertices(); ++v) phi.values[v] = f(mesh->vertices[v]);
  return phi;
}

EnrichedField enrich_cr(const CrField& u) {
  const Mesh& mesh = *u.mesh;
  EnrichedField out;
  out.vertex_values.assign(mesh.num_vertices(), Vec2{});
  out.midpoint_values.resize(mesh.num_edges());
  std::vector<int> count(mesh.num_vertices(), 0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int i = 0; i < 3; ++i) {
      std::array<double, 3> lambda{0.0, 0.0, 0.0};
      lambda[i] = 1.0;
      const int v = mesh.cells[c][i];
      out.vertex_values[v] = out.vertex_values[v] + u.evaluate(c, lambda);
      ++count[v];
    }
  }
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out.vertex_values[v] = (1.0 / count[v]) * out.vertex_values[v];
  for (int e = 0; e < mesh.num_edges(); ++e) out.midpoint_values[e] = u.at_edge(e);
  return out;
}

bool is_red_child(const Mesh& coarse, const Mesh& fine) {
  const int nv = coarse.num_vertices();
  if (fine.level != coarse.level + 1) return false;
  if (fine.num_vertices() != nv + coarse.num_edges()) return false;
  if (fine.num_cells() != 4 * coarse.num_cells()) return false;
  for (int v = 0; v < nv; ++v) {
    if (!(fine.vertices[v] == coarse.vertices[v])) return false;
  }
  for (int e = 0; e < coarse.num_edges(); ++e) {
    if (fine.vertex_parents[nv + e] != coarse.edges[e]) return false;
  }
  return true;
}

P1Field prolong_p1(const P1Field& phi, const MeshPtr& fine) {
  const Mesh& coarse = *phi.mesh;
  if (!is_red_child(coarse, *fine))
    throw ValidationError("prolong_p1: target mesh is not the red refinement of the field's mesh");
  P1Field out(fine, 0.0);
  const int nv = coarse.num_vertices();
  for (int v = 0; v < nv; ++v) out.values[v] = phi.values[v];
  for (int e = 0; e < coarse.num_edges(); ++e) {
    const auto [a, b] = coarse.edges[e];
    out.values[nv + e] = 0.5 * (phi.values[a] + phi.values[b]);
  }
  return out;
}

double field_norm(const CrField& u, NormKind kind) {
  const Mesh& mesh = *u.mesh;
  double sum = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const TriangleGeometry g = mesh.geometry(c);
    if (kind == NormKind::l2) {
      // CR basis functions are L2-orthogonal on each cell with norm^2 = |T|/3.
      for (int i = 0; i < 3; ++i) {
        const Vec2 v = u.at_edge(mesh.cell_edges[c][i]);
        sum += g.area / 3.0 * dot(v, v);
      }
    } else {
      const auto grad = u.gradient(c, g);
      sum += g.area * (dot(grad[0], grad[0]) + dot(grad[1], grad[1]));
    }
  }
  return std::sqrt(sum);
}

double field_norm(const P1Field& phi, NormKind kind) {
  const Mesh& mesh = *phi.mesh;
  double sum = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const TriangleGeometry g = mesh.geometry(c);
    const Cell& t = mesh.cells[c];
    if (kind == NormKind::l2) {
      // (|T|/12) * (sum_i v_i^2 + (sum_i v_i)^2)
      double sq = 0.0, s = 0.0;
      for (int i = 0; i < 3; ++i) {
        sq += phi.values[t[i]] * phi.values[t[i]];
        s += phi.values[t[i]];
      }
      sum += g.area / 12.0 * (sq + s * s);
    } else {
      Vec2 grad;
      for (int i = 0; i < 3; ++i) grad = grad + phi.values[t[i]] * g.grad_lambda[i];
      sum += g.area * dot(grad, grad);
    }
  }
  return std::sqrt(sum);
}

} // namespace crtopo
