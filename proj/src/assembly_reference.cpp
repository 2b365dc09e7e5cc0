#include "crtopo/assembly.hpp"

#include <string>

#include "crtopo/error.hpp"
#include "local_kernels.hpp"

namespace crtopo::reference {

namespace {

void add_cr_block(TripletList& t, const Mesh& mesh, int c, const detail::Local3& local) {
  const int ne = mesh.num_edges();
  const auto& dofs = mesh.cell_edges[c];
  for (int comp = 0; comp < 2; ++comp)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.add(dofs[i] + comp * ne, dofs[j] + comp * ne, local[i][j]);
}

void add_p1_block(TripletList& t, const Mesh& mesh, int c, const detail::Local3& local) {
  const auto& dofs = mesh.cells[c];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.add(dofs[i], dofs[j], local[i][j]);
}

} // namespace

CsrMatrix assemble_cr_stiffness(const Mesh& mesh) {
  TripletList t(2 * mesh.num_edges(), 2 * mesh.num_edges());
  for (int c = 0; c < mesh.num_cells(); ++c)
    add_cr_block(t, mesh, c, detail::cr_stiffness_local(mesh.geometry(c)));
  return finalize(t, true, Exec::serial);
}

CsrMatrix assemble_weighted_cr_mass(const Mesh& mesh, const P1Field& phi, const ScalarFunction& alpha) {
  TripletList t(2 * mesh.num_edges(), 2 * mesh.num_edges());
  std::array<double, quadrature::kOrder4Size> w{};
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int q = 0; q < quadrature::kOrder4Size; ++q)
      w[q] = alpha(phi.evaluate(c, quadrature::kOrder4[q].lambda));
    add_cr_block(t, mesh, c, detail::weighted_cr_mass_local(mesh.geometry(c), w));
  }
  return finalize(t, true, Exec::serial);
}

CsrMatrix assemble_cr_mass(const Mesh& mesh) {
  TripletList t(2 * mesh.num_edges(), 2 * mesh.num_edges());
  for (int c = 0; c < mesh.num_cells(); ++c)
    add_cr_block(t, mesh, c, detail::cr_mass_local(mesh.geometry(c)));
  return finalize(t, true, Exec::serial);
}

CsrMatrix assemble_divergence(const Mesh& mesh) {
  const int ne = mesh.num_edges();
  TripletList t(mesh.num_cells(), 2 * ne);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto d = detail::divergence_local(mesh.geometry(c));
    for (int comp = 0; comp < 2; ++comp)
      for (int j = 0; j < 3; ++j) t.add(c, mesh.cell_edges[c][j] + comp * ne, d[comp][j]);
  }
  return finalize(t, false, Exec::serial);
}

P1Operators assemble_p1_operators(const Mesh& mesh) {
  TripletList k(mesh.num_vertices(), mesh.num_vertices());
  TripletList m(mesh.num_vertices(), mesh.num_vertices());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const TriangleGeometry g = mesh.geometry(c);
    add_p1_block(k, mesh, c, detail::p1_stiffness_local(g));
    add_p1_block(m, mesh, c, detail::p1_mass_local(g));
  }
  return {finalize(k, true, Exec::serial), finalize(m, true, Exec::serial)};
}

CsrMatrix assemble_weighted_p1_mass(const Mesh& mesh, std::span<const double> weights) {
  TripletList t(mesh.num_vertices(), mesh.num_vertices());
  for (int c = 0; c < mesh.num_cells(); ++c)
    add_p1_block(t, mesh, c,
                 detail::weighted_p1_mass_local(
                     mesh.geometry(c), weights.subspan(c * quadrature::kOrder4Size, quadrature::kOrder4Size)));
  return finalize(t, true, Exec::serial);
}

std::vector<double> assemble_velocity_load(const Mesh& mesh, const VectorFunction& f) {
  const int ne = mesh.num_edges();
  std::vector<double> b(2 * static_cast<std::size_t>(ne), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto local = detail::cr_load_local(mesh.geometry(c), f);
    for (int i = 0; i < 3; ++i) {
      b[mesh.cell_edges[c][i]] += local[i].x;
      b[mesh.cell_edges[c][i] + ne] += local[i].y;
    }
  }
  return b;
}

std::vector<double> assemble_p1_load(const Mesh& mesh, std::span<const double> integrand) {
  std::vector<double> b(mesh.num_vertices(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto local = detail::p1_load_local(
        mesh.geometry(c), integrand.subspan(c * quadrature::kOrder4Size, quadrature::kOrder4Size));
    for (int i = 0; i < 3; ++i) b[mesh.cells[c][i]] += local[i];
  }
  return b;
}

} // namespace crtopo::reference
