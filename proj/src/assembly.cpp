#include "crtopo/assembly.hpp"

#include <string>

#include "crtopo/error.hpp"
#include "local_kernels.hpp"

namespace crtopo {

namespace {

constexpr int kQ = quadrature::kOrder4Size;

void check_quadrature_values(const Mesh& mesh, std::span<const double> values, const char* what) {
  if (values.size() != static_cast<std::size_t>(mesh.num_cells()) * kQ)
    throw ValidationError(std::string(what) + ": expected one value per cell quadrature point");
}

void check_field_mesh(const Mesh& mesh, const P1Field& phi, const char* what) {
  if (phi.mesh.get() != &mesh && (phi.mesh == nullptr || phi.mesh->num_vertices() != mesh.num_vertices() ||
                                  phi.mesh->num_cells() != mesh.num_cells()))
    throw ValidationError(std::string(what) + ": phase field lives on a different mesh");
  if (static_cast<int>(phi.values.size()) != mesh.num_vertices())
    throw ValidationError(std::string(what) + ": phase field has wrong size");
}

// Element e writes its entries at offset e * stride, in the same order as
// the reference loop, so finalization sums duplicates identically.
template <class LocalFn>
CsrMatrix cr_block_matrix(const Mesh& mesh, LocalFn local_fn) {
  const int ne = mesh.num_edges();
  const int nc = mesh.num_cells();
  constexpr int stride = 18;
  TripletList t(2 * ne, 2 * ne);
  t.resize(static_cast<std::size_t>(nc) * stride);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const detail::Local3 local = local_fn(c);
    const auto& dofs = mesh.cell_edges[c];
    std::size_t k = static_cast<std::size_t>(c) * stride;
    for (int comp = 0; comp < 2; ++comp)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j, ++k) {
          t.row[k] = dofs[i] + comp * ne;
          t.col[k] = dofs[j] + comp * ne;
          t.value[k] = local[i][j];
        }
  }
  return finalize(t, true, Exec::parallel);
}

template <class LocalFn>
CsrMatrix p1_matrix(const Mesh& mesh, LocalFn local_fn) {
  const int nc = mesh.num_cells();
  constexpr int stride = 9;
  TripletList t(mesh.num_vertices(), mesh.num_vertices());
  t.resize(static_cast<std::size_t>(nc) * stride);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const detail::Local3 local = local_fn(c);
    const auto& dofs = mesh.cells[c];
    std::size_t k = static_cast<std::size_t>(c) * stride;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j, ++k) {
        t.row[k] = dofs[i];
        t.col[k] = dofs[j];
        t.value[k] = local[i][j];
      }
  }
  return finalize(t, true, Exec::parallel);
}

} // namespace

CsrMatrix assemble_cr_stiffness(const Mesh& mesh, Exec exec) {
  if (exec == Exec::serial) return reference::assemble_cr_stiffness(mesh);
  return cr_block_matrix(mesh, [&](int c) { return detail::cr_stiffness_local(mesh.geometry(c)); });
}

CsrMatrix assemble_weighted_cr_mass(const Mesh& mesh, const P1Field& phi, const ScalarFunction& alpha,
                                    Exec exec) {
  check_field_mesh(mesh, phi, "assemble_weighted_cr_mass");
  if (exec == Exec::serial) return reference::assemble_weighted_cr_mass(mesh, phi, alpha);
  // alpha is evaluated serially: std::function callables need not be thread-safe.
  QuadratureValues w(static_cast<std::size_t>(mesh.num_cells()) * kQ);
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int q = 0; q < kQ; ++q) w[c * kQ + q] = alpha(phi.evaluate(c, quadrature::kOrder4[q].lambda));
  return cr_block_matrix(mesh, [&](int c) {
    return detail::weighted_cr_mass_local(mesh.geometry(c), std::span<const double>(w).subspan(c * kQ, kQ));
  });
}

CsrMatrix assemble_cr_mass(const Mesh& mesh, Exec exec) {
  if (exec == Exec::serial) return reference::assemble_cr_mass(mesh);
  return cr_block_matrix(mesh, [&](int c) { return detail::cr_mass_local(mesh.geometry(c)); });
}

CsrMatrix assemble_divergence(const Mesh& mesh, Exec exec) {
  if (exec == Exec::serial) return reference::assemble_divergence(mesh);
  const int ne = mesh.num_edges();
  const int nc = mesh.num_cells();
  constexpr int stride = 6;
  TripletList t(nc, 2 * ne);
  t.resize(static_cast<std::size_t>(nc) * stride);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const auto d = detail::divergence_local(mesh.geometry(c));
    std::size_t k = static_cast<std::size_t>(c) * stride;
    for (int comp = 0; comp < 2; ++comp)
      for (int j = 0; j < 3; ++j, ++k) {
        t.row[k] = c;
        t.col[k] = mesh.cell_edges[c][j] + comp * ne;
        t.value[k] = d[comp][j];
      }
  }
  return finalize(t, false, Exec::parallel);
}

P1Operators assemble_p1_operators(const Mesh& mesh, Exec exec) {
  if (exec == Exec::serial) return reference::assemble_p1_operators(mesh);
  return {p1_matrix(mesh, [&](int c) { return detail::p1_stiffness_local(mesh.geometry(c)); }),
          p1_matrix(mesh, [&](int c) { return detail::p1_mass_local(mesh.geometry(c)); })};
}

CsrMatrix assemble_weighted_p1_mass(const Mesh& mesh, std::span<const double> weights, Exec exec) {
  check_quadrature_values(mesh, weights, "assemble_weighted_p1_mass");
  if (exec == Exec::serial) return reference::assemble_weighted_p1_mass(mesh, weights);
  return p1_matrix(mesh, [&](int c) {
    return detail::weighted_p1_mass_local(mesh.geometry(c), weights.subspan(c * kQ, kQ));
  });
}

std::vector<double> assemble_velocity_load(const Mesh& mesh, const VectorFunction& f, Exec exec) {
  if (exec == Exec::serial) return reference::assemble_velocity_load(mesh, f);
  const int ne = mesh.num_edges();
  const int nc = mesh.num_cells();
  // Sample f serially, integrate in parallel, scatter in cell order.
  std::vector<Vec2> fq(static_cast<std::size_t>(nc) * kQ);
  for (int c = 0; c < nc; ++c) {
    const TriangleGeometry g = mesh.geometry(c);
    for (int q = 0; q < kQ; ++q) fq[c * kQ + q] = f(g.point(quadrature::kOrder4[q].lambda));
  }
  std::vector<std::array<Vec2, 3>> local(nc);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    int q = 0;
    local[c] = detail::cr_load_local(mesh.geometry(c), [&](Vec2) { return fq[c * kQ + q++]; });
  }
  std::vector<double> b(2 * static_cast<std::size_t>(ne), 0.0);
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < 3; ++i) {
      b[mesh.cell_edges[c][i]] += local[c][i].x;
      b[mesh.cell_edges[c][i] + ne] += local[c][i].y;
    }
  }
  return b;
}

std::vector<double> assemble_p1_load(const Mesh& mesh, std::span<const double> integrand, Exec exec) {
  check_quadrature_values(mesh, integrand, "assemble_p1_load");
  if (exec == Exec::serial) return reference::assemble_p1_load(mesh, integrand);
  const int nc = mesh.num_cells();
  std::vector<std::array<double, 3>> local(nc);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c)
    local[c] = detail::p1_load_local(mesh.geometry(c), integrand.subspan(c * kQ, kQ));
  std::vector<double> b(mesh.num_vertices(), 0.0);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < 3; ++i) b[mesh.cells[c][i]] += local[c][i];
  return b;
}

} // namespace crtopo
