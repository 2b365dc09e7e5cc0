#include "crtopo/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseLU>
#ifdef CRTOPO_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include "crtopo/error.hpp"
#include "crtopo/quadrature.hpp"

namespace crtopo {

void PhysParams::validate() const {
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  if (!(alpha0 >= 0.0)) throw ValidationError("alpha0 must be non-negative");
}

SaddleSystem build_system(const MeshPtr& mesh, const P1Field& phi, const PhysParams& phys,
                          const BoundaryData& boundary, const VectorFunction& f, Exec exec) {
  phys.validate();
  if (phi.mesh != mesh) throw ValidationError("build_system: phase field lives on a different mesh");
  for (double v : phi.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("build_system: phase field outside [0,1]");
  }

  const Mesh& m = *mesh;
  const int ne = m.num_edges();
  SaddleSystem sys;
  sys.mesh = mesh;

  bool has_dirichlet = false, has_outlet = false;
  for (int e = 0; e < ne; ++e) {
    if (!m.is_boundary_edge(e)) continue;
    const BoundaryTag& tag = m.edge_tags[e];
    if (tag.kind == BoundaryKind::outlet) {
      has_outlet = true;
      continue;
    }
    Vec2 g;
    if (tag.kind == BoundaryKind::inlet) {
      if (tag.profile < 0 || tag.profile >= static_cast<int>(boundary.inlet_profiles.size()))
        throw ValidationError("build_system: inlet edge " + std::to_string(e) + " refers to missing profile " +
                              std::to_string(tag.profile));
      g = edge_average(m, e, boundary.inlet_profiles[tag.profile]);
    } else if (tag.kind != BoundaryKind::wall) {
      throw ValidationError("build_system: boundary edge " + std::to_string(e) + " is untagged");
    }
    has_dirichlet = true;
    sys.dirichlet_dofs.push_back(e);
    sys.dirichlet_values.push_back(g.x);
  }
  if (!has_dirichlet)
    throw ValidationError("build_system: no Dirichlet boundary; the velocity is not determined");
  // y-components follow all x-components, so appending keeps the list sorted.
  const std::size_t nd = sys.dirichlet_dofs.size();
  for (std::size_t k = 0; k < nd; ++k) {
    const int e = sys.dirichlet_dofs[k];
    Vec2 g;
    if (m.edge_tags[e].kind == BoundaryKind::inlet)
      g = edge_average(m, e, boundary.inlet_profiles[m.edge_tags[e].profile]);
    sys.dirichlet_dofs.push_back(e + ne);
    sys.dirichlet_values.push_back(g.y);
  }
  sys.mean_zero_pressure = !has_outlet;

  const CsrMatrix stiffness = assemble_cr_stiffness(m, exec);
  const double alpha0 = phys.alpha0;
  const CsrMatrix mass =
      assemble_weighted_cr_mass(m, phi, [alpha0](double v) { return brinkman_alpha(alpha0, v); }, exec);
  sys.a = linear_combination(phys.mu, stiffness, 1.0, mass);
  sys.b = assemble_divergence(m, exec);
  sys.rhs_u = f ? assemble_velocity_load(m, f, exec) : std::vector<double>(2 * static_cast<std::size_t>(ne), 0.0);
  return sys;
}

namespace {

struct KktSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
};

// With mean_zero_pressure the pressure of cell 0 is pinned to zero and its
// continuity row dropped; the mean is removed after the solve. A bordered
// mean-value row would be dense and ruin the fill-reducing ordering.
KktSystem eliminate(const SaddleSystem& sys) {
  const int nu = sys.a.rows;
  const int np = sys.b.rows;
  const int n = nu + np;
  const int pinned = sys.mean_zero_pressure ? 0 : -1;

  std::vector<int> fixed(nu, -1);
  for (std::size_t k = 0; k < sys.dirichlet_dofs.size(); ++k) fixed[sys.dirichlet_dofs[k]] = static_cast<int>(k);

  KktSystem kkt;
  kkt.rhs = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < nu; ++i) kkt.rhs[i] = sys.rhs_u[i];

  std::vector<Eigen::Triplet<double>> t;
  t.reserve(sys.a.nnz() + 2 * sys.b.nnz() + nu + 1);
  for (int i = 0; i < nu; ++i) {
    if (fixed[i] >= 0) {
      t.emplace_back(i, i, 1.0);
      kkt.rhs[i] = sys.dirichlet_values[fixed[i]];
      continue;
    }
    for (int k = sys.a.row_ptr[i]; k < sys.a.row_ptr[i + 1]; ++k) {
      const int j = sys.a.col[k];
      if (fixed[j] >= 0)
        kkt.rhs[i] -= sys.a.value[k] * sys.dirichlet_values[fixed[j]];
      else
        t.emplace_back(i, j, sys.a.value[k]);
    }
  }
  for (int c = 0; c < np; ++c) {
    if (c == pinned) {
      t.emplace_back(nu + c, nu + c, 1.0);
      continue;
    }
    for (int k = sys.b.row_ptr[c]; k < sys.b.row_ptr[c + 1]; ++k) {
      const int j = sys.b.col[k];
      const double v = -sys.b.value[k];
      if (fixed[j] >= 0) {
        kkt.rhs[nu + c] -= v * sys.dirichlet_values[fixed[j]];
      } else {
        t.emplace_back(nu + c, j, v);
        t.emplace_back(j, nu + c, v);
      }
    }
  }
  kkt.matrix.resize(n, n);
  kkt.matrix.setFromTriplets(t.begin(), t.end());
  kkt.matrix.makeCompressed();
  return kkt;
}

std::string describe_singularity(const Eigen::SparseMatrix<double>& a, int nu) {
  Eigen::VectorXd col_norm = Eigen::VectorXd::Zero(a.cols());
  for (int j = 0; j < a.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, j); it; ++it) col_norm[j] += std::abs(it.value());
  for (int j = 0; j < a.cols(); ++j) {
    if (col_norm[j] == 0.0) {
      if (j < nu) return "velocity DOF " + std::to_string(j) + " has an empty column";
      return "pressure DOF " + std::to_string(j - nu) + " has an empty column";
    }
  }
  return "matrix is numerically singular";
}

template <class Solver>
Eigen::VectorXd factor_and_solve(Solver& solver, const KktSystem& kkt, int nu) {
  solver.compute(kkt.matrix);
  if (solver.info() != Eigen::Success)
    throw SolverError("solve_saddle: factorization failed: " + describe_singularity(kkt.matrix, nu));
  Eigen::VectorXd x = solver.solve(kkt.rhs);
  if (solver.info() != Eigen::Success) throw SolverError("solve_saddle: back substitution failed");
  const double scale = std::max(kkt.rhs.norm(), 1e-300);
  for (int it = 0; it < 3; ++it) {
    const Eigen::VectorXd r = kkt.rhs - kkt.matrix * x;
    if (r.norm() <= 1e-13 * scale) break;
    x += solver.solve(r);
  }
  return x;
}

} // namespace

StokesSolution solve_saddle(const SaddleSystem& sys) {
  const int nu = sys.a.rows;
  const int np = sys.b.rows;
  const KktSystem kkt = eliminate(sys);

  Eigen::VectorXd x;
#ifdef CRTOPO_HAVE_UMFPACK
  Eigen::UmfPackLU<Eigen::SparseMatrix<double>> solver;
  x = factor_and_solve(solver, kkt, nu);
#else
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> solver;
  x = factor_and_solve(solver, kkt, nu);
#endif
  if (!x.allFinite()) throw SolverError("solve_saddle: non-finite solution");

  StokesSolution sol;
  const double rhs_norm = kkt.rhs.norm();
  const double res = (kkt.rhs - kkt.matrix * x).norm();
  sol.linear_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
  if (sol.linear_residual > kSaddleResidualTolerance)
    throw SolverError("solve_saddle: relative residual " + std::to_string(sol.linear_residual) +
                      " exceeds tolerance");

  sol.u = CrField(sys.mesh);
  for (int i = 0; i < nu; ++i) sol.u.values[i] = x[i];
  sol.p = P0Field(sys.mesh);
  for (int c = 0; c < np; ++c) sol.p.values[c] = x[nu + c];
  if (sys.mean_zero_pressure) {
    const double mean = sol.p.integral() / sys.mesh->domain_area();
    for (double& v : sol.p.values) v -= mean;
  }

  const std::vector<double> div = multiply(sys.b, sol.u.values, Exec::serial);
  for (int c = 0; c < np; ++c)
    sol.max_cell_divergence = std::max(sol.max_cell_divergence, std::abs(div[c]) / sys.mesh->cell_area(c));
  return sol;
}

StokesSolution solve_state(const MeshPtr& mesh, const P1Field& phi, const PhysParams& phys,
                           const BoundaryData& boundary, const VectorFunction& f, Exec exec) {
  return solve_saddle(build_system(mesh, phi, phys, boundary, f, exec));
}

StateDiagnostics state_diagnostics(const CrField& u, const P1Field& phi, const PhysParams& phys) {
  if (u.mesh != phi.mesh) throw ValidationError("state_diagnostics: fields live on different meshes");
  const Mesh& m = *u.mesh;
  StateDiagnostics d;
  const double h1 = field_norm(u, NormKind::broken_h1);
  d.dissipated_power = 0.5 * phys.mu * h1 * h1;
  double brinkman = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const double area = m.cell_area(c);
    for (const auto& q : quadrature::kOrder4) {
      const Vec2 v = u.evaluate(c, q.lambda);
      brinkman += q.weight * area * brinkman_alpha(phys.alpha0, phi.evaluate(c, q.lambda)) * dot(v, v);
    }
  }
  d.brinkman_energy = 0.5 * brinkman;
  return d;
}

} // namespace crtopo
