#ifndef CRTOPO_STOKES_HPP
#define CRTOPO_STOKES_HPP

#include <vector>

#include "crtopo/assembly.hpp"
#include "crtopo/cases.hpp"
#include "crtopo/sparse.hpp"
#include "crtopo/spaces.hpp"

namespace crtopo {

struct PhysParams {
  double mu = 1.0;         ///< viscosity
  double alpha0 = 10000.0; ///< Brinkman penalty: alpha(phi) = alpha0 (1 - phi)^2

  void validate() const;
  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

/// Discrete Stokes-Brinkman saddle-point problem
///
///   [ A  -B^T ] [u]   [rhs_u]
///   [-B   0   ] [p] = [  0  ]
///
/// with A = mu * stiffness + alpha-weighted mass and B the cellwise
/// divergence. Dirichlet velocity DOFs are eliminated symmetrically at solve
/// time. Without an outlet the pressure is fixed by a mean-zero constraint.
struct SaddleSystem {
  MeshPtr mesh;
  CsrMatrix a;
  CsrMatrix b;
  std::vector<double> rhs_u;
  std::vector<int> dirichlet_dofs;      ///< sorted
  std::vector<double> dirichlet_values; ///< parallel to dirichlet_dofs
  bool mean_zero_pressure = false;
};

struct StokesSolution {
  CrField u;
  P0Field p;
  double linear_residual = 0.0;     ///< relative residual of the eliminated system
  double max_cell_divergence = 0.0; ///< max over cells of |div u| on the cell
};

/// Throws ValidationError when phi is off-mesh or outside [0,1], when an inlet
/// edge names a missing profile, or when no edge carries a Dirichlet condition.
SaddleSystem build_system(const MeshPtr& mesh, const P1Field& phi, const PhysParams& phys,
                          const BoundaryData& boundary, const VectorFunction& f = {},
                          Exec exec = Exec::parallel);

/// Sparse direct solve of the full saddle-point block. Throws SolverError on
/// a singular factorization or when the relative residual exceeds 1e-10.
StokesSolution solve_saddle(const SaddleSystem& system);

StokesSolution solve_state(const MeshPtr& mesh, const P1Field& phi, const PhysParams& phys,
                           const BoundaryData& boundary, const VectorFunction& f = {},
                           Exec exec = Exec::parallel);

struct StateDiagnostics {
  double dissipated_power = 0.0; ///< (mu/2) |u|^2 in the broken H1 seminorm
  double brinkman_energy = 0.0;  ///< (1/2) int alpha(phi) |u|^2
};

StateDiagnostics state_diagnostics(const CrField& u, const P1Field& phi, const PhysParams& phys);

inline constexpr double kSaddleResidualTolerance = 1e-10;

} // namespace crtopo

#endif
