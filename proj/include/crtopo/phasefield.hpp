#ifndef CRTOPO_PHASEFIELD_HPP
#define CRTOPO_PHASEFIELD_HPP

#include <memory>
#include <vector>

#include "crtopo/assembly.hpp"
#include "crtopo/spaces.hpp"
#include "crtopo/stokes.hpp"

namespace crtopo {

/// Scalars of the phase-field scheme. The Brinkman coefficient and the
/// viscosity live in PhysParams.
struct PhaseParams {
  double epsilon = 1e-2; ///< interface width
  double gamma = 1e-2;   ///< perimeter weight
  double dt = 5e-4;      ///< pseudo-time step
  double s_tilde = 0.25; ///< stabilization
  double beta = 0.3;     ///< target fluid volume fraction
  double kappa = 1.1;    ///< penalty growth factor
  double zeta0 = 100.0;  ///< initial penalty
  double ell0 = 0.0;     ///< initial multiplier
  /// Evaluate the penalty term zeta W at the new iterate instead of the old
  /// one. Adds a rank-one term to the system; stable for any zeta.
  bool implicit_penalty = true;

  void validate() const;
  friend bool operator==(const PhaseParams&, const PhaseParams&) = default;
};

struct DualState {
  double ell = 0.0;  ///< Lagrange multiplier of the volume constraint
  double zeta = 1.0; ///< penalty parameter
  friend bool operator==(const DualState&, const DualState&) = default;
};

/// f(phi) = phi^2 (1 - phi)^2 / 4
inline double double_well(double phi) {
  const double s = phi * (1.0 - phi);
  return 0.25 * s * s;
}

/// f'(phi) = phi (1 - phi) (1 - 2 phi) / 2
inline double double_well_prime(double phi) { return 0.5 * phi * (1.0 - phi) * (1.0 - 2.0 * phi); }

/// W(phi) = int phi - beta |Omega|
double volume_gap(const P1Field& phi, double beta);

/// P(phi) = (eps/2) int |grad phi|^2 + (1/eps) int f(phi)
double ginzburg_landau(const P1Field& phi, double epsilon);

/// Augmented Lagrangian and its parts:
/// total = brinkman + dissipated + ginzburg_landau + ell W + (zeta/2) W^2,
/// where ginzburg_landau already carries the factor gamma.
struct LagrangianBreakdown {
  double brinkman = 0.0;
  double dissipated = 0.0;
  double ginzburg_landau = 0.0;
  double volume_gap = 0.0;
  double multiplier_term = 0.0;
  double penalty_term = 0.0;
  double total = 0.0;

  /// J = brinkman + dissipated + ginzburg_landau
  double objective() const { return brinkman + dissipated + ginzburg_landau; }
};

LagrangianBreakdown augmented_lagrangian(const P1Field& phi, const CrField& u, const DualState& duals,
                                         const PhaseParams& params, const PhysParams& phys);

/// |u|^2 at the order-4 quadrature points of every cell.
QuadratureValues velocity_magnitude_squared(const CrField& u);

/// Stabilized semi-implicit update of the phase field with the velocity
/// frozen. The SPD system
///
///   [M/dt + eps*gamma*K + M_w] phi+ = M phi/dt + load(phi)
///
/// with M_w the mass weighted by (alpha0 |u|^2 / 2 + S) depends only on u,
/// so it is factorized once and reused for every inner step. With
/// implicit_penalty the term zeta W(phi) of the load becomes zeta W(phi+),
/// i.e. zeta m m^T joins the matrix (m = M 1); the rank-one part is handled
/// by Sherman-Morrison on the same factorization.
class PhaseStepper {
public:
  PhaseStepper(const P1Operators& operators, const CrField& u, const PhaseParams& params,
               const PhysParams& phys, Exec exec = Exec::parallel);
  ~PhaseStepper();
  PhaseStepper(PhaseStepper&&) noexcept;
  PhaseStepper& operator=(PhaseStepper&&) noexcept;

  /// One update, without projection.
  P1Field step(const P1Field& phi, const DualState& duals) const;

  /// Nodal residual load(phi) - (eps*gamma*K + M_w) phi, i.e. the negative
  /// gradient of the augmented Lagrangian with respect to the nodal values.
  std::vector<double> descent_direction(const P1Field& phi, const DualState& duals) const;

  /// load(phi) alone.
  std::vector<double> load(const P1Field& phi, const DualState& duals) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper: assembles P1 operators and performs a single step.
P1Field phase_step(const P1Field& phi, const CrField& u, const DualState& duals, const PhaseParams& params,
                   const PhysParams& phys);

/// min{max{0, phi}, 1} at every vertex.
P1Field project_box(const P1Field& phi);

/// ell+ = ell + zeta W, zeta+ = kappa zeta
DualState update_duals(const DualState& duals, double gap, const PhaseParams& params);

} // namespace crtopo

#endif
