#include "crtopo/phasefield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCholesky>

#include "crtopo/error.hpp"
#include "crtopo/quadrature.hpp"

namespace crtopo {

namespace {
constexpr int kQ = quadrature::kOrder4Size;
}

void PhaseParams::validate() const {
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ValidationError(std::string(key) + " " + what);
  };
  require(epsilon > 0.0, "epsilon", "must be positive");
  require(gamma > 0.0, "gamma", "must be positive");
  require(dt > 0.0, "dt", "must be positive");
  require(s_tilde >= 0.0, "s_tilde", "must be non-negative");
  require(beta > 0.0 && beta < 1.0, "beta", "must lie in (0,1)");
  require(kappa >= 1.0, "kappa", "must be at least 1");
  require(zeta0 > 0.0, "zeta0", "must be positive");
  require(std::isfinite(ell0), "ell0", "must be finite");
}

double volume_gap(const P1Field& phi, double beta) {
  const Mesh& m = *phi.mesh;
  double integral = 0.0, area = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const Cell& t = m.cells[c];
    const double a = m.cell_area(c);
    integral += a / 3.0 * (phi.values[t[0]] + phi.values[t[1]] + phi.values[t[2]]);
    area += a;
  }
  return integral - beta * area;
}

double ginzburg_landau(const P1Field& phi, double epsilon) {
  const Mesh& m = *phi.mesh;
  const double h1 = field_norm(phi, NormKind::broken_h1);
  double well = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const double a = m.cell_area(c);
    for (const auto& q : quadrature::kOrder4) well += q.weight * a * double_well(phi.evaluate(c, q.lambda));
  }
  return 0.5 * epsilon * h1 * h1 + well / epsilon;
}

LagrangianBreakdown augmented_lagrangian(const P1Field& phi, const CrField& u, const DualState& duals,
                                         const PhaseParams& params, const PhysParams& phys) {
  const StateDiagnostics d = state_diagnostics(u, phi, phys);
  LagrangianBreakdown r;
  r.brinkman = d.brinkman_energy;
  r.dissipated = d.dissipated_power;
  r.ginzburg_landau = params.gamma * ginzburg_landau(phi, params.epsilon);
  r.volume_gap = volume_gap(phi, params.beta);
  r.multiplier_term = duals.ell * r.volume_gap;
  r.penalty_term = 0.5 * duals.zeta * r.volume_gap * r.volume_gap;
  r.total = r.brinkman + r.dissipated + r.ginzburg_landau + r.multiplier_term + r.penalty_term;
  return r;
}

QuadratureValues velocity_magnitude_squared(const CrField& u) {
  const Mesh& m = *u.mesh;
  QuadratureValues out(static_cast<std::size_t>(m.num_cells()) * kQ);
  for (int c = 0; c < m.num_cells(); ++c) {
    for (int q = 0; q < kQ; ++q) {
      const Vec2 v = u.evaluate(c, quadrature::kOrder4[q].lambda);
      out[c * kQ + q] = dot(v, v);
    }
  }
  return out;
}

struct PhaseStepper::Impl {
  MeshPtr mesh;
  const P1Operators* ops = nullptr;
  PhaseParams params;
  PhysParams phys;
  Exec exec = Exec::parallel;
  QuadratureValues u_squared;
  CsrMatrix weighted_mass;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  Eigen::VectorXd m;       // M 1
  Eigen::VectorXd m_solve; // lhs^{-1} m
  double m_dot_solve = 0.0;
};

PhaseStepper::PhaseStepper(const P1Operators& operators, const CrField& u, const PhaseParams& params,
                           const PhysParams& phys, Exec exec)
    : impl_(std::make_unique<Impl>()) {
  params.validate();
  phys.validate();
  Impl& s = *impl_;
  s.mesh = u.mesh;
  s.ops = &operators;
  s.params = params;
  s.phys = phys;
  s.exec = exec;
  if (operators.mass.rows != s.mesh->num_vertices())
    throw ValidationError("PhaseStepper: operators and velocity live on different meshes");

  s.u_squared = velocity_magnitude_squared(u);
  QuadratureValues weight(s.u_squared.size());
  for (std::size_t k = 0; k < weight.size(); ++k)
    weight[k] = 0.5 * phys.alpha0 * s.u_squared[k] + params.s_tilde;
  s.weighted_mass = assemble_weighted_p1_mass(*s.mesh, weight, exec);

  const CsrMatrix lhs = linear_combination(
      1.0, linear_combination(1.0 / params.dt, operators.mass, params.epsilon * params.gamma, operators.stiffness),
      1.0, s.weighted_mass);
  s.solver.compute(to_eigen(lhs));
  if (s.solver.info() != Eigen::Success)
    throw SolverError("PhaseStepper: factorization of the phase-field system failed");
  if (params.implicit_penalty) {
    const std::vector<double> ones(s.mesh->num_vertices(), 1.0);
    const std::vector<double> m = multiply(operators.mass, ones, exec);
    s.m = Eigen::Map<const Eigen::VectorXd>(m.data(), static_cast<Eigen::Index>(m.size()));
    s.m_solve = s.solver.solve(s.m);
    s.m_dot_solve = s.m.dot(s.m_solve);
  }
}

PhaseStepper::~PhaseStepper() = default;
PhaseStepper::PhaseStepper(PhaseStepper&&) noexcept = default;
PhaseStepper& PhaseStepper::operator=(PhaseStepper&&) noexcept = default;

std::vector<double> PhaseStepper::load(const P1Field& phi, const DualState& duals) const {
  const Impl& s = *impl_;
  if (phi.mesh != s.mesh) throw ValidationError("PhaseStepper: phase field lives on a different mesh");
  const Mesh& m = *s.mesh;
  const PhaseParams& p = s.params;
  const double alpha0 = s.phys.alpha0;
  const double shift = -duals.ell - duals.zeta * volume_gap(phi, p.beta);
  QuadratureValues integrand(s.u_squared.size());
  for (int c = 0; c < m.num_cells(); ++c) {
    for (int q = 0; q < kQ; ++q) {
      const double ph = phi.evaluate(c, quadrature::kOrder4[q].lambda);
      const double u2 = s.u_squared[c * kQ + q];
      integrand[c * kQ + q] = -p.gamma / p.epsilon * double_well_prime(ph) + alpha0 * u2 + shift +
                              (p.s_tilde - 0.5 * alpha0 * u2) * ph;
    }
  }
  return assemble_p1_load(m, integrand, s.exec);
}

std::vector<double> PhaseStepper::descent_direction(const P1Field& phi, const DualState& duals) const {
  const Impl& s = *impl_;
  std::vector<double> r = load(phi, duals);
  const std::vector<double> k_phi = multiply(s.ops->stiffness, phi.values, s.exec);
  const std::vector<double> w_phi = multiply(s.weighted_mass, phi.values, s.exec);
  const double eg = s.params.epsilon * s.params.gamma;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= eg * k_phi[i] + w_phi[i];
  return r;
}

P1Field PhaseStepper::step(const P1Field& phi, const DualState& duals) const {
  const Impl& s = *impl_;
  std::vector<double> rhs = load(phi, duals);
  const std::vector<double> m_phi = multiply(s.ops->mass, phi.values, s.exec);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) b[static_cast<Eigen::Index>(i)] = rhs[i] + m_phi[i] / s.params.dt;
  Eigen::VectorXd x;
  if (s.params.implicit_penalty) {
    // load carries -zeta (m.phi - beta|Omega|) m; keep only the constant part
    const Eigen::Map<const Eigen::VectorXd> phi_vec(phi.values.data(), static_cast<Eigen::Index>(phi.values.size()));
    b += duals.zeta * s.m.dot(phi_vec) * s.m;
    x = s.solver.solve(b);
    x -= (duals.zeta * s.m.dot(x) / (1.0 + duals.zeta * s.m_dot_solve)) * s.m_solve;
  } else {
    x = s.solver.solve(b);
  }
  if (s.solver.info() != Eigen::Success || !x.allFinite())
    throw SolverError("PhaseStepper: phase-field solve failed");
  P1Field out(s.mesh, 0.0);
  for (std::size_t i = 0; i < rhs.size(); ++i) out.values[i] = x[static_cast<Eigen::Index>(i)];
  return out;
}

P1Field phase_step(const P1Field& phi, const CrField& u, const DualState& duals, const PhaseParams& params,
                   const PhysParams& phys) {
  const P1Operators ops = assemble_p1_operators(*phi.mesh);
  return PhaseStepper(ops, u, params, phys).step(phi, duals);
}

P1Field project_box(const P1Field& phi) {
  P1Field out = phi;
  for (double& v : out.values) v = std::min(std::max(0.0, v), 1.0);
  return out;
}

DualState update_duals(const DualState& duals, double gap, const PhaseParams& params) {
  return {duals.ell + duals.zeta * gap, params.kappa * duals.zeta};
}

} // namespace crtopo
