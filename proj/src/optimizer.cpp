#include "crtopo/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "crtopo/error.hpp"

namespace crtopo {

void RunConfig::validate() const {
  if (levels < 0) throw ValidationError("levels must be non-negative");
  if (outer < 1) throw ValidationError("outer must be at least 1");
  if (inner < 1) throw ValidationError("inner must be at least 1");
  if (resolution < 4) throw ValidationError("resolution must be at least 4");
  phase.validate();
  phys.validate();
  if (initial.kind == InitialPhase::Kind::constant && !(initial.value >= 0.0 && initial.value <= 1.0))
    throw ValidationError("init_value must lie in [0,1]");
}

namespace {

// Indicator stand-ins for the initial designs of the benchmarks.
double shape_indicator(CaseId id, Vec2 p) {
  auto inside_disk = [&](Vec2 c, double r) { return norm(p - c) < r; };
  switch (id) {
  case CaseId::pipe_bend:
  case CaseId::three_inflows: {
    // fluid everywhere except four disks placed symmetrically
    const double r = 0.12;
    for (Vec2 c : {Vec2{0.25, 0.25}, Vec2{0.75, 0.25}, Vec2{0.25, 0.75}, Vec2{0.75, 0.75}})
      if (inside_disk(c, r)) return 0.0;
    return 1.0;
  }
  case CaseId::left_inflow:
    return inside_disk({0.5, 0.5}, 0.25) ? 0.0 : 1.0;
  case CaseId::rugby:
    return inside_disk({0.5, 0.0}, 0.15) ? 0.0 : 1.0;
  case CaseId::bypass:
    return std::abs(p.y) < 0.1 && p.x > 0.25 && p.x < 1.25 ? 0.0 : 1.0;
  }
  return 1.0;
}

} // namespace

P1Field make_initial_phase(const MeshPtr& mesh, CaseId id, const InitialPhase& init) {
  P1Field phi(mesh, 0.0);
  switch (init.kind) {
  case InitialPhase::Kind::constant:
    std::fill(phi.values.begin(), phi.values.end(), init.value);
    break;
  case InitialPhase::Kind::random: {
    std::mt19937_64 rng(init.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (double& v : phi.values) v = uniform(rng);
    break;
  }
  case InitialPhase::Kind::shape:
    for (int v = 0; v < mesh->num_vertices(); ++v) phi.values[v] = shape_indicator(id, mesh->vertices[v]);
    break;
  }
  return phi;
}

ObjectiveReport objective_report(const P1Field& phi, const StokesSolution& state, const DualState& duals,
                                 const PhaseParams& params, const PhysParams& phys) {
  ObjectiveReport r;
  r.lagrangian = augmented_lagrangian(phi, state.u, duals, params, phys);
  r.objective = r.lagrangian.objective();
  r.dissipated_power = r.lagrangian.dissipated;
  return r;
}

LevelResult run_level(const P1Field& phi0, const DualState& duals0, const MeshPtr& mesh, const RunConfig& config,
                      const BoundaryData& boundary, int level, ConvergenceHistory& history) {
  if (phi0.mesh != mesh) throw ValidationError("run_level: phase field lives on a different mesh");
  for (double v : phi0.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("run_level: initial phase field outside [0,1]");
  }
  using Clock = std::chrono::steady_clock;
  const P1Operators ops = assemble_p1_operators(*mesh);
  LevelResult r{phi0, duals0};
  for (int n = 1; n <= config.outer; ++n) {
    const auto start = Clock::now();
    const StokesSolution state = solve_state(mesh, r.phi, config.phys, boundary);

    HistoryRecord rec;
    rec.level = level;
    rec.outer = n;
    rec.lagrangian = augmented_lagrangian(r.phi, state.u, r.duals, config.phase, config.phys);
    rec.ell = r.duals.ell;
    rec.zeta = r.duals.zeta;

    const PhaseStepper stepper(ops, state.u, config.phase, config.phys);
    for (int m = 1; m <= config.inner; ++m) r.phi = project_box(stepper.step(r.phi, r.duals));
    r.duals = update_duals(r.duals, volume_gap(r.phi, config.phase.beta), config.phase);

    if (config.timing) rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    history.push_back(rec);
  }
  return r;
}

RunResult run(const RunConfig& config, const LevelObserver& on_level_end) {
  config.validate();
  const CaseGeometry& geometry = case_geometry(config.case_id);
  MeshPtr mesh = std::make_shared<const Mesh>(generate_case_mesh(config.case_id, config.resolution));

  RunResult result;
  P1Field phi = make_initial_phase(mesh, config.case_id, config.initial);
  DualState duals{config.phase.ell0, config.phase.zeta0};
  for (int k = 0; k <= config.levels; ++k) {
    if (k > 0) {
      MeshPtr fine = std::make_shared<const Mesh>(refine_red(*mesh));
      phi = prolong_p1(phi, fine);
      mesh = std::move(fine);
      if (config.penalty_restart) duals.zeta = config.phase.zeta0;
    }
    LevelResult lr = run_level(phi, duals, mesh, config, geometry.boundary, k, result.history);
    phi = std::move(lr.phi);
    duals = lr.duals;
    StokesSolution state = solve_state(mesh, phi, config.phys, geometry.boundary);
    if (on_level_end) on_level_end(k, phi, state);
    if (k == config.levels) result.state = std::move(state);
  }
  result.mesh = mesh;
  result.phi = std::move(phi);
  result.duals = duals;
  return result;
}

} // namespace crtopo
