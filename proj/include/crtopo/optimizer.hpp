#ifndef CRTOPO_OPTIMIZER_HPP
#define CRTOPO_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crtopo/cases.hpp"
#include "crtopo/phasefield.hpp"
#include "crtopo/stokes.hpp"

namespace crtopo {

/// How the level-0 phase field is initialised.
struct InitialPhase {
  enum class Kind { constant, random, shape };
  Kind kind = Kind::constant;
  double value = 1.0;      ///< constant fill value
  std::uint64_t seed = 0;  ///< random fill seed

  friend bool operator==(const InitialPhase&, const InitialPhase&) = default;
};

struct RunConfig {
  CaseId case_id = CaseId::pipe_bend;
  int levels = 3; ///< number of uniform refinements K; K+1 levels are run
  int outer = 50; ///< N: state solves per level
  int inner = 10; ///< M: phase updates per state solve
  /// Restart zeta at zeta0 on every level; ell always carries over.
  bool penalty_restart = true;
  PhaseParams phase;
  PhysParams phys;
  InitialPhase initial;
  int resolution = 30; ///< cells per unit length of the level-0 mesh
  std::string output_dir = "output";
  bool timing = false; ///< record wall time; off keeps histories byte-reproducible

  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct HistoryRecord {
  int level = 0;
  int outer = 0; ///< 1-based within the level
  LagrangianBreakdown lagrangian;
  double ell = 0.0;
  double zeta = 0.0;
  double seconds = 0.0;
};

/// One record per outer iteration, taken right after the state solve:
/// the Lagrangian of the current phase field, its state, and the duals in use.
using ConvergenceHistory = std::vector<HistoryRecord>;

P1Field make_initial_phase(const MeshPtr& mesh, CaseId id, const InitialPhase& init);

struct LevelResult {
  P1Field phi;
  DualState duals;
};

/// N outer iterations on one mesh. Records are appended to `history` as they
/// are produced, so a failure leaves the completed iterations in place.
LevelResult run_level(const P1Field& phi, const DualState& duals, const MeshPtr& mesh, const RunConfig& config,
                      const BoundaryData& boundary, int level, ConvergenceHistory& history);

struct ObjectiveReport {
  LagrangianBreakdown lagrangian;
  double objective = 0.0;        ///< brinkman + dissipated + gamma P
  double dissipated_power = 0.0; ///< the flow-resistance metric on its own
};

ObjectiveReport objective_report(const P1Field& phi, const StokesSolution& state, const DualState& duals,
                                 const PhaseParams& params, const PhysParams& phys);

struct RunResult {
  MeshPtr mesh; ///< finest mesh
  P1Field phi;
  StokesSolution state; ///< state solved with the final phase field
  DualState duals;
  ConvergenceHistory history;
};

/// Called after every level with that level's final phase field and state.
using LevelObserver = std::function<void(int level, const P1Field& phi, const StokesSolution& state)>;

RunResult run(const RunConfig& config, const LevelObserver& on_level_end = {});

} // namespace crtopo

#endif
