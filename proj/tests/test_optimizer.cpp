#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "crtopo/config.hpp"
#include "crtopo/error.hpp"
#include "crtopo/optimizer.hpp"
#include "test_support.hpp"

using namespace crtopo;

namespace {

RunConfig small(CaseId id, int levels, int outer, int inner) {
  RunConfig c = preset_config(id);
  c.levels = levels;
  c.outer = outer;
  c.inner = inner;
  c.resolution = 10;
  return c;
}

bool same_history(const ConvergenceHistory& a, const ConvergenceHistory& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const HistoryRecord &x = a[i], &y = b[i];
    if (x.level != y.level || x.outer != y.outer || x.lagrangian.total != y.lagrangian.total ||
        x.lagrangian.volume_gap != y.lagrangian.volume_gap || x.ell != y.ell || x.zeta != y.zeta)
      return false;
  }
  return true;
}

} // namespace

TEST_SUITE("optimizer") {

TEST_CASE("one outer and one inner iteration") {
  const RunConfig c = small(CaseId::pipe_bend, 0, 1, 1);
  const MeshPtr mesh = testing::share(generate_case_mesh(c.case_id, c.resolution));
  const BoundaryData& bd = case_geometry(c.case_id).boundary;
  const P1Field phi0 = make_initial_phase(mesh, c.case_id, c.initial);
  const DualState d0{c.phase.ell0, c.phase.zeta0};
  ConvergenceHistory h;
  const LevelResult r = run_level(phi0, d0, mesh, c, bd, 0, h);
  REQUIRE(h.size() == 1);
  CHECK(h[0].level == 0);
  CHECK(h[0].outer == 1);
  CHECK(h[0].zeta == d0.zeta);

  const StokesSolution s = solve_state(mesh, phi0, c.phys, bd);
  const P1Field expected = project_box(phase_step(phi0, s.u, d0, c.phase, c.phys));
  CHECK(r.phi.values == expected.values);
  CHECK(r.duals == update_duals(d0, volume_gap(expected, c.phase.beta), c.phase));
  CHECK(h[0].lagrangian.total == augmented_lagrangian(phi0, s.u, d0, c.phase, c.phys).total);
}

TEST_CASE("level-0 run of the pipe bend preset") {
  RunConfig c = preset_config(CaseId::pipe_bend);
  c.levels = 0;
  const MeshPtr mesh = testing::share(generate_case_mesh(c.case_id, c.resolution));
  const P1Field phi0 = make_initial_phase(mesh, c.case_id, c.initial);
  ConvergenceHistory h;
  const LevelResult r =
      run_level(phi0, {c.phase.ell0, c.phase.zeta0}, mesh, c, case_geometry(c.case_id).boundary, 0, h);
  CHECK(h.size() == 50);
  CHECK(*std::min_element(r.phi.values.begin(), r.phi.values.end()) >= 0.0);
  CHECK(*std::max_element(r.phi.values.begin(), r.phi.values.end()) <= 1.0);
  CHECK(std::abs(volume_gap(r.phi, c.phase.beta)) < std::abs(volume_gap(phi0, c.phase.beta)));
  for (const HistoryRecord& rec : h) {
    const LagrangianBreakdown& l = rec.lagrangian;
    CHECK(std::abs(l.brinkman + l.dissipated + l.ginzburg_landau + l.multiplier_term + l.penalty_term - l.total) <=
          1e-12 * std::abs(l.total));
  }
  // volume gap settles over the last iterations
  CHECK(std::abs(h.back().lagrangian.volume_gap) <= std::abs(h[h.size() - 20].lagrangian.volume_gap));
}

TEST_CASE("K = 0 is a single level") {
  const RunConfig c = small(CaseId::left_inflow, 0, 4, 3);
  const RunResult full = run(c);
  const MeshPtr mesh = testing::share(generate_case_mesh(c.case_id, c.resolution));
  ConvergenceHistory h;
  const LevelResult r = run_level(make_initial_phase(mesh, c.case_id, c.initial), {c.phase.ell0, c.phase.zeta0},
                                  mesh, c, case_geometry(c.case_id).boundary, 0, h);
  CHECK(same_history(full.history, h));
  CHECK(full.phi.values == r.phi.values);
  CHECK(full.duals == r.duals);
}

TEST_CASE("history length, level observer and box constraint") {
  const RunConfig c = small(CaseId::three_inflows, 2, 3, 2);
  int calls = 0;
  const RunResult res = run(c, [&](int level, const P1Field& phi, const StokesSolution& state) {
    CHECK(level == calls);
    CHECK(phi.mesh->level == level);
    CHECK(state.u.mesh == phi.mesh);
    for (double v : phi.values) CHECK((v >= 0.0 && v <= 1.0));
    ++calls;
  });
  CHECK(calls == 3);
  CHECK(res.history.size() == 9);
  for (std::size_t i = 0; i < res.history.size(); ++i) {
    CHECK(res.history[i].level == static_cast<int>(i) / 3);
    CHECK(res.history[i].outer == static_cast<int>(i) % 3 + 1);
  }
  CHECK(res.mesh->level == 2);
  CHECK(res.phi.mesh == res.mesh);
}

TEST_CASE("penalty restart and carry-over") {
  RunConfig c = small(CaseId::pipe_bend, 1, 2, 1);
  const RunResult restart = run(c);
  CHECK(restart.history[2].zeta == c.phase.zeta0);
  c.penalty_restart = false;
  const RunResult carry = run(c);
  CHECK(carry.history[2].zeta == doctest::Approx(c.phase.zeta0 * 1.1 * 1.1));
  CHECK(carry.history[2].ell == restart.history[2].ell);
}

TEST_CASE("determinism") {
  RunConfig c = small(CaseId::rugby, 1, 3, 2);
  c.initial = {InitialPhase::Kind::random, 0.0, 42};
  CHECK(same_history(run(c).history, run(c).history));
  RunConfig other = c;
  other.initial.seed = 43;
  CHECK_FALSE(same_history(run(c).history, run(other).history));
}

TEST_CASE("prolongation keeps the Ginzburg-Landau energy") {
  const MeshPtr coarse = testing::share(generate_case_mesh(CaseId::bypass, 20));
  const MeshPtr fine = testing::share(refine_red(*coarse));
  const P1Field phi = make_initial_phase(coarse, CaseId::bypass, {InitialPhase::Kind::random, 0.0, 5});
  const double before = ginzburg_landau(phi, 5e-3), after = ginzburg_landau(prolong_p1(phi, fine), 5e-3);
  CHECK(std::abs(before - after) <= 1e-12 * before);
}

TEST_CASE("initial phase fields") {
  const MeshPtr mesh = testing::share(generate_case_mesh(CaseId::pipe_bend, 10));
  const P1Field c = make_initial_phase(mesh, CaseId::pipe_bend, {InitialPhase::Kind::constant, 0.3, 0});
  CHECK(std::all_of(c.values.begin(), c.values.end(), [](double v) { return v == 0.3; }));
  const P1Field r1 = make_initial_phase(mesh, CaseId::pipe_bend, {InitialPhase::Kind::random, 0.0, 7});
  const P1Field r2 = make_initial_phase(mesh, CaseId::pipe_bend, {InitialPhase::Kind::random, 0.0, 7});
  CHECK(r1.values == r2.values);
  for (double v : r1.values) CHECK((v >= 0.0 && v <= 1.0));
  for (CaseId id : kAllCases) {
    const MeshPtr m = testing::share(generate_case_mesh(id, case_geometry(id).default_resolution));
    const P1Field s = make_initial_phase(m, id, {InitialPhase::Kind::shape, 0.0, 0});
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    CHECK(*lo >= 0.0);
    CHECK(*hi <= 1.0);
    CHECK(*hi > *lo);
  }
}

TEST_CASE("objective report") {
  const MeshPtr mesh = testing::share(testing::unit_square(6));
  const PhaseParams p = preset_config(CaseId::pipe_bend).phase;
  StokesSolution zero;
  zero.u = CrField(mesh);
  zero.p = P0Field(mesh);
  const ObjectiveReport rep = objective_report(P1Field(mesh, p.beta), zero, {3.0, 100.0}, p, PhysParams{});
  CHECK(rep.dissipated_power == 0.0);
  CHECK(rep.lagrangian.brinkman == 0.0);
  CHECK(rep.objective == rep.lagrangian.ginzburg_landau);
  CHECK(rep.lagrangian.ginzburg_landau > 0.0);

  const RunResult res = run(small(CaseId::pipe_bend, 0, 2, 2));
  const PhaseParams& q = preset_config(CaseId::pipe_bend).phase;
  const ObjectiveReport r = objective_report(res.phi, res.state, res.duals, q, PhysParams{});
  CHECK(r.lagrangian.brinkman >= 0.0);
  CHECK(r.lagrangian.dissipated >= 0.0);
  CHECK(r.lagrangian.ginzburg_landau >= 0.0);
  CHECK(r.lagrangian.penalty_term >= 0.0);
  CHECK(r.lagrangian.total == augmented_lagrangian(res.phi, res.state.u, res.duals, q, PhysParams{}).total);
  CHECK(r.dissipated_power == r.lagrangian.dissipated);
}

TEST_CASE("run configuration validation") {
  RunConfig c = preset_config(CaseId::pipe_bend);
  CHECK_NOTHROW(c.validate());
  c.levels = -1;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = preset_config(CaseId::pipe_bend);
  c.outer = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = preset_config(CaseId::pipe_bend);
  c.inner = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = preset_config(CaseId::pipe_bend);
  c.initial.value = 1.5;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

} // TEST_SUITE
