#include <doctest.h>

#include <cmath>
#include <random>

#include "crtopo/error.hpp"
#include "crtopo/phasefield.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace crtopo;

namespace {

P1Field random_field(const MeshPtr& mesh, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  P1Field phi(mesh, 0.0);
  for (double& v : phi.values) v = d(rng);
  return phi;
}

double p1_integral_oracle(const P1Field& phi, const std::function<double(double)>& g) {
  const Mesh& m = *phi.mesh;
  double s = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const std::array<Vec2, 3> t = {m.vertices[m.cells[c][0]], m.vertices[m.cells[c][1]], m.vertices[m.cells[c][2]]};
    s += oracle::integrate_triangle(t, [&](Vec2 x) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) v += phi.values[m.cells[c][i]] * oracle::p1_basis_function(t, i)(x);
      return g(v);
    }, 5);
  }
  return s;
}

PhaseParams case_a() {
  PhaseParams p;
  p.dt = 5e-4;
  p.epsilon = 1e-2;
  p.gamma = 1e-2;
  p.zeta0 = 100;
  p.beta = 0.3;
  p.s_tilde = 0.25;
  return p;
}

} // namespace

TEST_SUITE("phasefield") {

TEST_CASE("double well") {
  CHECK(double_well(0.0) == 0.0);
  CHECK(double_well(1.0) == 0.0);
  CHECK(double_well_prime(0.0) == 0.0);
  CHECK(double_well_prime(1.0) == 0.0);
  CHECK(double_well(0.5) == 1.0 / 64.0);
  CHECK(double_well_prime(0.5) == 0.0);
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> d(-0.5, 1.5);
  for (int k = 0; k < 100; ++k) {
    const double x = d(rng), h = 1e-5;
    const double fd = (double_well(x + h) - double_well(x - h)) / (2 * h);
    CHECK(std::abs(fd - double_well_prime(x)) < 1e-8);
  }
}

TEST_CASE("volume gap") {
  const MeshPtr mesh = testing::share(testing::unit_square(6));
  CHECK(std::abs(volume_gap(P1Field(mesh, 0.3), 0.3)) < 1e-15);
  CHECK(volume_gap(P1Field(mesh, 1.0), 0.3) == doctest::Approx(0.7).epsilon(1e-14));
  const P1Field r = random_field(mesh, 3);
  CHECK(std::abs(volume_gap(r, 0.4) - (p1_integral_oracle(r, [](double v) { return v; }) - 0.4)) < 1e-12);
}

TEST_CASE("Ginzburg-Landau energy") {
  const MeshPtr mesh = testing::share(testing::unit_square(6));
  CHECK(ginzburg_landau(P1Field(mesh, 0.0), 1e-2) == 0.0);
  CHECK(ginzburg_landau(P1Field(mesh, 0.5), 1e-2) == doctest::Approx(1.5625).epsilon(1e-13));
  const P1Field x = p1_interpolate(mesh, [](Vec2 p) { return p.x; });
  // 1/2 + int_0^1 x^2 (1-x)^2 / 4
  CHECK(std::abs(ginzburg_landau(x, 1.0) - (0.5 + 1.0 / 120.0)) < 1e-10);
  const P1Field r = random_field(mesh, 4);
  const double h1 = field_norm(r, NormKind::broken_h1);
  CHECK(std::abs(ginzburg_landau(r, 0.1) - (0.05 * h1 * h1 + 10.0 * p1_integral_oracle(r, double_well))) < 1e-10);
}

TEST_CASE("augmented Lagrangian bookkeeping") {
  const MeshPtr mesh = testing::share(testing::unit_square(6));
  const PhaseParams p = case_a();
  const PhysParams phys;
  const LagrangianBreakdown at_beta = augmented_lagrangian(P1Field(mesh, 0.3), CrField(mesh), {0.0, 100.0}, p, phys);
  CHECK(at_beta.brinkman == 0.0);
  CHECK(at_beta.dissipated == 0.0);
  CHECK(at_beta.total == doctest::Approx(p.gamma * ginzburg_landau(P1Field(mesh, 0.3), p.epsilon)));
  CHECK(std::abs(at_beta.volume_gap) < 1e-15);

  const P1Field r = random_field(mesh, 8);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  CrField u(mesh);
  for (double& v : u.values) v = n01(rng);
  const LagrangianBreakdown a = augmented_lagrangian(r, u, {-3.0, 50.0}, p, phys);
  CHECK(std::abs(a.brinkman + a.dissipated + a.ginzburg_landau + a.multiplier_term + a.penalty_term - a.total) <=
        1e-14 * std::abs(a.total));
  CHECK(a.objective() == a.brinkman + a.dissipated + a.ginzburg_landau);

  const double w = volume_gap(r, p.beta);
  PhaseParams balanced = p;
  balanced.beta = p.beta + w; // W = 0 for r
  const double t1 = augmented_lagrangian(r, u, {0.0, 1.0}, balanced, phys).total;
  const double t2 = augmented_lagrangian(r, u, {123.0, 1e6}, balanced, phys).total;
  CHECK(t1 == doctest::Approx(t2).epsilon(1e-12));
}

TEST_CASE("descent direction is the negative gradient of the Lagrangian") {
  const MeshPtr mesh = testing::share(generate_case_mesh(CaseId::pipe_bend, 10));
  const PhaseParams p = case_a();
  const PhysParams phys;
  const P1Field phi = random_field(mesh, 10, 0.05, 0.95);
  const CrField u = solve_state(mesh, phi, phys, case_geometry(CaseId::pipe_bend).boundary).u;
  const P1Operators ops = assemble_p1_operators(*mesh);
  const DualState duals{2.5, 140.0};
  const PhaseStepper stepper(ops, u, p, phys);
  const std::vector<double> g = stepper.descent_direction(phi, duals);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> d(phi.values.size());
    for (double& x : d) x = n01(rng);
    const double h = 1e-6;
    P1Field plus = phi, minus = phi;
    for (std::size_t i = 0; i < d.size(); ++i) {
      plus.values[i] += h * d[i];
      minus.values[i] -= h * d[i];
    }
    const double fd = (augmented_lagrangian(plus, u, duals, p, phys).total -
                       augmented_lagrangian(minus, u, duals, p, phys).total) / (2 * h);
    double dir = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) dir -= g[i] * d[i];
    CHECK(std::abs(fd - dir) <= 1e-6 * std::abs(dir));
  }
}

TEST_CASE("fixed points and the volume push") {
  const MeshPtr mesh = testing::share(testing::unit_square(8));
  PhaseParams p = case_a();
  p.gamma = 1e-300;
  p.s_tilde = 0.0;
  const PhysParams phys;
  for (bool implicit : {false, true}) {
    p.implicit_penalty = implicit;
    const P1Field r = random_field(mesh, 12);
    const P1Field same = phase_step(r, CrField(mesh), {0.0, 0.0}, p, phys);
    for (std::size_t i = 0; i < r.values.size(); ++i) CHECK(std::abs(same.values[i] - r.values[i]) < 1e-12);

    PhaseParams q = case_a();
    q.implicit_penalty = implicit;
    for (double c : {0.0, 0.5, 1.0}) {
      const P1Field out = phase_step(P1Field(mesh, c), CrField(mesh), {0.0, 0.0}, q, phys);
      for (double v : out.values) CHECK(std::abs(v - c) < 1e-12);
    }
    const P1Field pushed = phase_step(P1Field(mesh, 0.0), CrField(mesh), {0.0, 100.0}, q, phys);
    for (double v : pushed.values) CHECK(v > 0.0);
  }
}

TEST_CASE("explicit and implicit penalty against the closed form") {
  // u = 0, gamma negligible, S = 0: phi+ = phi + c with
  // c (1/dt + zeta_imp |Omega|) = -ell - zeta W(phi)
  const MeshPtr mesh = testing::share(generate_rectangle_mesh({{0, 0}, {2, 1}}, 12, 6));
  PhaseParams p = case_a();
  p.gamma = 1e-300;
  p.s_tilde = 0.0;
  const P1Field r = random_field(mesh, 13);
  const DualState duals{0.7, 5000.0};
  const double w = volume_gap(r, p.beta);
  for (bool implicit : {false, true}) {
    p.implicit_penalty = implicit;
    const double c = (-duals.ell - duals.zeta * w) / (1.0 / p.dt + (implicit ? duals.zeta * 2.0 : 0.0));
    const P1Field out = phase_step(r, CrField(mesh), duals, p, PhysParams{});
    for (std::size_t i = 0; i < r.values.size(); ++i) CHECK(out.values[i] == doctest::Approx(r.values[i] + c).epsilon(1e-11));
  }
}

TEST_CASE("stepper rejects foreign fields") {
  const MeshPtr a = testing::share(testing::unit_square(4));
  const MeshPtr b = testing::share(testing::unit_square(5));
  const P1Operators ops = assemble_p1_operators(*a);
  CHECK_THROWS_AS(PhaseStepper(ops, CrField(b), case_a(), PhysParams{}), ValidationError);
  const PhaseStepper s(ops, CrField(a), case_a(), PhysParams{});
  CHECK_THROWS_AS(s.step(P1Field(b, 0.5), {}), ValidationError);
  PhaseParams bad = case_a();
  bad.beta = 1.0;
  CHECK_THROWS_WITH_AS(PhaseStepper(ops, CrField(a), bad, PhysParams{}), doctest::Contains("beta"), ValidationError);
}

TEST_CASE("box projection") {
  const MeshPtr mesh = testing::share(testing::two_triangles());
  P1Field phi(mesh, 0.0);
  phi.values = {1.2, -0.1, 0.5, 1.0};
  const P1Field once = project_box(phi);
  CHECK(once.values == std::vector<double>{1.0, 0.0, 0.5, 1.0});
  CHECK(project_box(once).values == once.values);
  const P1Field r = random_field(testing::share(testing::unit_square(5)), 3);
  CHECK(project_box(r).values == r.values);
  const P1Field wild = random_field(r.mesh, 4, -3.0, 3.0);
  for (double v : project_box(wild).values) CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("dual update") {
  const PhaseParams p = case_a();
  const DualState a = update_duals({0.0, 100.0}, 0.01, p);
  CHECK(a.ell == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(update_duals({4.0, 100.0}, 0.0, p).ell == 4.0);
  CHECK(a.zeta == doctest::Approx(110.0).epsilon(1e-15));
}

TEST_CASE("parameter validation names the key") {
  const auto fails = [](auto mutate, const char* key) {
    PhaseParams p = case_a();
    mutate(p);
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains(key), ValidationError);
  };
  fails([](PhaseParams& p) { p.epsilon = 0; }, "epsilon");
  fails([](PhaseParams& p) { p.gamma = -1; }, "gamma");
  fails([](PhaseParams& p) { p.dt = 0; }, "dt");
  fails([](PhaseParams& p) { p.s_tilde = -0.1; }, "s_tilde");
  fails([](PhaseParams& p) { p.beta = 0; }, "beta");
  fails([](PhaseParams& p) { p.kappa = 0.9; }, "kappa");
  fails([](PhaseParams& p) { p.zeta0 = 0; }, "zeta0");
  fails([](PhaseParams& p) { p.ell0 = NAN; }, "ell0");
  CHECK_NOTHROW(case_a().validate());
}

} // TEST_SUITE
