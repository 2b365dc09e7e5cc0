#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "crtopo/config.hpp"
#include "crtopo/error.hpp"
#include "crtopo/io.hpp"
#include "crtopo/optimizer.hpp"
#include "test_support.hpp"

using namespace crtopo;

namespace {

struct VtkFile {
  std::vector<double> points, phi, enriched, pressure, cellavg;
  int cells = 0;
  std::vector<int> connectivity;
};

// reads the subset of legacy VTK written by export_vtk
VtkFile read_vtk(const std::filesystem::path& path) {
  std::ifstream in(path);
  VtkFile f;
  std::string word;
  auto read = [&](std::vector<double>& into, long count) {
    into.resize(count);
    for (long i = 0; i < count; ++i) in >> into[i];
  };
  long npoints = 0, ncells = 0;
  while (in >> word) {
    if (word == "POINTS") {
      in >> npoints >> word;
      read(f.points, 3 * npoints);
    } else if (word == "CELLS") {
      long size = 0;
      in >> ncells >> size;
      f.cells = static_cast<int>(ncells);
      f.connectivity.resize(size);
      for (long i = 0; i < size; ++i) in >> f.connectivity[i];
    } else if (word == "SCALARS") {
      std::string name, type, lookup, table;
      int comps = 0;
      in >> name >> type >> comps >> lookup >> table;
      read(name == "phi" ? f.phi : f.pressure, name == "phi" ? npoints : ncells);
    } else if (word == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      read(name == "velocity_enriched" ? f.enriched : f.cellavg, 3 * (name == "velocity_enriched" ? npoints : ncells));
    }
  }
  return f;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("VTK export round-trips") {
  const MeshPtr mesh = testing::share(generate_case_mesh(CaseId::pipe_bend, 10));
  const P1Field phi = make_initial_phase(mesh, CaseId::pipe_bend, {InitialPhase::Kind::random, 0.0, 3});
  const StokesSolution s = solve_state(mesh, phi, PhysParams{}, case_geometry(CaseId::pipe_bend).boundary);
  const auto dir = testing::scratch_dir("vtk");
  export_vtk(phi, s, dir / "f.vtk");
  const VtkFile f = read_vtk(dir / "f.vtk");
  REQUIRE(f.phi.size() == static_cast<std::size_t>(mesh->num_vertices()));
  REQUIRE(f.cells == mesh->num_cells());
  REQUIRE(f.pressure.size() == static_cast<std::size_t>(mesh->num_cells()));
  for (int v = 0; v < mesh->num_vertices(); ++v) {
    CHECK(f.phi[v] == phi.values[v]);
    CHECK(f.points[3 * v] == mesh->vertices[v].x);
    CHECK(f.points[3 * v + 1] == mesh->vertices[v].y);
  }
  const EnrichedField en = enrich_cr(s.u);
  for (int v = 0; v < mesh->num_vertices(); ++v) CHECK(f.enriched[3 * v] == en.vertex_values[v].x);
  for (int c = 0; c < mesh->num_cells(); ++c) {
    CHECK(f.pressure[c] == s.p.values[c]);
    CHECK(f.connectivity[4 * c] == 3);
    CHECK(f.connectivity[4 * c + 1] == mesh->cells[c][0]);
    const Vec2 avg = s.u.evaluate(c, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(std::abs(f.cellavg[3 * c + 1] - avg.y) <= 1e-12 * (1 + std::abs(avg.y)));
  }

  export_vtk(P1Field(mesh, 0.3), s, dir / "beta.vtk");
  for (double v : read_vtk(dir / "beta.vtk").phi) CHECK(v == 0.3);

  export_vtk(phi, s, dir / "g.vtk");
  std::ifstream a(dir / "f.vtk"), b(dir / "g.vtk");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());

  CHECK_THROWS_AS(export_vtk(phi, s, dir / "no" / "such" / "dir" / "x.vtk"), SolverError);
  const MeshPtr other = testing::share(generate_case_mesh(CaseId::pipe_bend, 20));
  CHECK_THROWS_AS(export_vtk(P1Field(other, 0.5), s, dir / "x.vtk"), ValidationError);
}

TEST_CASE("history CSV") {
  RunConfig c = preset_config(CaseId::rugby);
  c.levels = 1;
  c.outer = 3;
  c.inner = 2;
  c.resolution = 10;
  const RunResult res = run(c);
  const auto dir = testing::scratch_dir("csv");
  write_history_csv(res.history, dir / "h.csv");
  std::ifstream in(dir / "h.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == kHistoryHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 10);
    const HistoryRecord& r = res.history[rows];
    CHECK(v[0] == r.level);
    CHECK(v[1] == r.outer);
    // total = brinkman + dissipated + GL + ell W + zeta W^2 / 2
    const double sum = v[3] + v[4] + v[5] + v[7] * v[6] + 0.5 * v[8] * v[6] * v[6];
    CHECK(std::abs(sum - v[2]) <= 1e-9 * std::abs(v[2]));
    CHECK(v[9] == 0.0);
    ++rows;
  }
  CHECK(rows == 6);
  CHECK_THROWS_AS(write_history_csv({}, dir / "empty.csv"), ValidationError);
  CHECK_THROWS_AS(write_history_csv(res.history, dir / "missing" / "h.csv"), SolverError);
}

} // TEST_SUITE
