#include <doctest.h>

#include <cmath>
#include <fstream>

#include "crtopo/error.hpp"
#include "crtopo/mesh.hpp"
#include "test_support.hpp"

using namespace crtopo;

TEST_SUITE("mesh") {

TEST_CASE("two-triangle square topology") {
  const Mesh m = testing::two_triangles();
  CHECK(m.num_vertices() == 4);
  CHECK(m.num_edges() == 5);
  CHECK(m.num_cells() == 2);
  CHECK(m.num_vertices() - m.num_edges() + m.num_cells() == 1);
  int boundary = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.is_boundary_edge(e)) {
      ++boundary;
      CHECK(m.edge_tags[e].kind == BoundaryKind::wall);
    } else {
      CHECK(m.edge_tags[e].kind == BoundaryKind::interior);
    }
  }
  CHECK(boundary == 4);
  const DofReport r = dof_counts(m);
  CHECK(r.cr_velocity_dofs == 10);
  CHECK(r.p0_pressure_dofs == 2);
}

TEST_CASE("edges are sorted pairs in lexicographic order") {
  const Mesh m = testing::unit_square(6);
  for (int e = 0; e < m.num_edges(); ++e) {
    CHECK(m.edges[e][0] < m.edges[e][1]);
    if (e > 0) CHECK(m.edges[e - 1] < m.edges[e]);
  }
}

TEST_CASE("cell and edge incidence are mutually consistent") {
  const Mesh m = generate_case_mesh(CaseId::three_inflows, 10);
  for (int c = 0; c < m.num_cells(); ++c) {
    CHECK(m.cell_area(c) > 0.0);
    for (int i = 0; i < 3; ++i) {
      const int e = m.cell_edges[c][i];
      const auto [a, b] = m.edges[e];
      // edge i is opposite local vertex i
      CHECK(a != m.cells[c][i]);
      CHECK(b != m.cells[c][i]);
      CHECK((m.edge_cells[e][0] == c || m.edge_cells[e][1] == c));
    }
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      const int c = m.edge_cells[e][side];
      if (c < 0) continue;
      const auto& ce = m.cell_edges[c];
      CHECK((ce[0] == e || ce[1] == e || ce[2] == e));
    }
  }
}

TEST_CASE("build_topology rejects invalid input") {
  const std::vector<Vec2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK_THROWS_AS(build_topology(square, {Cell{0, 1, 1}, Cell{0, 2, 3}}), ValidationError);
  CHECK_THROWS_WITH_AS(build_topology(square, {Cell{0, 1, 1}, Cell{0, 2, 3}}), doctest::Contains("degenerate"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(build_topology(square, {Cell{0, 2, 1}, Cell{0, 2, 3}}), doctest::Contains("inverted"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(build_topology({{0, 0}, {1, 0}, {2, 0}}, {Cell{0, 1, 2}}), doctest::Contains("degenerate"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(build_topology({{0, 0}, {1, 0}, {1, 1}, {5, 5}}, {Cell{0, 1, 2}}),
                       doctest::Contains("dangling"), ValidationError);
  CHECK_THROWS_WITH_AS(build_topology(square, {Cell{0, 1, 2}, Cell{0, 1, 2}}), doctest::Contains("duplicate"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(build_topology(square, {Cell{0, 1, 7}}), doctest::Contains("out of range"), ValidationError);
  // three triangles on the edge (0,1)
  const std::vector<Vec2> fan = {{0, 0}, {1, 0}, {0.5, 1}, {0.5, 2}, {0.5, -1}};
  CHECK_THROWS_WITH_AS(build_topology(fan, {Cell{0, 1, 2}, Cell{0, 1, 3}, Cell{1, 0, 4}}),
                       doctest::Contains("non-manifold"), ValidationError);
}

TEST_CASE("red refinement of the two-triangle square") {
  const Mesh fine = refine_red(testing::two_triangles());
  CHECK(fine.num_cells() == 8);
  CHECK(fine.num_vertices() == 9);
  CHECK(fine.level == 1);
  for (int c = 0; c < fine.num_cells(); ++c) CHECK(fine.cell_area(c) == doctest::Approx(0.125));
}

TEST_CASE("refinement recurrences on every case mesh") {
  for (CaseId id : kAllCases) {
    CAPTURE(case_name(id));
    Mesh m = generate_case_mesh(id, case_geometry(id).default_resolution);
    const double angle0 = mesh_quality(m).min_angle;
    for (int k = 0; k < 3; ++k) {
      const Mesh fine = refine_red(m);
      CHECK(fine.num_cells() == 4 * m.num_cells());
      CHECK(fine.num_vertices() == m.num_vertices() + m.num_edges());
      CHECK(fine.num_edges() == 2 * m.num_edges() + 3 * m.num_cells());
      CHECK(fine.num_vertices() - fine.num_edges() + fine.num_cells() == 1);
      CHECK(mesh_quality(fine).min_angle == doctest::Approx(angle0).epsilon(1e-12));
      CHECK(mesh_quality(fine).h_max == doctest::Approx(mesh_quality(m).h_max / 2).epsilon(1e-12));
      if (k == 2) break;
      m = fine;
    }
  }
}

TEST_CASE("refinement keeps boundary tags on child edges") {
  const Mesh coarse = generate_case_mesh(CaseId::pipe_bend, 10);
  const Mesh fine = refine_red(coarse);
  double inlet_coarse = 0, inlet_fine = 0, outlet_coarse = 0, outlet_fine = 0;
  for (int e = 0; e < coarse.num_edges(); ++e) {
    if (coarse.edge_tags[e].kind == BoundaryKind::inlet) inlet_coarse += coarse.edge_length(e);
    if (coarse.edge_tags[e].kind == BoundaryKind::outlet) outlet_coarse += coarse.edge_length(e);
  }
  for (int e = 0; e < fine.num_edges(); ++e) {
    if (fine.edge_tags[e].kind == BoundaryKind::inlet) inlet_fine += fine.edge_length(e);
    if (fine.edge_tags[e].kind == BoundaryKind::outlet) outlet_fine += fine.edge_length(e);
    CHECK(fine.is_boundary_edge(e) == (fine.edge_tags[e].kind != BoundaryKind::interior));
  }
  CHECK(inlet_fine == doctest::Approx(inlet_coarse));
  CHECK(outlet_fine == doctest::Approx(outlet_coarse));
  CHECK(inlet_fine == doctest::Approx(0.2));
}

TEST_CASE("pipe_bend inlet edges are exactly x=0, 0.7<=y<=0.9") {
  const Mesh m = generate_case_mesh(CaseId::pipe_bend, 10);
  for (int e = 0; e < m.num_edges(); ++e) {
    const Vec2 mid = m.edge_midpoint(e);
    const bool on_inlet = m.is_boundary_edge(e) && std::abs(mid.x) < 1e-12 && mid.y > 0.7 && mid.y < 0.9;
    CHECK((m.edge_tags[e].kind == BoundaryKind::inlet) == on_inlet);
  }
}

TEST_CASE("rugby domain and outlet") {
  const Mesh m = generate_case_mesh(CaseId::rugby, 10);
  double right = 0.0;
  for (const Vec2& p : m.vertices) {
    CHECK(p.x >= -0.5);
    CHECK(p.x <= 1.5);
    CHECK(p.y >= -0.5);
    CHECK(p.y <= 0.5);
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.is_boundary_edge(e)) continue;
    const Vec2 mid = m.edge_midpoint(e);
    if (std::abs(mid.x - 1.5) < 1e-12) {
      CHECK(m.edge_tags[e].kind == BoundaryKind::outlet);
      right += m.edge_length(e);
    } else {
      CHECK(m.edge_tags[e].kind != BoundaryKind::outlet);
    }
  }
  CHECK(right == doctest::Approx(1.0));
  CHECK(m.domain_area() == doctest::Approx(2.0));
}

TEST_CASE("tagged boundary length equals the perimeter") {
  for (CaseId id : kAllCases) {
    const CaseGeometry& g = case_geometry(id);
    const Mesh m = generate_case_mesh(id, g.default_resolution);
    double len = 0.0;
    for (int e = 0; e < m.num_edges(); ++e)
      if (m.is_boundary_edge(e) && m.edge_tags[e].kind != BoundaryKind::interior) len += m.edge_length(e);
    const double perimeter = 2.0 * ((g.domain.hi.x - g.domain.lo.x) + (g.domain.hi.y - g.domain.lo.y));
    CHECK(len == doctest::Approx(perimeter).epsilon(1e-12));
    CHECK(m.domain_area() == doctest::Approx(g.domain.area()).epsilon(1e-12));
  }
}

TEST_CASE("unresolvable segments and tiny resolutions are rejected") {
  CHECK_THROWS_AS(generate_case_mesh(CaseId::pipe_bend, 8), ValidationError);
  CHECK_THROWS_AS(generate_case_mesh(CaseId::pipe_bend, 3), ValidationError);
  CHECK_NOTHROW(generate_case_mesh(CaseId::pipe_bend, 10));
}

TEST_CASE("dof counts from published seeds") {
  const DofReport r0 = dof_counts(945, 2736, 1792);
  CHECK(r0.cr_velocity_dofs == 5472);
  CHECK(r0.p0_pressure_dofs == 1792);
  CHECK(r0.th_velocity_dofs == 7362);
  CHECK(r0.th_pressure_dofs == 945);
  const auto table = refinement_dof_table(945, 1792, 2);
  CHECK(table[1].vertices == 3681);
  CHECK(table[1].edges == 10848);
  CHECK(table[1].cells == 7168);
  CHECK(table[1].cr_velocity_dofs == 21696);
  CHECK(table[1].th_velocity_dofs == 29058);
  CHECK(table[2].vertices == 14529);
  CHECK(table[2].edges == 43200);
  CHECK(table[2].cells == 28672);
  CHECK_THROWS_AS(refinement_dof_table(945, 1792, -1), ValidationError);
}

TEST_CASE("dof counts of a generated mesh agree with the recurrence") {
  Mesh m = generate_case_mesh(CaseId::bypass, 40);
  const auto table = refinement_dof_table(m.num_vertices(), m.num_cells(), 2);
  for (int k = 0; k <= 2; ++k) {
    const DofReport r = dof_counts(m);
    CHECK(r.vertices == table[k].vertices);
    CHECK(r.edges == table[k].edges);
    CHECK(r.cells == table[k].cells);
    m = refine_red(m);
  }
}

TEST_CASE("mesh quality of a right-triangle mesh") {
  const Mesh m = testing::unit_square(10);
  const MeshQuality q = mesh_quality(m);
  CHECK(q.min_angle == doctest::Approx(45.0));
  CHECK(q.h_max == doctest::Approx(std::sqrt(0.005)));
}

TEST_CASE("plain-text mesh dump") {
  const auto dir = testing::scratch_dir("mesh_dump");
  const Mesh m = testing::two_triangles();
  write_mesh_text(m, dir / "square");
  std::ifstream nodes(dir / "square.nodes"), cells(dir / "square.cells");
  double x, y;
  int count = 0;
  while (nodes >> x >> y) ++count;
  CHECK(count == 4);
  int a, b, c;
  cells >> a >> b >> c;
  CHECK(a == 0);
  CHECK(b == 1);
  CHECK(c == 2);
}

} // TEST_SUITE
