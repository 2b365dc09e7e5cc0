#include <fstream>
#include <iomanip>

#include "crtopo/error.hpp"
#include "crtopo/io.hpp"

namespace crtopo {

void export_vtk(const P1Field& phi, const StokesSolution& state, const std::filesystem::path& path) {
  if (phi.mesh != state.u.mesh || phi.mesh != state.p.mesh)
    throw ValidationError("export_vtk: fields live on different meshes");
  const Mesh& mesh = *phi.mesh;
  std::ofstream out(path);
  if (!out) throw SolverError("export_vtk: cannot open " + path.string() + " for writing");
  out << std::setprecision(17);

  out << "# vtk DataFile Version 3.0\n"
      << "crtopo level " << mesh.level << "\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec2& p : mesh.vertices) out << p.x << ' ' << p.y << " 0\n";
  out << "CELLS " << mesh.num_cells() << ' ' << 4 * mesh.num_cells() << '\n';
  for (const Cell& t : mesh.cells) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (int c = 0; c < mesh.num_cells(); ++c) out << "5\n";

  const EnrichedField enriched = enrich_cr(state.u);
  out << "POINT_DATA " << mesh.num_vertices() << '\n';
  out << "SCALARS phi double 1\nLOOKUP_TABLE default\n";
  for (double v : phi.values) out << v << '\n';
  out << "VECTORS velocity_enriched double\n";
  for (const Vec2& v : enriched.vertex_values) out << v.x << ' ' << v.y << " 0\n";

  out << "CELL_DATA " << mesh.num_cells() << '\n';
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (double v : state.p.values) out << v << '\n';
  out << "VECTORS velocity_cellavg double\n";
  for (int c = 0; c < mesh.num_cells(); ++c) {
    // the centroid value equals the cell average of a linear field
    const Vec2 v = state.u.evaluate(c, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    out << v.x << ' ' << v.y << " 0\n";
  }
  if (!out) throw SolverError("export_vtk: write failed for " + path.string());
}

} // namespace crtopo
