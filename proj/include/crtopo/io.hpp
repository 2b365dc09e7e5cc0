#ifndef CRTOPO_IO_HPP
#define CRTOPO_IO_HPP

#include <filesystem>

#include "crtopo/optimizer.hpp"
#include "crtopo/spaces.hpp"
#include "crtopo/stokes.hpp"

namespace crtopo {

/// Legacy ASCII VTK unstructured grid (17 significant digits) with
///   POINT_DATA: scalar "phi", vector "velocity_enriched"
///   CELL_DATA:  scalar "pressure", vector "velocity_cellavg"
/// Throws SolverError when the file cannot be written.
void export_vtk(const P1Field& phi, const StokesSolution& state, const std::filesystem::path& path);

inline constexpr const char* kHistoryHeader =
    "level,outer,total,brinkman,dissipated,ginzburg_landau,volume_gap,ell,zeta,seconds";

/// One row per record. Throws ValidationError on an empty history and
/// SolverError when the file cannot be written.
void write_history_csv(const ConvergenceHistory& history, const std::filesystem::path& path);

} // namespace crtopo

#endif
