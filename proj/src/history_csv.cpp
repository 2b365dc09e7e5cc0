#include <fstream>
#include <iomanip>

#include "crtopo/error.hpp"
#include "crtopo/io.hpp"

namespace crtopo {

void write_history_csv(const ConvergenceHistory& history, const std::filesystem::path& path) {
  if (history.empty()) throw ValidationError("write_history_csv: empty history");
  std::ofstream out(path);
  if (!out) throw SolverError("write_history_csv: cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  out << kHistoryHeader << '\n';
  for (const HistoryRecord& r : history) {
    const LagrangianBreakdown& l = r.lagrangian;
    out << r.level << ',' << r.outer << ',' << l.total << ',' << l.brinkman << ',' << l.dissipated << ','
        << l.ginzburg_landau << ',' << l.volume_gap << ',' << r.ell << ',' << r.zeta << ',' << r.seconds << '\n';
  }
  if (!out) throw SolverError("write_history_csv: write failed for " + path.string());
}

} // namespace crtopo
