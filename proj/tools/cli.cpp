#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "crtopo/config.hpp"
#include "crtopo/error.hpp"
#include "crtopo/io.hpp"
#include "crtopo/mesh.hpp"
#include "crtopo/optimizer.hpp"

namespace crtopo {

namespace {

CaseId require_case(const std::string& name) {
  const auto id = parse_case_name(name);
  if (!id) throw ValidationError("unknown case '" + name + "' (expected pipe_bend, left_inflow, three_inflows, rugby, bypass)");
  return *id;
}

InitialPhase::Kind require_init(const std::string& name) {
  if (name == "constant") return InitialPhase::Kind::constant;
  if (name == "random") return InitialPhase::Kind::random;
  if (name == "shape") return InitialPhase::Kind::shape;
  throw ValidationError("unknown init '" + name + "' (expected constant, random, shape)");
}

struct RunArgs {
  std::string case_name;
  std::string config_path;
  std::string out_dir;
  std::string init;
  std::uint64_t seed = 0;
  int levels = -1;
  int resolution = -1;
  int outer = -1;
  int inner = -1;
  bool timing = false;
};

int do_run(const RunArgs& a, CLI::App& cmd, std::ostream& out) {
  std::optional<CaseId> id;
  if (!a.case_name.empty()) id = require_case(a.case_name);
  RunConfig config;
  if (!a.config_path.empty()) {
    config = parse_config_file(a.config_path, id);
    if (id) config.case_id = *id;
  } else {
    if (!id) throw ValidationError("run needs --case or --config");
    config = preset_config(*id);
    if (const char* dir = std::getenv("CRTOPO_OUTPUT_DIR")) config.output_dir = dir;
  }
  if (cmd.count("--out")) config.output_dir = a.out_dir;
  if (cmd.count("--levels")) config.levels = a.levels;
  if (cmd.count("--resolution")) config.resolution = a.resolution;
  if (cmd.count("--outer")) config.outer = a.outer;
  if (cmd.count("--inner")) config.inner = a.inner;
  if (cmd.count("--seed")) {
    config.initial.seed = a.seed;
    if (!cmd.count("--init")) config.initial.kind = InitialPhase::Kind::random;
  }
  if (cmd.count("--init")) config.initial.kind = require_init(a.init);
  if (a.timing) config.timing = true;
  config.validate();

  const std::filesystem::path dir = config.output_dir;
  std::filesystem::create_directories(dir);
  out << "case " << case_name(config.case_id) << ", levels 0.." << config.levels << ", N=" << config.outer
      << " M=" << config.inner << ", output " << dir.string() << '\n';
  const RunResult result = run(config, [&](int level, const P1Field& phi, const StokesSolution& state) {
    const auto path = dir / ("level_" + std::to_string(level) + ".vtk");
    export_vtk(phi, state, path);
    out << "level " << level << ": " << phi.mesh->num_vertices() << " vertices, " << phi.mesh->num_cells()
        << " cells -> " << path.string() << '\n';
  });
  write_history_csv(result.history, dir / "history.csv");
  const ObjectiveReport rep = objective_report(result.phi, result.state, result.duals, config.phase, config.phys);
  out << std::setprecision(6) << "objective " << rep.objective << ", dissipated power " << rep.dissipated_power
      << ", volume gap " << rep.lagrangian.volume_gap << ", ell " << result.duals.ell << ", zeta "
      << result.duals.zeta << '\n';
  return 0;
}

int do_verify(bool full, const std::vector<int>& only, std::ostream& out) {
  acceptance::Options opt;
  opt.include_slow = full;
  opt.only = only;
  int failed = 0;
  const auto results = acceptance::run(opt, [&](const acceptance::Outcome& o) {
    out << acceptance::format_line(o) << std::endl;
    if (!o.passed) ++failed;
  });
  out << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 2;
}

int do_mesh_info(const std::string& name, int levels, int resolution, std::int64_t v0, std::int64_t t0,
                 const std::string& dump, std::ostream& out) {
  if (levels < 0) throw ValidationError("--levels must be non-negative");
  std::vector<DofReport> table;
  if (v0 > 0 || t0 > 0) {
    if (v0 <= 0 || t0 <= 0) throw ValidationError("--vertices and --cells must be given together");
    table = refinement_dof_table(v0, t0, levels);
    out << "seeded from V=" << v0 << ", T=" << t0 << '\n';
  } else {
    const CaseId id = require_case(name);
    Mesh mesh = generate_case_mesh(id, resolution > 0 ? resolution : case_geometry(id).default_resolution);
    for (int k = 0; k <= levels; ++k) {
      if (k > 0) mesh = refine_red(mesh);
      table.push_back(dof_counts(mesh));
      if (!dump.empty()) write_mesh_text(mesh, dump + "_level" + std::to_string(k));
    }
    const MeshQuality q = mesh_quality(mesh);
    out << case_name(id) << ": finest h_max " << q.h_max << ", min angle " << q.min_angle << " deg\n";
  }
  out << std::setw(5) << "level" << std::setw(10) << "vertices" << std::setw(10) << "cells" << std::setw(10)
      << "CR u" << std::setw(10) << "P0 p" << std::setw(10) << "P2 u" << std::setw(10) << "P1 p" << '\n';
  for (std::size_t k = 0; k < table.size(); ++k) {
    const DofReport& r = table[k];
    out << std::setw(5) << k << std::setw(10) << r.vertices << std::setw(10) << r.cells << std::setw(10)
        << r.cr_velocity_dofs << std::setw(10) << r.p0_pressure_dofs << std::setw(10) << r.th_velocity_dofs
        << std::setw(10) << r.th_pressure_dofs << '\n';
  }
  return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-field topology optimization of Stokes-Brinkman flow with Crouzeix-Raviart elements", "crtopo"};
  app.require_subcommand(1);

  RunArgs ra;
  CLI::App* run_cmd = app.add_subcommand("run", "optimize one benchmark case");
  run_cmd->add_option("--case", ra.case_name, "pipe_bend | left_inflow | three_inflows | rugby | bypass");
  run_cmd->add_option("--config", ra.config_path, "INI file; omitted keys take the case preset");
  run_cmd->add_option("--out", ra.out_dir, "output directory (default: output, or $CRTOPO_OUTPUT_DIR)");
  run_cmd->add_option("--seed", ra.seed, "seed for a random initial phase field (implies --init random)");
  run_cmd->add_option("--levels", ra.levels, "number of uniform refinements K");
  run_cmd->add_option("--resolution", ra.resolution, "cells per unit length of the level-0 mesh");
  run_cmd->add_option("--outer", ra.outer, "state solves per level (N)");
  run_cmd->add_option("--inner", ra.inner, "phase updates per state solve (M)");
  run_cmd->add_option("--init", ra.init, "initial phase field: constant | random | shape");
  run_cmd->add_flag("--timing", ra.timing, "record wall time per iteration in the history");

  bool full = false;
  std::vector<int> only;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant and oracle checks");
  verify_cmd->add_flag("--full", full, "include the slow convergence and benchmark checks");
  verify_cmd->add_option("--only", only, "run only these criterion ids")->delimiter(',');

  std::string mi_case;
  int mi_levels = 3, mi_resolution = -1;
  std::int64_t mi_v = 0, mi_t = 0;
  std::string mi_dump;
  CLI::App* info_cmd = app.add_subcommand("mesh-info", "print vertex, cell and DOF counts per refinement level");
  info_cmd->add_option("--case", mi_case, "benchmark case");
  info_cmd->add_option("--levels", mi_levels, "number of refinements");
  info_cmd->add_option("--resolution", mi_resolution, "cells per unit length of the level-0 mesh");
  info_cmd->add_option("--vertices", mi_v, "seed the count recurrence with V instead of meshing a case");
  info_cmd->add_option("--cells", mi_t, "seed the count recurrence with T");
  info_cmd->add_option("--dump", mi_dump, "write <prefix>_level<k>.nodes/.cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "crtopo: " << e.what() << '\n';
    return 1;
  }

  try {
    if (run_cmd->parsed()) return do_run(ra, *run_cmd, out);
    if (verify_cmd->parsed()) return do_verify(full, only, out);
    if (info_cmd->parsed()) {
      if (mi_case.empty() && mi_v == 0 && mi_t == 0) throw ValidationError("mesh-info needs --case or --vertices/--cells");
      return do_mesh_info(mi_case, mi_levels, mi_resolution, mi_v, mi_t, mi_dump, out);
    }
  } catch (const ValidationError& e) {
    err << "crtopo: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "crtopo: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

} // namespace crtopo
