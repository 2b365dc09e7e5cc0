#include "crtopo/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "crtopo/error.hpp"

namespace crtopo {

namespace {

struct PresetRow {
  double dt, epsilon, gamma, zeta0, beta, s_tilde;
};

PresetRow preset_row(CaseId id) {
  switch (id) {
  case CaseId::pipe_bend: return {5e-4, 1e-2, 1e-2, 100.0, 0.3, 0.25};
  case CaseId::left_inflow: return {1e-4, 1e-2, 1e-2, 100.0, 0.5, 0.25};
  case CaseId::three_inflows: return {5e-5, 1e-2, 1e-2, 100.0, 0.36, 0.25};
  case CaseId::rugby: return {1e-3, 1e-3, 1e-3, 100.0, 0.925, 0.25};
  case CaseId::bypass: return {5e-4, 5e-3, 1e-1, 50.0, 0.1667, 1.0};
  }
  throw ValidationError("unknown case");
}

std::string_view init_kind_name(InitialPhase::Kind k) {
  switch (k) {
  case InitialPhase::Kind::constant: return "constant";
  case InitialPhase::Kind::random: return "random";
  case InitialPhase::Kind::shape: return "shape";
  }
  return "constant";
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"case", {"name", "resolution", "init", "init_value", "seed"}},
      {"iterations", {"levels", "outer", "inner", "penalty_restart"}},
      {"phase", {"epsilon", "gamma", "dt", "s_tilde", "beta", "kappa", "zeta0", "ell0", "implicit_penalty"}},
      {"physics", {"mu", "alpha0"}},
      {"output", {"directory", "timing"}},
  };
  return keys;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    if constexpr (std::is_floating_point_v<T>)
      throw ValidationError(key + ": expected a real number, got '" + text + "'");
    else
      throw ValidationError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError(key + ": expected true or false, got '" + text + "'");
}

template <class T>
std::string format_number(T value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

} // namespace

RunConfig preset_config(CaseId id) {
  const PresetRow row = preset_row(id);
  RunConfig c;
  c.case_id = id;
  c.levels = 3;
  c.outer = 50;
  c.inner = 10;
  c.phase.dt = row.dt;
  c.phase.epsilon = row.epsilon;
  c.phase.gamma = row.gamma;
  c.phase.zeta0 = row.zeta0;
  c.phase.beta = row.beta;
  c.phase.s_tilde = row.s_tilde;
  c.phase.kappa = 1.1;
  c.phase.ell0 = 0.0;
  c.phys.mu = 1.0;
  c.phys.alpha0 = 10000.0;
  c.initial = {InitialPhase::Kind::constant, 1.0, 0};
  c.resolution = case_geometry(id).default_resolution;
  return c;
}

RunConfig parse_config(std::string_view text, std::optional<CaseId> fallback_case) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  std::map<std::string, std::string> values; // "section.key" -> text
  for (const auto& [section, body] : tree) {
    if (!body.data().empty())
      throw ValidationError("unknown key '" + section + "' outside of any section");
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw ValidationError("unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      if (!it->second.contains(key)) throw ValidationError("unknown key '" + section + "." + key + "'");
      values[section + "." + key] = node.get_value<std::string>();
    }
  }

  std::optional<CaseId> id = fallback_case;
  if (auto it = values.find("case.name"); it != values.end()) {
    id = parse_case_name(it->second);
    if (!id) throw ValidationError("case.name: unknown case '" + it->second + "'");
  }
  if (!id) throw ValidationError("case.name: no case given");

  RunConfig c = preset_config(*id);
  auto real = [&](const char* key, double& target) {
    if (auto it = values.find(key); it != values.end()) target = parse_number<double>(key, it->second);
  };
  auto integer = [&](const char* key, int& target) {
    if (auto it = values.find(key); it != values.end()) target = parse_number<int>(key, it->second);
  };

  integer("case.resolution", c.resolution);
  if (auto it = values.find("case.init"); it != values.end()) {
    if (it->second == "constant") c.initial.kind = InitialPhase::Kind::constant;
    else if (it->second == "random") c.initial.kind = InitialPhase::Kind::random;
    else if (it->second == "shape") c.initial.kind = InitialPhase::Kind::shape;
    else throw ValidationError("case.init: expected constant, random or shape, got '" + it->second + "'");
  }
  real("case.init_value", c.initial.value);
  if (auto it = values.find("case.seed"); it != values.end())
    c.initial.seed = parse_number<std::uint64_t>("case.seed", it->second);
  integer("iterations.levels", c.levels);
  integer("iterations.outer", c.outer);
  integer("iterations.inner", c.inner);
  if (auto it = values.find("iterations.penalty_restart"); it != values.end())
    c.penalty_restart = parse_bool("iterations.penalty_restart", it->second);
  real("phase.epsilon", c.phase.epsilon);
  real("phase.gamma", c.phase.gamma);
  real("phase.dt", c.phase.dt);
  real("phase.s_tilde", c.phase.s_tilde);
  real("phase.beta", c.phase.beta);
  real("phase.kappa", c.phase.kappa);
  real("phase.zeta0", c.phase.zeta0);
  real("phase.ell0", c.phase.ell0);
  if (auto it = values.find("phase.implicit_penalty"); it != values.end())
    c.phase.implicit_penalty = parse_bool("phase.implicit_penalty", it->second);
  real("physics.mu", c.phys.mu);
  real("physics.alpha0", c.phys.alpha0);
  if (auto it = values.find("output.directory"); it != values.end()) c.output_dir = it->second;
  if (auto it = values.find("output.timing"); it != values.end())
    c.timing = parse_bool("output.timing", it->second);

  c.validate();
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path, std::optional<CaseId> fallback_case) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), fallback_case);
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[case]\n"
      << "name = " << case_name(c.case_id) << '\n'
      << "resolution = " << c.resolution << '\n'
      << "init = " << init_kind_name(c.initial.kind) << '\n'
      << "init_value = " << format_number(c.initial.value) << '\n'
      << "seed = " << c.initial.seed << '\n'
      << "\n[iterations]\n"
      << "levels = " << c.levels << '\n'
      << "outer = " << c.outer << '\n'
      << "inner = " << c.inner << '\n'
      << "penalty_restart = " << (c.penalty_restart ? "true" : "false") << '\n'
      << "\n[phase]\n"
      << "epsilon = " << format_number(c.phase.epsilon) << '\n'
      << "gamma = " << format_number(c.phase.gamma) << '\n'
      << "dt = " << format_number(c.phase.dt) << '\n'
      << "s_tilde = " << format_number(c.phase.s_tilde) << '\n'
      << "beta = " << format_number(c.phase.beta) << '\n'
      << "kappa = " << format_number(c.phase.kappa) << '\n'
      << "zeta0 = " << format_number(c.phase.zeta0) << '\n'
      << "ell0 = " << format_number(c.phase.ell0) << '\n'
      << "implicit_penalty = " << (c.phase.implicit_penalty ? "true" : "false") << '\n'
      << "\n[physics]\n"
      << "mu = " << format_number(c.phys.mu) << '\n'
      << "alpha0 = " << format_number(c.phys.alpha0) << '\n'
      << "\n[output]\n"
      << "directory = " << c.output_dir << '\n'
      << "timing = " << (c.timing ? "true" : "false") << '\n';
  return out.str();
}

} // namespace crtopo
