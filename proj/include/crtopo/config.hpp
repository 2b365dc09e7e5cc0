#ifndef CRTOPO_CONFIG_HPP
#define CRTOPO_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "crtopo/optimizer.hpp"

namespace crtopo {

/// Benchmark defaults for one case: its hyper-parameters, K = 3,
/// alpha0 = 10000, kappa = 1.1, ell0 = 0, mu = 1.
RunConfig preset_config(CaseId id);

/// Parses flat INI-style text:
///
///   [case]        name, resolution, init (constant|random|shape), init_value, seed
///   [iterations]  levels, outer, inner, penalty_restart
///   [phase]       epsilon, gamma, dt, s_tilde, beta, kappa, zeta0, ell0, implicit_penalty
///   [physics]     mu, alpha0
///   [output]      directory, timing
///
/// Omitted keys take the case preset. `fallback_case` is used when the text
/// has no [case] name. Throws ValidationError naming the offending key.
RunConfig parse_config(std::string_view text, std::optional<CaseId> fallback_case = std::nullopt);
RunConfig parse_config_file(const std::filesystem::path& path, std::optional<CaseId> fallback_case = std::nullopt);

/// Inverse of parse_config: every key, reals in shortest round-trip form.
std::string render_config(const RunConfig& config);

} // namespace crtopo

#endif
