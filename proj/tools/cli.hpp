#ifndef CRTOPO_CLI_HPP
#define CRTOPO_CLI_HPP

#include <iosfwd>

namespace crtopo {

/// Entry point of the `crtopo` tool. Subcommands: run, verify, mesh-info.
/// Returns 0 on success, 1 on invalid input, 2 on a runtime failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace crtopo

#endif
