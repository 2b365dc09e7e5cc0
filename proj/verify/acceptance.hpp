#ifndef CRTOPO_VERIFY_ACCEPTANCE_HPP
#define CRTOPO_VERIFY_ACCEPTANCE_HPP

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace crtopo::acceptance {

struct Criterion {
  int id;
  std::string name;
  bool slow; ///< skipped by the quick suite
};

const std::vector<Criterion>& criteria();

struct Outcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  bool include_slow = true;
  std::vector<int> only; ///< empty: every criterion allowed by include_slow
  std::filesystem::path scratch_dir; ///< empty: a fresh directory under the system temp dir
};

/// One line per criterion: "PASS  3 manufactured_convergence (12.3 s) detail".
std::string format_line(const Outcome& o);

/// Runs the selected criteria in id order. `on_result` sees each outcome as
/// soon as it is known. An exception inside a criterion marks it failed.
std::vector<Outcome> run(const Options& options, const std::function<void(const Outcome&)>& on_result = {});

} // namespace crtopo::acceptance

#endif
