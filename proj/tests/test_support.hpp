#ifndef CRTOPO_TEST_SUPPORT_HPP
#define CRTOPO_TEST_SUPPORT_HPP

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "crtopo/cases.hpp"
#include "crtopo/mesh.hpp"

namespace testing {

inline crtopo::MeshPtr share(crtopo::Mesh m) { return std::make_shared<const crtopo::Mesh>(std::move(m)); }

inline crtopo::Mesh unit_square(int n) { return crtopo::generate_rectangle_mesh({{0, 0}, {1, 1}}, n, n); }

/// Unit square cut along the diagonal (0,0)-(1,1).
inline crtopo::Mesh two_triangles() {
  return crtopo::build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {crtopo::Cell{0, 1, 2}, crtopo::Cell{0, 2, 3}});
}

/// Scratch directory, emptied on creation.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* base = std::getenv("CRTOPO_TEST_TMP");
  const std::filesystem::path dir =
      (base ? std::filesystem::path(base) : std::filesystem::temp_directory_path() / "crtopo_tests") / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace testing

#endif
