#ifndef CRTOPO_ERROR_HPP
#define CRTOPO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace crtopo {

/// Bad input: malformed mesh, out-of-range parameter, unknown config key.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Failure while computing: singular factorization, residual too large, I/O.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace crtopo

#endif
