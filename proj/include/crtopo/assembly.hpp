#ifndef CRTOPO_ASSEMBLY_HPP
#define CRTOPO_ASSEMBLY_HPP

#include <functional>
#include <span>
#include <vector>

#include "crtopo/cases.hpp"
#include "crtopo/mesh.hpp"
#include "crtopo/quadrature.hpp"
#include "crtopo/sparse.hpp"
#include "crtopo/spaces.hpp"

namespace crtopo {

using ScalarFunction = std::function<double(double)>;

/// alpha(phi) = alpha0 (1 - phi)^2
inline double brinkman_alpha(double alpha0, double phi) {
  const double s = 1.0 - phi;
  return alpha0 * s * s;
}

/// Values of some integrand at the order-4 quadrature points, cell-major:
/// entry [c * kOrder4Size + q].
using QuadratureValues = std::vector<double>;

/// CR stiffness (grad u, grad v) for both velocity components, 2E x 2E.
CsrMatrix assemble_cr_stiffness(const Mesh& mesh, Exec exec = Exec::parallel);

/// (alpha(phi) u, v) for both velocity components, 2E x 2E.
CsrMatrix assemble_weighted_cr_mass(const Mesh& mesh, const P1Field& phi, const ScalarFunction& alpha,
                                    Exec exec = Exec::parallel);

/// Unweighted CR mass (u, v), 2E x 2E.
CsrMatrix assemble_cr_mass(const Mesh& mesh, Exec exec = Exec::parallel);

/// Row T, column j: integral over T of div psi_j. Dimensions T x 2E.
CsrMatrix assemble_divergence(const Mesh& mesh, Exec exec = Exec::parallel);

struct P1Operators {
  CsrMatrix stiffness;
  CsrMatrix mass;
};

P1Operators assemble_p1_operators(const Mesh& mesh, Exec exec = Exec::parallel);

/// (w phi, psi) with w given at the quadrature points.
CsrMatrix assemble_weighted_p1_mass(const Mesh& mesh, std::span<const double> weights,
                                    Exec exec = Exec::parallel);

/// (f, v) for every CR basis function, length 2E.
std::vector<double> assemble_velocity_load(const Mesh& mesh, const VectorFunction& f,
                                           Exec exec = Exec::parallel);

/// (g, psi) for every P1 basis function, with g given at the quadrature points.
std::vector<double> assemble_p1_load(const Mesh& mesh, std::span<const double> integrand,
                                     Exec exec = Exec::parallel);

namespace reference {
// Plain serial loops. Kept as the reference for the OpenMP kernels.
CsrMatrix assemble_cr_stiffness(const Mesh& mesh);
CsrMatrix assemble_weighted_cr_mass(const Mesh& mesh, const P1Field& phi, const ScalarFunction& alpha);
CsrMatrix assemble_cr_mass(const Mesh& mesh);
CsrMatrix assemble_divergence(const Mesh& mesh);
P1Operators assemble_p1_operators(const Mesh& mesh);
CsrMatrix assemble_weighted_p1_mass(const Mesh& mesh, std::span<const double> weights);
std::vector<double> assemble_velocity_load(const Mesh& mesh, const VectorFunction& f);
std::vector<double> assemble_p1_load(const Mesh& mesh, std::span<const double> integrand);
} // namespace reference

} // namespace crtopo

#endif
