#ifndef CRTOPO_VERIFY_ORACLES_HPP
#define CRTOPO_VERIFY_ORACLES_HPP

// Independent reference computations for tests. Nothing here calls the
// library's quadrature rules or element kernels.

#include <array>
#include <functional>
#include <vector>

#include "crtopo/geometry.hpp"

namespace crtopo::oracle {

/// Gauss-Legendre nodes and weights on [0,1], from Newton iteration on P_n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Integral over the segment [a,b] (arc-length measure) with n Gauss points.
double integrate_segment(Vec2 a, Vec2 b, const std::function<double(Vec2)>& f, int n = 10);

/// Integral over a triangle via the collapsed (Duffy) map with n x n Gauss
/// points; exact for polynomials of degree <= 2n - 2.
double integrate_triangle(const std::array<Vec2, 3>& t, const std::function<double(Vec2)>& f, int n = 10);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Cotangent formula for the P1 stiffness matrix.
Matrix3 p1_stiffness_cotangent(const std::array<Vec2, 3>& t);
/// (|T|/12) [[2,1,1],[1,2,1],[1,1,2]]
Matrix3 p1_mass_exact(const std::array<Vec2, 3>& t);
/// CR stiffness from the cotangent formula: 4 x P1 stiffness.
Matrix3 cr_stiffness_exact(const std::array<Vec2, 3>& t);
/// (|T|/3) I
Matrix3 cr_mass_exact(const std::array<Vec2, 3>& t);

/// CR basis function for the edge opposite vertex i, built by solving for
/// the affine function equal to delta_ij at the edge midpoints.
std::function<double(Vec2)> cr_basis_function(const std::array<Vec2, 3>& t, int i);
std::function<double(Vec2)> p1_basis_function(const std::array<Vec2, 3>& t, int i);

/// Least-squares slope of log(err) against log(h).
double convergence_slope(const std::vector<double>& h, const std::vector<double>& err);

} // namespace crtopo::oracle

#endif
