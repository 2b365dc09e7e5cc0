#ifndef CRTOPO_LOCAL_KERNELS_HPP
#define CRTOPO_LOCAL_KERNELS_HPP

// Element kernels shared by the reference and the OpenMP assembly loops.

#include <array>
#include <span>

#include "crtopo/geometry.hpp"
#include "crtopo/quadrature.hpp"
#include "crtopo/spaces.hpp"

namespace crtopo::detail {

using Local3 = std::array<std::array<double, 3>, 3>;

inline Local3 p1_stiffness_local(const TriangleGeometry& g) {
  Local3 k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] = g.area * dot(g.grad_lambda[i], g.grad_lambda[j]);
  return k;
}

// grad psi_i = -2 grad lambda_i
inline Local3 cr_stiffness_local(const TriangleGeometry& g) {
  Local3 k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] = 4.0 * g.area * dot(g.grad_lambda[i], g.grad_lambda[j]);
  return k;
}

inline Local3 p1_mass_local(const TriangleGeometry& g) {
  Local3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = g.area / 12.0 * (i == j ? 2.0 : 1.0);
  return m;
}

inline Local3 cr_mass_local(const TriangleGeometry& g) {
  Local3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = g.area / 3.0;
  return m;
}

// weights: one value per order-4 quadrature point of this cell
inline Local3 weighted_cr_mass_local(const TriangleGeometry& g, std::span<const double> weights) {
  Local3 m{};
  for (int q = 0; q < quadrature::kOrder4Size; ++q) {
    const auto& p = quadrature::kOrder4[q];
    const double w = p.weight * g.area * weights[q];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] += w * cr_basis(i, p.lambda) * cr_basis(j, p.lambda);
  }
  return m;
}

inline Local3 weighted_p1_mass_local(const TriangleGeometry& g, std::span<const double> weights) {
  Local3 m{};
  for (int q = 0; q < quadrature::kOrder4Size; ++q) {
    const auto& p = quadrature::kOrder4[q];
    const double w = p.weight * g.area * weights[q];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] += w * p.lambda[i] * p.lambda[j];
  }
  return m;
}

// Integral of div(psi_j e_k) over the cell: [k][j].
inline std::array<std::array<double, 3>, 2> divergence_local(const TriangleGeometry& g) {
  std::array<std::array<double, 3>, 2> d{};
  for (int j = 0; j < 3; ++j) {
    d[0][j] = -2.0 * g.area * g.grad_lambda[j].x;
    d[1][j] = -2.0 * g.area * g.grad_lambda[j].y;
  }
  return d;
}

inline std::array<double, 3> p1_load_local(const TriangleGeometry& g, std::span<const double> values) {
  std::array<double, 3> b{};
  for (int q = 0; q < quadrature::kOrder4Size; ++q) {
    const auto& p = quadrature::kOrder4[q];
    const double w = p.weight * g.area * values[q];
    for (int i = 0; i < 3; ++i) b[i] += w * p.lambda[i];
  }
  return b;
}

template <class VectorFn>
std::array<Vec2, 3> cr_load_local(const TriangleGeometry& g, const VectorFn& f) {
  std::array<Vec2, 3> b{};
  for (int q = 0; q < quadrature::kOrder4Size; ++q) {
    const auto& p = quadrature::kOrder4[q];
    const Vec2 fq = f(g.point(p.lambda));
    for (int i = 0; i < 3; ++i) b[i] = b[i] + (p.weight * g.area * cr_basis(i, p.lambda)) * fq;
  }
  return b;
}

} // namespace crtopo::detail

#endif
