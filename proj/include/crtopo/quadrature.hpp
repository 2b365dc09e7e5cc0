#ifndef CRTOPO_QUADRATURE_HPP
#define CRTOPO_QUADRATURE_HPP

#include <array>
#include <cmath>

namespace crtopo::quadrature {

/// Point in barycentric coordinates with a weight normalised so that the
/// weights of a rule sum to one; multiply by |T| to integrate.
struct TrianglePoint {
  std::array<double, 3> lambda;
  double weight;
};

/// Symmetric 6-point rule, exact for polynomials of total degree 4.
inline constexpr double kA = 0.44594849091596488631832925388305;
inline constexpr double kB = 0.091576213509770743459571463402202;
inline constexpr double kWa = 0.22338158967801146569500700843312;
inline constexpr double kWb = 0.10995174365532186763832632490021;

inline constexpr std::array<TrianglePoint, 6> kOrder4 = {{
    {{kA, kA, 1.0 - 2.0 * kA}, kWa},
    {{kA, 1.0 - 2.0 * kA, kA}, kWa},
    {{1.0 - 2.0 * kA, kA, kA}, kWa},
    {{kB, kB, 1.0 - 2.0 * kB}, kWb},
    {{kB, 1.0 - 2.0 * kB, kB}, kWb},
    {{1.0 - 2.0 * kB, kB, kB}, kWb},
}};

inline constexpr int kOrder4Size = static_cast<int>(kOrder4.size());

/// Two-point Gauss-Legendre rule on [0,1], exact for cubics.
struct LinePoint {
  double t;
  double weight;
};

inline const std::array<LinePoint, 2>& gauss2() {
  static const std::array<LinePoint, 2> rule = {{
      {0.5 - 0.5 / std::sqrt(3.0), 0.5},
      {0.5 + 0.5 / std::sqrt(3.0), 0.5},
  }};
  return rule;
}

} // namespace crtopo::quadrature

#endif
