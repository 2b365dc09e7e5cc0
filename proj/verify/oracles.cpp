#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crtopo::oracle {

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = n == 0 ? 1.0 : (n == 1 ? x : p1);
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

const GaussRule& cached_rule(int n) {
  static const std::array<GaussRule, 33> rules = [] {
    std::array<GaussRule, 33> r;
    for (int k = 1; k < 33; ++k) r[k] = gauss_legendre(k);
    return r;
  }();
  if (n < 1 || n > 32) throw std::invalid_argument("oracle quadrature supports 1..32 points");
  return rules[n];
}

} // namespace

double integrate_segment(Vec2 a, Vec2 b, const std::function<double(Vec2)>& f, int n) {
  const GaussRule& g = cached_rule(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += g.weights[i] * f(a + g.nodes[i] * (b - a));
  return s * norm(b - a);
}

double integrate_triangle(const std::array<Vec2, 3>& t, const std::function<double(Vec2)>& f, int n) {
  const GaussRule& g = cached_rule(n);
  const double jac = std::abs(cross(t[1] - t[0], t[2] - t[0]));
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = g.nodes[i];
    for (int j = 0; j < n; ++j) {
      const double v = g.nodes[j] * (1.0 - u);
      const Vec2 p = t[0] + u * (t[1] - t[0]) + v * (t[2] - t[0]);
      s += g.weights[i] * g.weights[j] * (1.0 - u) * f(p);
    }
  }
  return s * jac;
}

namespace {

double area(const std::array<Vec2, 3>& t) { return 0.5 * std::abs(cross(t[1] - t[0], t[2] - t[0])); }

double cot_at(const std::array<Vec2, 3>& t, int k) {
  const Vec2 a = t[(k + 1) % 3] - t[k];
  const Vec2 b = t[(k + 2) % 3] - t[k];
  return dot(a, b) / std::abs(cross(a, b));
}

// Affine function a + b x + c y with the given values at three points.
std::function<double(Vec2)> affine_through(const std::array<Vec2, 3>& p, const std::array<double, 3>& values) {
  // Cramer's rule on [1 x y] rows.
  auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  std::array<std::array<double, 3>, 3> a{};
  for (int r = 0; r < 3; ++r) a[r] = {1.0, p[r].x, p[r].y};
  const double d = det3(a);
  std::array<double, 3> coef{};
  for (int col = 0; col < 3; ++col) {
    auto m = a;
    for (int r = 0; r < 3; ++r) m[r][col] = values[r];
    coef[col] = det3(m) / d;
  }
  return [coef](Vec2 x) { return coef[0] + coef[1] * x.x + coef[2] * x.y; };
}

} // namespace

Matrix3 p1_stiffness_cotangent(const std::array<Vec2, 3>& t) {
  Matrix3 k{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int o = (i + 2) % 3; // vertex opposite edge (i, j)
    k[i][j] = k[j][i] = -0.5 * cot_at(t, o);
  }
  for (int i = 0; i < 3; ++i) k[i][i] = -(k[i][(i + 1) % 3] + k[i][(i + 2) % 3]);
  return k;
}

Matrix3 p1_mass_exact(const std::array<Vec2, 3>& t) {
  Matrix3 m{};
  const double a = area(t);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a / 12.0 * (i == j ? 2.0 : 1.0);
  return m;
}

Matrix3 cr_stiffness_exact(const std::array<Vec2, 3>& t) {
  Matrix3 k = p1_stiffness_cotangent(t);
  for (auto& row : k)
    for (double& v : row) v *= 4.0;
  return k;
}

Matrix3 cr_mass_exact(const std::array<Vec2, 3>& t) {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = area(t) / 3.0;
  return m;
}

std::function<double(Vec2)> cr_basis_function(const std::array<Vec2, 3>& t, int i) {
  std::array<Vec2, 3> mids{};
  std::array<double, 3> values{};
  for (int k = 0; k < 3; ++k) {
    mids[k] = midpoint(t[(k + 1) % 3], t[(k + 2) % 3]);
    values[k] = k == i ? 1.0 : 0.0;
  }
  return affine_through(mids, values);
}

std::function<double(Vec2)> p1_basis_function(const std::array<Vec2, 3>& t, int i) {
  std::array<double, 3> values{};
  values[i] = 1.0;
  return affine_through(t, values);
}

double convergence_slope(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("convergence_slope: need >= 2 points");
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace crtopo::oracle
