#pragma once

// Shared helpers for the unit tests and the acceptance binary.

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "steklov/assembly.hpp"
#include "steklov/hypercircle.hpp"
#include "steklov/mesh.hpp"
#include "steklov/quadrature.hpp"

namespace steklov::testing {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Triangle (0,0), (1,0), (0,1) as a one-element mesh.
inline Mesh reference_triangle() {
  return Mesh({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 1, 2}}, {{0, 1}, {1, 2}, {2, 0}});
}

// Random boundary data with entries in [-1, 1].
inline BoundaryField random_boundary_field(int s, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  BoundaryField g(s);
  for (int i = 0; i < s; ++i) g[i] = dist(rng);
  return g;
}

// Integral of f over the mesh with a high-order collapsed Gauss rule.
inline double integrate(const Mesh& mesh, const std::function<double(int, const Vec2&)>& f, int points = 8) {
  const auto rule = triangle_rule_collapsed(points);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto p = mesh.corners(t);
    const double area = mesh.element_geometry(t).area;
    for (const auto& q : rule) sum += q.weight * area * f(t, bary_to_point(p, q.bary));
  }
  return sum;
}

// Value and gradient of a P1 function on triangle t.
inline double p1_value(const Mesh& mesh, const Vector& y, int t, const Vec2& x) {
  const auto lam = barycentric(mesh, t, x);
  const auto& tri = mesh.triangles()[t];
  return lam[0] * y[tri[0]] + lam[1] * y[tri[1]] + lam[2] * y[tri[2]];
}

inline Vec2 p1_gradient(const Mesh& mesh, const Vector& y, int t) {
  const auto& tri = mesh.triangles()[t];
  return barycentric_gradients(mesh, t) * Eigen::Vector3d(y[tri[0]], y[tri[1]], y[tri[2]]);
}

// H¹ norm of u − u_h for a smooth u with gradient grad_u.
inline double h1_error(const Mesh& mesh, const Vector& y, const std::function<double(const Vec2&)>& u,
                       const std::function<Vec2(const Vec2&)>& grad_u, int points = 8) {
  const double sq = integrate(
      mesh,
      [&](int t, const Vec2& x) {
        const double e = u(x) - p1_value(mesh, y, t, x);
        const Vec2 de = grad_u(x) - p1_gradient(mesh, y, t);
        return e * e + de.squaredNorm();
      },
      points);
  return std::sqrt(sq);
}

// Boundary data sinh(x) n_x of u = cosh(x), which solves −Δu + u = 0.
inline double cosh_flux(const Vec2& x, const Vec2& normal) { return std::sinh(x.x()) * normal.x(); }

// Square root of a nonnegative quadratic form in the L²(Ω) norm of a
// piecewise-P1 (discontinuous) function given by vertex values per triangle.
inline double broken_p1_l2(const Mesh& mesh, const Vector& values) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Vector3d v = values.segment<3>(3 * t);
    sum += v.dot(p1_element_mass(mesh, t) * v);
  }
  return std::sqrt(std::max(sum, 0.0));
}

// X^h coefficients of a conforming P1 function.
inline Vector p1_to_broken(const Mesh& mesh, const Vector& y) {
  Vector out(3 * mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int i = 0; i < 3; ++i) out[3 * t + i] = y[mesh.triangles()[t][i]];
  return out;
}

}  // namespace steklov::testing
