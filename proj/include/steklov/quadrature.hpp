#pragma once

#include <array>
#include <vector>

#include "steklov/mesh.hpp"

namespace steklov {

/// Point of a triangle rule in barycentric coordinates; weights sum to 1 and
/// are multiplied by |K| by the caller.
struct TriangleQuadPoint {
  std::array<double, 3> bary;
  double weight;
};

/// Point of a rule on [0,1]; weights sum to 1.
struct LineQuadPoint {
  double t;
  double weight;
};

/// Gauss-Legendre rule with n points, mapped to [0,1].
std::vector<LineQuadPoint> gauss_legendre(int n);

/// Symmetric 6-point rule exact for polynomials of degree 4.
const std::vector<TriangleQuadPoint>& triangle_rule_degree4();

/// Collapsed (Duffy) tensor Gauss rule with n^2 points, exact to degree 2n-2.
std::vector<TriangleQuadPoint> triangle_rule_collapsed(int n);

/// Three-point Gauss rule on [0,1] (exact to degree 5), used for edge integrals.
const std::vector<LineQuadPoint>& edge_rule_degree5();

inline Vec2 bary_to_point(const std::array<Vec2, 3>& corners, const std::array<double, 3>& b) {
  return b[0] * corners[0] + b[1] * corners[1] + b[2] * corners[2];
}

}  // namespace steklov
