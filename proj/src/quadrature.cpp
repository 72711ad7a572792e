#include "steklov/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace steklov {

std::vector<LineQuadPoint> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<LineQuadPoint> rule(n);
  // Newton on P_n with the Chebyshev-like initial guess; nodes on [-1,1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {0.5 * (1.0 - x), 0.5 * w};
    rule[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return rule;
}

const std::vector<TriangleQuadPoint>& triangle_rule_degree4() {
  static const std::vector<TriangleQuadPoint> rule = [] {
    const double a1 = 0.44594849091596488632, b1 = 1.0 - 2.0 * a1, w1 = 0.22338158967801146570;
    const double a2 = 0.091576213509770743460, b2 = 1.0 - 2.0 * a2, w2 = 0.10995174365532186764;
    return std::vector<TriangleQuadPoint>{
        {{b1, a1, a1}, w1}, {{a1, b1, a1}, w1}, {{a1, a1, b1}, w1},
        {{b2, a2, a2}, w2}, {{a2, b2, a2}, w2}, {{a2, a2, b2}, w2},
    };
  }();
  return rule;
}

std::vector<TriangleQuadPoint> triangle_rule_collapsed(int n) {
  const auto line = gauss_legendre(n);
  std::vector<TriangleQuadPoint> rule;
  rule.reserve(static_cast<std::size_t>(n) * n);
  // (u,v) in [0,1]^2 -> (x,y) = (u, v(1-u)); Jacobian (1-u), reference area 1/2.
  for (const auto& pu : line)
    for (const auto& pv : line) {
      const double x = pu.t, y = pv.t * (1.0 - pu.t);
      rule.push_back({{1.0 - x - y, x, y}, 2.0 * pu.weight * pv.weight * (1.0 - pu.t)});
    }
  return rule;
}

const std::vector<LineQuadPoint>& edge_rule_degree5() {
  static const std::vector<LineQuadPoint> rule = gauss_legendre(3);
  return rule;
}

}  // namespace steklov
