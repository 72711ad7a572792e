#include "steklov/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

std::string to_string(Method m) {
  return m == Method::conforming ? "conforming" : "cr";
}

double trace_constant(const ElementGeometry& geom, int edge) {
  if (!(geom.area > 0.0)) throw BoundsError("trace_constant: degenerate element");
  if (edge < 0 || edge > 2) throw BoundsError("trace_constant: edge index out of range");
  return constants::trace * std::sqrt(geom.edge_length[edge] / geom.area) * geom.h;
}

double trace_constant_height_form(const ElementGeometry& geom, int edge) {
  if (!(geom.area > 0.0)) throw BoundsError("trace_constant: degenerate element");
  if (edge < 0 || edge > 2) throw BoundsError("trace_constant: edge index out of range");
  return constants::trace_height * geom.h / std::sqrt(geom.height[edge]);
}

namespace {

// Calls f(geometry, local edge) for every boundary edge.
template <class F>
void for_each_boundary_edge(const Mesh& mesh, F&& f) {
  for (const auto& be : mesh.boundary_edges()) {
    const Edge& edge = mesh.edges()[be.edge];
    f(mesh.element_geometry(be.triangle), edge.local[0]);
  }
}

}  // namespace

double c_h(const Mesh& mesh) {
  double best = 0.0;
  for_each_boundary_edge(mesh, [&](const ElementGeometry& g, int e) { best = std::max(best, trace_constant(g, e)); });
  return best;
}

double c_bar_h(const Mesh& mesh) {
  double h = 0.0;
  for (const auto& be : mesh.boundary_edges()) h = std::max(h, mesh.element_geometry(be.triangle).h);
  return constants::trace_simplified * std::sqrt(h);
}

double max_boundary_ratio(const Mesh& mesh) {
  double best = 0.0;
  for_each_boundary_edge(mesh, [&](const ElementGeometry& g, int e) {
    best = std::max(best, g.h / std::sqrt(g.height[e]));
  });
  return best;
}

double m_h(double C_h, double kappa_bar) {
  if (C_h < 0.0 || kappa_bar < 0.0) throw BoundsError("m_h: constants must be nonnegative");
  return std::hypot(C_h, kappa_bar);
}

double lower_bound_conforming(double lambda_kh, double M_h) {
  if (!(lambda_kh > 0.0)) throw BoundsError("lower_bound_conforming: eigenvalue must be positive");
  if (M_h < 0.0) throw BoundsError("lower_bound_conforming: M_h must be nonnegative");
  return lambda_kh / (1.0 + M_h * M_h * lambda_kh);
}

CrConstant cr_constant(const Mesh& mesh, double lambda_hat_1h) {
  if (!(lambda_hat_1h > 0.0)) throw BoundsError("cr_constant: first CR eigenvalue must be positive");
  const double h = mesh.mesh_size();
  double hb = 0.0;
  for (const auto& be : mesh.boundary_edges()) hb = std::max(hb, mesh.element_geometry(be.triangle).h);
  const double projection = constants::cr_projection / std::sqrt(lambda_hat_1h);
  return {constants::cr_trace * max_boundary_ratio(mesh) + projection * h,
          constants::cr_simplified * std::sqrt(hb) + projection * h};
}

double lower_bound_cr(double lambda_hat_kh, double hat_C_h) {
  if (!(lambda_hat_kh > 0.0)) throw BoundsError("lower_bound_cr: eigenvalue must be positive");
  if (hat_C_h < 0.0) throw BoundsError("lower_bound_cr: constant must be nonnegative");
  return lambda_hat_kh / (1.0 + hat_C_h * hat_C_h * lambda_hat_kh);
}

std::optional<std::vector<double>> default_reference_eigenvalues(Domain domain) {
  switch (domain) {
    case Domain::unit_square: return std::vector<double>{0.240079, 1.49230, 1.49230};
    case Domain::l_shape: return std::vector<double>{0.3414160, 0.6168667, 0.9842784};
    case Domain::custom: break;
  }
  return std::nullopt;
}

}  // namespace steklov
