#include <stdexcept>

#include <Eigen/Dense>

#include "steklov/assembly.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

DofMaps build_dof_maps(const Mesh& mesh) {
  DofMaps d;
  d.n = mesh.num_vertices();
  d.m = 3 * mesh.num_triangles();
  d.s = 2 * mesh.num_boundary_edges();
  d.p_interior = 2 * mesh.num_interior_edges() + 2 * mesh.num_triangles();
  d.p_boundary = d.s;
  d.boundary_vertices = mesh.boundary_vertices();

  std::vector<int> interior_index(mesh.num_edges(), -1);
  int next = 0;
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (!mesh.edges()[e].on_boundary()) interior_index[e] = next++;
  const int cell_offset = 2 * mesh.num_interior_edges();

  d.rt_element_dofs.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    auto& dofs = d.rt_element_dofs[t];
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.triangle_edges(t)[i];
      const Edge& edge = mesh.edges()[e];
      const int base = edge.on_boundary() ? d.p_interior + 2 * edge.boundary : 2 * interior_index[e];
      dofs[2 * i] = base;
      dofs[2 * i + 1] = base + 1;
    }
    dofs[6] = cell_offset + 2 * t;
    dofs[7] = cell_offset + 2 * t + 1;
  }
  return d;
}

RaviartThomasSpace::RaviartThomasSpace(const Mesh& mesh) : mesh_(&mesh), dofs_(build_dof_maps(mesh)) {
  const auto& rule = triangle_rule_degree4();
  local_.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    Local& loc = local_[t];
    const auto p = mesh.corners(t);
    const auto geom = mesh.element_geometry(t);
    loc.center = (p[0] + p[1] + p[2]) / 3.0;
    loc.scale = geom.h;
    loc.coeff.setIdentity();

    Eigen::Matrix<double, 8, 8> V;
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.triangle_edges(t)[i];
      const Edge& edge = mesh.edges()[e];
      const Vec2 normal = mesh.edge_normal(e);
      for (int k = 0; k < 2; ++k) {
        const Vec2& x = mesh.vertices()[edge.v[k]];
        V.row(2 * i + k) = normal.transpose() * monomials(loc, x);
      }
    }
    Eigen::Matrix<double, 2, 8> mean = Eigen::Matrix<double, 2, 8>::Zero();
    for (const auto& q : rule) mean += q.weight * monomials(loc, bary_to_point(p, q.bary));
    V.row(6) = mean.row(0);
    V.row(7) = mean.row(1);

    Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(V);
    if (!lu.isInvertible())
      throw std::runtime_error("RT1 degrees of freedom are not unisolvent on triangle " + std::to_string(t));
    loc.coeff = lu.inverse();
  }
}

// Scaled monomial basis of RT1 in ξ = (x - center) / scale:
// (1,0) (ξ,0) (η,0) (0,1) (0,ξ) (0,η) (ξ²,ξη) (ξη,η²).
Eigen::Matrix<double, 2, 8> RaviartThomasSpace::monomials(const Local& loc, const Vec2& x) const {
  const Vec2 r = (x - loc.center) / loc.scale;
  const double u = r.x(), v = r.y();
  Eigen::Matrix<double, 2, 8> M;
  M << 1, u, v, 0, 0, 0, u * u, u * v,
       0, 0, 0, 1, u, v, u * v, v * v;
  return M;
}

Eigen::Matrix<double, 2, 8> RaviartThomasSpace::basis_values(int t, const Vec2& x) const {
  const Local& loc = local_[t];
  return monomials(loc, x) * loc.coeff;
}

Eigen::Matrix<double, 1, 8> RaviartThomasSpace::basis_divergence(int t, const Vec2& x) const {
  const Local& loc = local_[t];
  const Vec2 r = (x - loc.center) / loc.scale;
  Eigen::Matrix<double, 1, 8> div;
  div << 0, 1, 0, 0, 0, 1, 3 * r.x(), 3 * r.y();
  return (div / loc.scale) * loc.coeff;
}

Vec2 RaviartThomasSpace::evaluate(int t, const Vec2& x, const Vector& coeffs) const {
  const auto& dofs = element_dofs(t);
  Eigen::Matrix<double, 8, 1> c;
  for (int d = 0; d < 8; ++d) c[d] = coeffs[dofs[d]];
  return basis_values(t, x) * c;
}

double RaviartThomasSpace::divergence(int t, const Vec2& x, const Vector& coeffs) const {
  const auto& dofs = element_dofs(t);
  Eigen::Matrix<double, 8, 1> c;
  for (int d = 0; d < 8; ++d) c[d] = coeffs[dofs[d]];
  return basis_divergence(t, x) * c;
}

Eigen::Matrix<double, 8, 8> RaviartThomasSpace::element_mass(int t) const {
  const auto p = mesh_->corners(t);
  const double area = mesh_->element_geometry(t).area;
  Eigen::Matrix<double, 8, 8> M = Eigen::Matrix<double, 8, 8>::Zero();
  for (const auto& q : triangle_rule_degree4()) {
    const auto phi = basis_values(t, bary_to_point(p, q.bary));
    M.noalias() += (q.weight * area) * phi.transpose() * phi;
  }
  // Mirror the upper triangle so the matrix is exactly symmetric.
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < i; ++j) M(i, j) = M(j, i);
  return M;
}

Eigen::Matrix<double, 3, 8> RaviartThomasSpace::element_divergence(int t) const {
  const auto p = mesh_->corners(t);
  const double area = mesh_->element_geometry(t).area;
  Eigen::Matrix<double, 3, 8> N = Eigen::Matrix<double, 3, 8>::Zero();
  for (const auto& q : triangle_rule_degree4()) {
    const auto div = basis_divergence(t, bary_to_point(p, q.bary));
    for (int i = 0; i < 3; ++i) N.row(i) += (q.weight * area * q.bary[i]) * div;
  }
  return N;
}

RTMatrices assemble_rt1(const Mesh& mesh) {
  RaviartThomasSpace space(mesh);
  RTMatrices out;
  out.dofs = space.dofs();
  const int ph = out.dofs.p_interior, pb = out.dofs.p_boundary, m = out.dofs.m;

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> q, p00, p0b, pbb, n0, nb;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& dofs = space.element_dofs(t);
    const auto M = space.element_mass(t);
    const auto N = space.element_divergence(t);
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        const int i = dofs[a], j = dofs[b];
        q.emplace_back(i, j, M(a, b));
        if (i < ph && j < ph) p00.emplace_back(i, j, M(a, b));
        else if (i < ph) p0b.emplace_back(i, j - ph, M(a, b));
        else if (j >= ph) pbb.emplace_back(i - ph, j - ph, M(a, b));
      }
      for (int r = 0; r < 3; ++r) {
        const int row = 3 * t + r;
        if (dofs[a] < ph) n0.emplace_back(row, dofs[a], N(r, a));
        else nb.emplace_back(row, dofs[a] - ph, N(r, a));
      }
    }
  }
  auto build = [](int rows, int cols, const std::vector<Triplet>& trips) {
    SparseMatrix A(rows, cols);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
  };
  out.Q = build(ph + pb, ph + pb, q);
  out.P00 = build(ph, ph, p00);
  out.P0b = build(ph, pb, p0b);
  out.Pbb = build(pb, pb, pbb);
  out.N0 = build(m, ph, n0);
  out.Nb = build(m, pb, nb);

  out.w.resize(m);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int r = 0; r < 3; ++r) out.w[3 * t + r] = mesh.element_geometry(t).area / 3.0;
  return out;
}

}  // namespace steklov
