#include "steklov/spectrum.hpp"

#include <cmath>

#include "steklov/bounds.hpp"

namespace steklov {

using Triplet = Eigen::Triplet<double>;

SteklovPencil assemble_steklov_p1(const Mesh& mesh) {
  auto p1 = assemble_p1(mesh);
  return {SparseMatrix(p1.S + p1.J), assemble_boundary_mass_p1(mesh)};
}

SteklovPencil assemble_steklov_cr(const Mesh& mesh, CrBoundaryForm form) {
  const int ne = mesh.num_edges();
  std::vector<Triplet> a, b;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& edges = mesh.triangle_edges(t);
    const auto grads = barycentric_gradients(mesh, t);
    const double area = mesh.element_geometry(t).area;
    // Local basis ψ_i = 1 − 2λ_i belongs to the edge opposite vertex i; the
    // edge-midpoint rule integrates the mass exactly: ∫ψ_iψ_j = |K|/3 δ_ij.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double val = 4.0 * area * grads.col(i).dot(grads.col(j));
        if (i == j) val += area / 3.0;
        a.emplace_back(edges[i], edges[j], val);
      }
  }
  for (const auto& be : mesh.boundary_edges()) {
    const double len = (mesh.vertices()[be.v[1]] - mesh.vertices()[be.v[0]]).norm();
    if (form == CrBoundaryForm::midpoint) {
      b.emplace_back(be.edge, be.edge, len);
      continue;
    }
    // Trace on edge i of K: at its endpoint vertex j the value is
    // u_i + u_k − u_j (j, k the other two local indices).
    const auto& tri = mesh.triangles()[be.triangle];
    const auto& edges = mesh.triangle_edges(be.triangle);
    const int i = mesh.edges()[be.edge].local[0];
    Eigen::Matrix<double, 2, 3> T = Eigen::Matrix<double, 2, 3>::Zero();  // endpoint values from (u_0, u_1, u_2)
    for (int a_pos = 0; a_pos < 2; ++a_pos) {
      int j = 0;
      while (tri[j] != be.v[a_pos]) ++j;
      const int k = 3 - i - j;
      T(a_pos, i) += 1.0;
      T(a_pos, k) += 1.0;
      T(a_pos, j) -= 1.0;
    }
    Eigen::Matrix2d M;
    M << 2.0, 1.0, 1.0, 2.0;
    M *= len / 6.0;
    const Eigen::Matrix3d local = T.transpose() * M * T;
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) {
        b.emplace_back(edges[r], edges[c], local(r, c));
        if (c != r) b.emplace_back(edges[c], edges[r], local(r, c));
      }
  }
  SteklovPencil out{SparseMatrix(ne, ne), SparseMatrix(ne, ne)};
  out.A.setFromTriplets(a.begin(), a.end());
  out.B.setFromTriplets(b.begin(), b.end());
  out.B.prune(0.0, 0.0);
  return out;
}

namespace {

SteklovSpectrum to_spectrum(Discretization method, const EigenResult& res, int dof) {
  SteklovSpectrum out;
  out.method = method;
  out.values = res.values;
  out.vectors = res.vectors;
  out.n_finite = res.n_finite;
  out.group = res.group;
  out.dof = dof;
  return out;
}

}  // namespace

SteklovSpectrum solve_steklov_p1(const Mesh& mesh, int k) {
  const int n0 = static_cast<int>(mesh.boundary_vertices().size());
  if (k < 1 || k > n0)
    throw std::invalid_argument("solve_steklov_p1: k = " + std::to_string(k) + " must be in [1, " +
                                std::to_string(n0) + "]");
  const auto pencil = assemble_steklov_p1(mesh);
  return to_spectrum(Discretization::p1_conforming, general_sym_eig(pencil.A, pencil.B, k), mesh.num_vertices());
}

SteklovSpectrum solve_steklov_cr(const Mesh& mesh, int k, CrBoundaryForm form) {
  const auto pencil = assemble_steklov_cr(mesh, form);
  if (k < 1) throw std::invalid_argument("solve_steklov_cr: k must be positive");
  return to_spectrum(Discretization::crouzeix_raviart, general_sym_eig(pencil.A, pencil.B, k), mesh.num_edges());
}

double rayleigh_quotient(const SteklovPencil& pencil, const Vector& v) {
  if (v.size() != pencil.A.rows()) throw std::invalid_argument("rayleigh_quotient: vector has wrong length");
  const double b = v.dot(pencil.B * v);
  if (!(b > 0.0)) throw std::invalid_argument("rayleigh_quotient: vector has zero boundary trace");
  return b / v.dot(pencil.A * v);
}

double rayleigh_quotient(const Mesh& mesh, const Vector& v) {
  return rayleigh_quotient(assemble_steklov_p1(mesh), v);
}

}  // namespace steklov
