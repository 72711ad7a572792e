#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include <Eigen/Dense>

#include "steklov/assembly.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

using Triplet = Eigen::Triplet<double>;

Eigen::Matrix<double, 2, 3> barycentric_gradients(const Mesh& mesh, int t) {
  const auto p = mesh.corners(t);
  const double two_area = 2.0 * mesh.element_geometry(t).area;
  Eigen::Matrix<double, 2, 3> g;
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = p[(i + 1) % 3];
    const Vec2& b = p[(i + 2) % 3];
    g(0, i) = (a.y() - b.y()) / two_area;
    g(1, i) = (b.x() - a.x()) / two_area;
  }
  return g;
}

std::array<double, 3> barycentric(const Mesh& mesh, int t, const Vec2& x) {
  const auto g = barycentric_gradients(mesh, t);
  const auto p = mesh.corners(t);
  std::array<double, 3> l{};
  for (int i = 0; i < 3; ++i) l[i] = g.col(i).dot(x - p[(i + 1) % 3]);
  return l;
}

Eigen::Matrix3d p1_element_stiffness(const Mesh& mesh, int t) {
  const auto g = barycentric_gradients(mesh, t);
  const double area = mesh.element_geometry(t).area;
  Eigen::Matrix3d K;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) K(i, j) = K(j, i) = area * g.col(i).dot(g.col(j));
  return K;
}

Eigen::Matrix3d p1_element_mass(const Mesh& mesh, int t) {
  const double area = mesh.element_geometry(t).area;
  Eigen::Matrix3d M;
  M.setConstant(area / 12.0);
  M.diagonal().setConstant(area / 6.0);
  return M;
}

P1Matrices assemble_p1(const Mesh& mesh) {
  std::vector<Triplet> s, j;
  s.reserve(9 * mesh.num_triangles());
  j.reserve(9 * mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto K = p1_element_stiffness(mesh, t);
    const auto M = p1_element_mass(mesh, t);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        s.emplace_back(tri[a], tri[b], K(a, b));
        j.emplace_back(tri[a], tri[b], M(a, b));
      }
  }
  const int n = mesh.num_vertices();
  P1Matrices out{SparseMatrix(n, n), SparseMatrix(n, n)};
  out.S.setFromTriplets(s.begin(), s.end());
  out.J.setFromTriplets(j.begin(), j.end());
  return out;
}

BoundaryMatrices assemble_boundary(const Mesh& mesh) {
  const int n = mesh.num_vertices();
  const int s = 2 * mesh.num_boundary_edges();
  std::vector<Triplet> d, g, tm;
  for (int b = 0; b < mesh.num_boundary_edges(); ++b) {
    const auto& be = mesh.boundary_edges()[b];
    const double len = (mesh.vertices()[be.v[1]] - mesh.vertices()[be.v[0]]).norm();
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        const double val = (a == c ? 2.0 : 1.0) * len / 6.0;
        g.emplace_back(2 * b + a, 2 * b + c, val);
        d.emplace_back(be.v[a], 2 * b + c, val);
      }
    // Boundary RT DOF (b, k) is ordered by global vertex index; the X_Γ^h
    // entry (b, a) follows the loop orientation.
    for (int a = 0; a < 2; ++a) {
      const int k = (be.sign > 0) ? a : 1 - a;
      tm.emplace_back(2 * b + k, 2 * b + a, static_cast<double>(be.sign));
    }
  }
  BoundaryMatrices out{SparseMatrix(n, s), SparseMatrix(s, s), SparseMatrix(s, s)};
  out.D.setFromTriplets(d.begin(), d.end());
  out.G.setFromTriplets(g.begin(), g.end());
  out.trace_map.setFromTriplets(tm.begin(), tm.end());
  return out;
}

SparseMatrix assemble_boundary_mass_p1(const Mesh& mesh) {
  std::vector<Triplet> trips;
  for (const auto& be : mesh.boundary_edges()) {
    const double len = (mesh.vertices()[be.v[1]] - mesh.vertices()[be.v[0]]).norm();
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) trips.emplace_back(be.v[a], be.v[c], (a == c ? 2.0 : 1.0) * len / 6.0);
  }
  SparseMatrix B(mesh.num_vertices(), mesh.num_vertices());
  B.setFromTriplets(trips.begin(), trips.end());
  return B;
}

SparseMatrix assemble_coupling(const Mesh& mesh) {
  std::vector<Triplet> trips;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto M = p1_element_mass(mesh, t);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) trips.emplace_back(3 * t + r, tri[c], M(r, c));
  }
  SparseMatrix L(3 * mesh.num_triangles(), mesh.num_vertices());
  L.setFromTriplets(trips.begin(), trips.end());
  return L;
}

AssembledSystem assemble_system(const Mesh& mesh) {
  AssembledSystem sys;
  auto p1 = assemble_p1(mesh);
  auto bd = assemble_boundary(mesh);
  auto rt = assemble_rt1(mesh);
  sys.dofs = std::move(rt.dofs);
  sys.S = std::move(p1.S);
  sys.J = std::move(p1.J);
  sys.D = std::move(bd.D);
  sys.G = std::move(bd.G);
  sys.trace_map = std::move(bd.trace_map);
  sys.L = assemble_coupling(mesh);
  sys.P00 = std::move(rt.P00);
  sys.P0b = std::move(rt.P0b);
  sys.Pbb = std::move(rt.Pbb);
  sys.Q = std::move(rt.Q);
  sys.N0 = std::move(rt.N0);
  sys.Nb = std::move(rt.Nb);
  sys.w = std::move(rt.w);
  return sys;
}

BoundaryField project_boundary(const Mesh& mesh, const BoundaryFunction& f, int points) {
  const auto rule = gauss_legendre(points);
  BoundaryField g(2 * mesh.num_boundary_edges());
  // Inverse of the 2x2 edge Gram matrix (ℓ/6)[[2,1],[1,2]] is (2/ℓ)[[2,-1],[-1,2]].
  for (int b = 0; b < mesh.num_boundary_edges(); ++b) {
    const auto& be = mesh.boundary_edges()[b];
    const Vec2& x0 = mesh.vertices()[be.v[0]];
    const Vec2& x1 = mesh.vertices()[be.v[1]];
    const double len = (x1 - x0).norm();
    const Vec2 normal = mesh.outward_normal(b);
    double m0 = 0.0, m1 = 0.0;
    for (const auto& q : rule) {
      const double val = f(x0 + q.t * (x1 - x0), normal);
      if (!std::isfinite(val))
        throw std::domain_error("project_boundary: non-finite boundary data on edge " + std::to_string(b));
      m0 += q.weight * len * val * (1.0 - q.t);
      m1 += q.weight * len * val * q.t;
    }
    g[2 * b] = (2.0 / len) * (2.0 * m0 - m1);
    g[2 * b + 1] = (2.0 / len) * (2.0 * m1 - m0);
  }
  return g;
}

Vector boundary_load_p1(const Mesh& mesh, const BoundaryFunction& f, int points) {
  const auto rule = gauss_legendre(points);
  Vector rhs = Vector::Zero(mesh.num_vertices());
  for (int b = 0; b < mesh.num_boundary_edges(); ++b) {
    const auto& be = mesh.boundary_edges()[b];
    const Vec2& x0 = mesh.vertices()[be.v[0]];
    const Vec2& x1 = mesh.vertices()[be.v[1]];
    const double len = (x1 - x0).norm();
    const Vec2 normal = mesh.outward_normal(b);
    for (const auto& q : rule) {
      const double val = f(x0 + q.t * (x1 - x0), normal);
      rhs[be.v[0]] += q.weight * len * val * (1.0 - q.t);
      rhs[be.v[1]] += q.weight * len * val * q.t;
    }
  }
  return rhs;
}

double boundary_norm(const AssembledSystem& sys, const BoundaryField& g) {
  return std::sqrt(std::max(0.0, g.dot(sys.G * g)));
}

void write_coordinate(const SparseMatrix& A, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "% " << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
  out << std::setprecision(17);
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

void dump_matrices(const AssembledSystem& sys, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const SparseMatrix*> items[] = {
      {"S", &sys.S},     {"J", &sys.J},     {"D", &sys.D},   {"G", &sys.G},
      {"L", &sys.L},     {"P00", &sys.P00}, {"P0b", &sys.P0b}, {"Pbb", &sys.Pbb},
      {"Q", &sys.Q},     {"N0", &sys.N0},   {"Nb", &sys.Nb}, {"trace_map", &sys.trace_map},
  };
  for (const auto& [name, mat] : items) write_coordinate(*mat, dir / (std::string(name) + ".txt"));
  std::ofstream w(dir / "w.txt");
  w << std::setprecision(17);
  for (Eigen::Index i = 0; i < sys.w.size(); ++i) w << i << " 0 " << sys.w[i] << '\n';
}

}  // namespace steklov
