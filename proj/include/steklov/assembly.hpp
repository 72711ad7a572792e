#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "steklov/mesh.hpp"

namespace steklov {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Coefficients of f_h in the boundary trace space X_Γ^h: entry 2b + a is the
/// value at endpoint a (in loop orientation) of boundary edge b.
using BoundaryField = Vector;

/// Dimensions and numbering of the four discrete spaces.
///
/// RT1 DOFs are ordered [interior edges (2 each) | elements (2 each) |
/// boundary edges (2 each)], so the first `p_interior` span W_0^h and the last
/// `p_boundary` carry the normal trace on Γ. Edge DOFs are the values of p·n at
/// the two edge endpoints (lower vertex index first) with the global edge
/// normal; element DOFs are the cell means of p_x and p_y.
struct DofMaps {
  int n = 0;           ///< dim V^h, one per vertex
  int m = 0;           ///< dim X^h, 3 per triangle (index 3t + local vertex)
  int s = 0;           ///< dim X_Γ^h, 2 per boundary edge
  int p_interior = 0;  ///< p̂
  int p_boundary = 0;  ///< p̄ (= s)
  std::vector<int> boundary_vertices;
  std::vector<std::array<int, 8>> rt_element_dofs;

  [[nodiscard]] int rt_total() const { return p_interior + p_boundary; }
};

DofMaps build_dof_maps(const Mesh& mesh);

/// Order-one Raviart–Thomas element on each triangle: fields (a,b) + c(x,y)
/// with a, b, c linear. Holds the per-element basis in scaled monomial form.
class RaviartThomasSpace {
 public:
  explicit RaviartThomasSpace(const Mesh& mesh);

  [[nodiscard]] const DofMaps& dofs() const { return dofs_; }
  [[nodiscard]] const std::array<int, 8>& element_dofs(int t) const { return dofs_.rt_element_dofs[t]; }

  /// Values of the 8 local basis fields at x (columns).
  [[nodiscard]] Eigen::Matrix<double, 2, 8> basis_values(int t, const Vec2& x) const;
  /// Divergences of the 8 local basis fields at x.
  [[nodiscard]] Eigen::Matrix<double, 1, 8> basis_divergence(int t, const Vec2& x) const;

  /// Field value at x inside triangle t for a global coefficient vector.
  [[nodiscard]] Vec2 evaluate(int t, const Vec2& x, const Vector& coeffs) const;
  [[nodiscard]] double divergence(int t, const Vec2& x, const Vector& coeffs) const;

  /// Exact local mass (8x8) and divergence-vs-barycentric (3x8) matrices.
  [[nodiscard]] Eigen::Matrix<double, 8, 8> element_mass(int t) const;
  [[nodiscard]] Eigen::Matrix<double, 3, 8> element_divergence(int t) const;

 private:
  struct Local {
    Vec2 center;
    double scale = 1.0;
    Eigen::Matrix<double, 8, 8> coeff;  // column d: basis d in the monomial basis
  };
  [[nodiscard]] Eigen::Matrix<double, 2, 8> monomials(const Local& loc, const Vec2& x) const;

  const Mesh* mesh_;
  DofMaps dofs_;
  std::vector<Local> local_;
};

/// All matrices needed by the hypercircle computation.
struct AssembledSystem {
  DofMaps dofs;
  SparseMatrix S;    ///< n x n, (∇φ_i, ∇φ_j)
  SparseMatrix J;    ///< n x n, (φ_i, φ_j)
  SparseMatrix D;    ///< n x s, b(φ_i, φ_j^Γ)
  SparseMatrix G;    ///< s x s, b(φ_i^Γ, φ_j^Γ)
  SparseMatrix L;    ///< m x n, (q_i, φ_j)
  SparseMatrix P00;  ///< p̂ x p̂
  SparseMatrix P0b;  ///< p̂ x p̄
  SparseMatrix Pbb;  ///< p̄ x p̄
  SparseMatrix Q;    ///< full RT mass, [[P00, P0b], [P0bᵀ, Pbb]]
  SparseMatrix N0;   ///< m x p̂, (q_i, div ψ_j)
  SparseMatrix Nb;   ///< m x p̄
  Vector w;          ///< (q_i, 1)
  SparseMatrix trace_map;  ///< p̄ x s, boundary RT coefficients from g
};

struct P1Matrices {
  SparseMatrix S;
  SparseMatrix J;
};

struct BoundaryMatrices {
  SparseMatrix D;
  SparseMatrix G;
  SparseMatrix trace_map;
};

struct RTMatrices {
  SparseMatrix P00, P0b, Pbb, Q, N0, Nb;
  Vector w;
  DofMaps dofs;
};

/// Element P1 stiffness and mass on triangle t (local vertex order).
Eigen::Matrix3d p1_element_stiffness(const Mesh& mesh, int t);
Eigen::Matrix3d p1_element_mass(const Mesh& mesh, int t);
/// Gradients of the barycentric coordinates of triangle t (columns).
Eigen::Matrix<double, 2, 3> barycentric_gradients(const Mesh& mesh, int t);
/// Barycentric coordinates of x with respect to triangle t.
std::array<double, 3> barycentric(const Mesh& mesh, int t, const Vec2& x);

P1Matrices assemble_p1(const Mesh& mesh);
BoundaryMatrices assemble_boundary(const Mesh& mesh);
RTMatrices assemble_rt1(const Mesh& mesh);
/// X^h-by-V^h mass coupling L.
SparseMatrix assemble_coupling(const Mesh& mesh);
AssembledSystem assemble_system(const Mesh& mesh);

/// Boundary mass on V^h: ∫_Γ φ_i φ_j ds.
SparseMatrix assemble_boundary_mass_p1(const Mesh& mesh);

/// Boundary function f(x, outward normal).
using BoundaryFunction = std::function<double(const Vec2&, const Vec2&)>;

/// L²(Γ) projection π_{h,Γ} onto X_Γ^h, edge by edge, with a Gauss rule of
/// `points` nodes per edge.
BoundaryField project_boundary(const Mesh& mesh, const BoundaryFunction& f, int points = 10);

/// b(f, φ_i) for the V^h basis.
Vector boundary_load_p1(const Mesh& mesh, const BoundaryFunction& f, int points = 10);

/// ‖f‖_b for f in X_Γ^h.
double boundary_norm(const AssembledSystem& sys, const BoundaryField& g);

/// Writes "row col value" coordinate files for every matrix of the system.
void dump_matrices(const AssembledSystem& sys, const std::filesystem::path& dir);
void write_coordinate(const SparseMatrix& A, const std::filesystem::path& path);

}  // namespace steklov
