#pragma once

#include <vector>

#include "steklov/assembly.hpp"
#include "steklov/linalg.hpp"

namespace steklov {

enum class Discretization { p1_conforming, crouzeix_raviart };

/// How the boundary form b(u, v) is evaluated for Crouzeix–Raviart functions.
/// `exact` integrates the (edgewise linear) traces exactly and is the default;
/// `midpoint` uses the edge-midpoint value, i.e. the edge mean of the trace,
/// which gives a rank-deficient B with one nonzero per boundary edge.
enum class CrBoundaryForm { exact, midpoint };

struct SteklovSpectrum {
  Discretization method = Discretization::p1_conforming;
  Vector values;   ///< ascending
  Matrix vectors;  ///< b-orthonormal columns
  int n_finite = 0;
  int dof = 0;     ///< dimension of the discrete space
  std::vector<int> group;
};

/// Stiffness + mass pencil of a discrete Steklov problem.
struct SteklovPencil {
  SparseMatrix A;  ///< a(u, v) = (∇u, ∇v) + (u, v), broken for CR
  SparseMatrix B;  ///< b(u, v) on Γ
};

SteklovPencil assemble_steklov_p1(const Mesh& mesh);
/// CR DOFs are numbered by global edge index (value at the edge midpoint).
SteklovPencil assemble_steklov_cr(const Mesh& mesh, CrBoundaryForm form = CrBoundaryForm::exact);

SteklovSpectrum solve_steklov_p1(const Mesh& mesh, int k);
SteklovSpectrum solve_steklov_cr(const Mesh& mesh, int k, CrBoundaryForm form = CrBoundaryForm::exact);

/// R(v) = b(v, v) / a(v, v) for v in V^h.
double rayleigh_quotient(const Mesh& mesh, const Vector& v);
double rayleigh_quotient(const SteklovPencil& pencil, const Vector& v);

}  // namespace steklov
