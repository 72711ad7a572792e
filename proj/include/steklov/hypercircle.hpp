#pragma once

#include "steklov/assembly.hpp"
#include "steklov/linalg.hpp"

namespace steklov {

/// ũ_h ∈ V^h with a(ũ_h, v_h) = b(f_h, v_h) for all v_h.
struct NeumannSolution {
  Vector y;
};

/// Equilibrated flux p_h ∈ W^h_{f_h} with div p_h + c = ũ_h, plus the
/// multiplier ρ_h ∈ X^h (mean zero).
struct FluxSolution {
  Vector x;  ///< all RT coefficients, interior block first, boundary block imposed from f_h
  Vector z;  ///< ρ_h in the X^h basis
  double c = 0.0;
};

struct ErrorQuantity {
  double direct = 0.0;       ///< ‖∇ũ_h − p_h‖ by element quadrature
  double closed_form = 0.0;  ///< same quantity from the matrix expansion
};

struct KappaResult {
  double kappa_bar = 0.0;
  BoundaryField maximizer;  ///< G-normalized
  Matrix B;                 ///< s x s quadratic form, symmetrized
  double asymmetry = 0.0;   ///< ‖B − Bᵀ‖_F / ‖B‖_F before symmetrization
  double max_abs_c = 0.0;   ///< largest |c| over the s basis solves
};

/// Factorizes S + J and the mixed saddle system once, then solves problems
/// (a) and (b) for any boundary data.
///
/// The flux problem fixes the boundary RT coefficients from f_h through the
/// trace map and solves for (x_0, c, z):
///
///     P00 x0 + N0ᵀ z      = −P0b xb
///                wᵀ z      = 0
///     N0 x0 + w c          = L y − Nb xb
class HypercircleSolver {
 public:
  explicit HypercircleSolver(const AssembledSystem& sys);

  [[nodiscard]] NeumannSolution solve_neumann(const BoundaryField& g) const;
  [[nodiscard]] FluxSolution solve_flux(const BoundaryField& g, const NeumannSolution& u) const;

  /// Columns of Y solve problem (a) for the columns of Gdata; columns of X
  /// are the corresponding full RT coefficient vectors; c holds the scalar
  /// multipliers.
  void solve_batch(const Matrix& Gdata, Matrix& Y, Matrix& X, Vector& c, Matrix* Z = nullptr) const;

  [[nodiscard]] const AssembledSystem& system() const { return *sys_; }

 private:
  const AssembledSystem* sys_;
  SpdSolver neumann_;
  SaddlePointSolver saddle_;
};

NeumannSolution solve_neumann_p1(const AssembledSystem& sys, const BoundaryField& g);
FluxSolution solve_mixed_flux(const AssembledSystem& sys, const BoundaryField& g, const NeumannSolution& u);

/// ‖∇ũ_h − p_h‖_{L²}. Throws if the closed form is negative beyond roundoff.
ErrorQuantity error_quantity(const Mesh& mesh, const AssembledSystem& sys, const BoundaryField& g,
                             const NeumannSolution& u, const FluxSolution& flux);

double error_quantity_direct(const Mesh& mesh, const NeumannSolution& u, const FluxSolution& flux);
double error_quantity_closed_form(const AssembledSystem& sys, const BoundaryField& g, const NeumannSolution& u,
                                  const FluxSolution& flux);

/// X^h coefficients (vertex values per triangle) of div p_h.
Vector divergence_coefficients(const Mesh& mesh, const FluxSolution& flux);

/// κ̄_h = sqrt(λ_max(B, G)).
KappaResult compute_kappa_bar(const AssembledSystem& sys);

}  // namespace steklov
