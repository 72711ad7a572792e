#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace steklov {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse Cholesky of a symmetric positive definite matrix, factorized once.
class SpdSolver {
 public:
  explicit SpdSolver(const SparseMatrix& A);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  /// Solves A X = B column by column, with one step of iterative refinement.
  [[nodiscard]] Matrix solve(const Matrix& B) const;
  [[nodiscard]] Vector solve(const Vector& b) const;
  [[nodiscard]] int size() const { return static_cast<int>(A_.rows()); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SparseMatrix A_;
};

Matrix solve_spd(const SparseMatrix& A, const Matrix& B);
Matrix solve_spd(const Matrix& A, const Matrix& B);

/// Symmetric saddle-point system with an SPD primal block P and an optional
/// dense border W of extra unknowns c that carry no primal coupling:
///
///     [ P  0  Cᵀ ] [u]   [f]
///     [ 0  0  Wᵀ ] [c] = [q]
///     [ C  W  0  ] [z]   [r]
///
/// The whole system is factorized once by a pivoting sparse LU.
class SaddlePointSolver {
 public:
  SaddlePointSolver(const SparseMatrix& P, const SparseMatrix& C, const Matrix& W = Matrix());
  ~SaddlePointSolver();
  SaddlePointSolver(SaddlePointSolver&&) noexcept;
  SaddlePointSolver& operator=(SaddlePointSolver&&) noexcept;

  /// Solves for stacked right-hand sides [f; q; r]; returns stacked [u; c; z].
  /// Throws LinalgError if the relative residual exceeds 1e-10.
  [[nodiscard]] Matrix solve(const Matrix& rhs) const;
  [[nodiscard]] Vector solve(const Vector& rhs) const;

  /// The assembled symmetric system matrix, in the unknown order above.
  [[nodiscard]] const SparseMatrix& matrix() const { return K_; }
  [[nodiscard]] int primal_size() const { return primal_; }
  [[nodiscard]] int border_size() const { return border_; }
  [[nodiscard]] int constraint_size() const { return static_cast<int>(K_.rows()) - primal_ - border_; }

 private:
  [[nodiscard]] Matrix solve_once(const Matrix& rhs) const;

  struct Impl;
  std::unique_ptr<Impl> impl_;
  SparseMatrix K_;
  int primal_ = 0;
  int border_ = 0;
};

Vector solve_saddle(const SparseMatrix& P, const SparseMatrix& C, const Vector& rhs);

enum class Which { smallest, largest };

/// Finite spectrum of a symmetric pencil A v = λ B v.
struct EigenResult {
  Vector values;            ///< ascending for Which::smallest, descending for Which::largest
  Matrix vectors;           ///< columns, B-orthonormal
  int n_finite = 0;         ///< number of finite eigenvalues of the pencil
  std::vector<int> group;   ///< degenerate-group id per returned value (relative gap 1e-9)
};

/// Generalized symmetric eigenproblem. B may be positive definite or positive
/// semidefinite; in the latter case the DOFs on which B vanishes identically
/// are eliminated by a Schur complement of A, and any remaining null space of
/// the reduced B is deflated (infinite eigenvalues are never formed).
EigenResult general_sym_eig(const SparseMatrix& A, const SparseMatrix& B, int k, Which which = Which::smallest);
EigenResult general_sym_eig(const Matrix& A, const Matrix& B, int k, Which which = Which::smallest);

/// Groups consecutive values whose relative gap is below `rel_tol`.
std::vector<int> degenerate_groups(const Vector& values, double rel_tol = 1e-9);

}  // namespace steklov
