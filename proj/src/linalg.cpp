#include "steklov/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#ifdef STEKLOV_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

namespace steklov {

using Triplet = Eigen::Triplet<double>;

// ---------------------------------------------------------------------------
// SPD solves

struct SpdSolver::Impl {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
};

SpdSolver::SpdSolver(const SparseMatrix& A) : impl_(std::make_unique<Impl>()), A_(A) {
  if (A.rows() != A.cols()) throw LinalgError("matrix not SPD: not square");
  A_.makeCompressed();
  impl_->llt.compute(A_);
  if (impl_->llt.info() != Eigen::Success) throw LinalgError("matrix not SPD: non-positive pivot in Cholesky");
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

Matrix SpdSolver::solve(const Matrix& B) const {
  if (B.rows() != A_.rows()) throw LinalgError("solve_spd: right-hand side has wrong number of rows");
  Matrix X = impl_->llt.solve(B);
  const Matrix R = B - A_ * X;
  X += impl_->llt.solve(R);
  return X;
}

Vector SpdSolver::solve(const Vector& b) const {
  Matrix X = solve(Matrix(b));
  return X.col(0);
}

Matrix solve_spd(const SparseMatrix& A, const Matrix& B) { return SpdSolver(A).solve(B); }

Matrix solve_spd(const Matrix& A, const Matrix& B) {
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success) throw LinalgError("matrix not SPD: non-positive pivot in Cholesky");
  Matrix X = llt.solve(B);
  X += llt.solve(B - A * X);
  return X;
}

// ---------------------------------------------------------------------------
// Saddle-point solves

struct SaddlePointSolver::Impl {
#ifdef STEKLOV_HAVE_UMFPACK
  Eigen::UmfPackLU<SparseMatrix> lu;
#else
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
#endif
};

SaddlePointSolver::SaddlePointSolver(const SparseMatrix& P, const SparseMatrix& C, const Matrix& W)
    : impl_(std::make_unique<Impl>()), primal_(static_cast<int>(P.rows())), border_(static_cast<int>(W.cols())) {
  if (P.rows() != P.cols()) throw LinalgError("solve_saddle: primal block is not square");
  if (C.cols() != P.cols()) throw LinalgError("solve_saddle: constraint block has wrong width");
  if (border_ > 0 && W.rows() != C.rows()) throw LinalgError("solve_saddle: border has wrong height");
  const auto np = P.rows();
  const auto nc = C.rows();
  const auto nw = W.cols();

  std::vector<Triplet> trips;
  trips.reserve(P.nonZeros() + 2 * C.nonZeros() + 2 * W.size());
  for (int k = 0; k < P.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(P, k); it; ++it) trips.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < C.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(C, k); it; ++it) {
      trips.emplace_back(np + nw + it.row(), it.col(), it.value());
      trips.emplace_back(it.col(), np + nw + it.row(), it.value());
    }
  for (Eigen::Index j = 0; j < nw; ++j)
    for (Eigen::Index i = 0; i < nc; ++i) {
      if (W(i, j) == 0.0) continue;
      trips.emplace_back(np + nw + i, np + j, W(i, j));
      trips.emplace_back(np + j, np + nw + i, W(i, j));
    }
  K_.resize(np + nw + nc, np + nw + nc);
  K_.setFromTriplets(trips.begin(), trips.end());
  K_.makeCompressed();

  impl_->lu.analyzePattern(K_);
  impl_->lu.factorize(K_);
  if (impl_->lu.info() != Eigen::Success) throw LinalgError("solve_saddle: singular factorization");
}

SaddlePointSolver::~SaddlePointSolver() = default;
SaddlePointSolver::SaddlePointSolver(SaddlePointSolver&&) noexcept = default;
SaddlePointSolver& SaddlePointSolver::operator=(SaddlePointSolver&&) noexcept = default;

Matrix SaddlePointSolver::solve_once(const Matrix& rhs) const {
  Matrix X = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success) throw LinalgError("solve_saddle: back substitution failed");
  return X;
}

Matrix SaddlePointSolver::solve(const Matrix& rhs) const {
  if (rhs.rows() != K_.rows()) throw LinalgError("solve_saddle: right-hand side has wrong number of rows");
  Matrix X = solve_once(rhs);
  Matrix R = rhs - K_ * X;
  X += solve_once(R);
  R = rhs - K_ * X;
  for (Eigen::Index j = 0; j < rhs.cols(); ++j) {
    const double scale = std::max(rhs.col(j).norm(), (K_ * X.col(j)).norm());
    if (scale > 0.0 && R.col(j).norm() > 1e-10 * scale)
      throw LinalgError("solve_saddle: relative residual " + std::to_string(R.col(j).norm() / scale) +
                        " exceeds 1e-10 (column " + std::to_string(j) + ")");
  }
  return X;
}

Vector SaddlePointSolver::solve(const Vector& rhs) const {
  Matrix X = solve(Matrix(rhs));
  return X.col(0);
}

Vector solve_saddle(const SparseMatrix& P, const SparseMatrix& C, const Vector& rhs) {
  return SaddlePointSolver(P, C).solve(rhs);
}

// ---------------------------------------------------------------------------
// Generalized eigenproblems

std::vector<int> degenerate_groups(const Vector& values, double rel_tol) {
  std::vector<int> group(values.size());
  int id = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) {
      const double scale = std::max(std::abs(values[i]), std::abs(values[i - 1]));
      if (std::abs(values[i] - values[i - 1]) > rel_tol * scale) ++id;
    }
    group[i] = id;
  }
  return group;
}

namespace {

struct DensePencil {
  Vector values;  // ascending
  Matrix vectors;
};

// Finite spectrum of a dense symmetric pencil with B positive semidefinite.
DensePencil dense_finite_spectrum(const Matrix& A, const Matrix& B) {
  Eigen::SelfAdjointEigenSolver<Matrix> beig(B, Eigen::EigenvaluesOnly);
  const double bmax = beig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(bmax > 0.0)) return {};
  const double bmin = beig.eigenvalues().minCoeff();
  if (bmin < -1e-10 * bmax) throw LinalgError("general_sym_eig: B is indefinite");

  DensePencil out;
  if (bmin > 1e-10 * bmax) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(A, B);
    if (ges.info() != Eigen::Success) throw LinalgError("general_sym_eig: dense solver failed");
    out.values = ges.eigenvalues();
    out.vectors = ges.eigenvectors();
    return out;
  }

  // Semidefinite B: work with μ = 1/λ in B v = μ A v, A = L Lᵀ.
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw LinalgError("general_sym_eig: A must be positive definite when B is singular");
  const Matrix Linv = llt.matrixL().solve(Matrix::Identity(A.rows(), A.cols()));
  Matrix C = Linv * B * Linv.transpose();
  C = 0.5 * (C + C.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> ceig(C);
  const Vector& mu = ceig.eigenvalues();
  const double mumax = mu.maxCoeff();
  std::vector<int> keep;
  for (Eigen::Index i = mu.size() - 1; i >= 0; --i)
    if (mu[i] > 1e-10 * mumax) keep.push_back(static_cast<int>(i));
  out.values.resize(keep.size());
  out.vectors.resize(A.rows(), keep.size());
  const auto LT = llt.matrixU();
  for (std::size_t j = 0; j < keep.size(); ++j) {
    const double m = mu[keep[j]];
    out.values[j] = 1.0 / m;
    // vᵀ A v = 1 and vᵀ B v = μ, so rescale to unit B-norm.
    out.vectors.col(j) = LT.solve(ceig.eigenvectors().col(keep[j])) / std::sqrt(m);
  }
  return out;
}

SparseMatrix extract(const SparseMatrix& A, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> rmap(A.rows(), -1), cmap(A.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) rmap[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) cmap[cols[j]] = static_cast<int>(j);
  std::vector<Triplet> trips;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
      if (rmap[it.row()] >= 0 && cmap[it.col()] >= 0) trips.emplace_back(rmap[it.row()], cmap[it.col()], it.value());
  SparseMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace

EigenResult general_sym_eig(const SparseMatrix& A, const SparseMatrix& B, int k, Which which) {
  const auto N = A.rows();
  if (A.cols() != N || B.rows() != N || B.cols() != N) throw LinalgError("general_sym_eig: dimension mismatch");
  if (k < 1) throw LinalgError("general_sym_eig: k must be positive");
  const double anorm = std::max(A.norm(), 1e-300);
  if (SparseMatrix(A - SparseMatrix(A.transpose())).norm() > 1e-12 * anorm)
    throw LinalgError("general_sym_eig: A is not symmetric");
  if (SparseMatrix(B - SparseMatrix(B.transpose())).norm() > 1e-12 * std::max(B.norm(), 1e-300))
    throw LinalgError("general_sym_eig: B is not symmetric");

  // Support of B: DOFs that B touches. The rest are eliminated exactly.
  std::vector<char> touched(N, 0);
  for (int c = 0; c < B.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(B, c); it; ++it)
      if (it.value() != 0.0) touched[it.row()] = touched[it.col()] = 1;
  std::vector<int> bdofs, idofs;
  for (Eigen::Index i = 0; i < N; ++i) (touched[i] ? bdofs : idofs).push_back(static_cast<int>(i));

  Matrix Ared = Matrix(extract(A, bdofs, bdofs));
  const Matrix Bred = Matrix(extract(B, bdofs, bdofs));
  Matrix interior_map;  // v_I = interior_map * v_b
  if (!idofs.empty() && !bdofs.empty()) {
    SpdSolver AII(extract(A, idofs, idofs));
    const SparseMatrix AIb = extract(A, idofs, bdofs);
    interior_map = -AII.solve(Matrix(AIb));
    Ared += Matrix(AIb.transpose()) * interior_map;
    Ared = 0.5 * (Ared + Ared.transpose()).eval();
  }

  DensePencil pencil = dense_finite_spectrum(Ared, Bred);
  EigenResult res;
  res.n_finite = static_cast<int>(pencil.values.size());
  if (k > res.n_finite)
    throw LinalgError("general_sym_eig: requested " + std::to_string(k) + " eigenvalues but the pencil has only " +
                      std::to_string(res.n_finite) + " finite eigenvalues");

  std::vector<int> order(pencil.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pencil.values[a] < pencil.values[b]; });
  if (which == Which::largest) std::reverse(order.begin(), order.end());

  res.values.resize(k);
  res.vectors.resize(N, k);
  for (int j = 0; j < k; ++j) {
    const int src = order[j];
    res.values[j] = pencil.values[src];
    Vector vb = pencil.vectors.col(src);
    Eigen::Index imax = 0;
    vb.cwiseAbs().maxCoeff(&imax);
    if (vb[imax] < 0.0) vb = -vb;
    Vector v = Vector::Zero(N);
    for (std::size_t i = 0; i < bdofs.size(); ++i) v[bdofs[i]] = vb[i];
    if (interior_map.size() > 0) {
      const Vector vi = interior_map * vb;
      for (std::size_t i = 0; i < idofs.size(); ++i) v[idofs[i]] = vi[i];
    }
    res.vectors.col(j) = v;
  }
  res.group = degenerate_groups(res.values);
  return res;
}

EigenResult general_sym_eig(const Matrix& A, const Matrix& B, int k, Which which) {
  return general_sym_eig(SparseMatrix(A.sparseView(0.0, 0.0)), SparseMatrix(B.sparseView(0.0, 0.0)), k, which);
}

}  // namespace steklov
