#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "steklov/bounds.hpp"
#include "steklov/spectrum.hpp"
#include "test_support.hpp"

using namespace steklov;
using steklov::testing::rel_diff;

TEST(SteklovP1, SquareTableValues) {
  const auto s4 = solve_steklov_p1(generate_uniform_square(4), 3);
  EXPECT_LE(rel_diff(s4.values[0], 0.2404841), 1e-6);
  EXPECT_LE(rel_diff(s4.values[1], 1.527151), 1e-6);
  EXPECT_LE(rel_diff(s4.values[2], 1.527151), 1e-6);
  const auto s32 = solve_steklov_p1(generate_uniform_square(32), 1);
  EXPECT_LE(rel_diff(s32.values[0], 0.2400854), 1e-6);
}

TEST(SteklovP1, LshapeTableValues) {
  const auto s = solve_steklov_p1(generate_uniform_lshape(8), 3);
  EXPECT_LE(rel_diff(s.values[0], 0.3416010), 1e-6);
  EXPECT_LE(rel_diff(s.values[1], 0.6217140), 1e-6);
  EXPECT_LE(rel_diff(s.values[2], 0.9876317), 1e-6);
}

TEST(SteklovP1, SpectrumInvariants) {
  const Mesh m = generate_uniform_lshape(4);
  const auto pencil = assemble_steklov_p1(m);
  const int n0 = static_cast<int>(m.boundary_vertices().size());
  const auto s = solve_steklov_p1(m, n0);
  EXPECT_EQ(s.n_finite, n0);
  EXPECT_EQ(s.dof, m.num_vertices());
  const Matrix A(pencil.A), B(pencil.B);
  const Matrix& V = s.vectors;
  EXPECT_LE((V.transpose() * B * V - Matrix::Identity(n0, n0)).cwiseAbs().maxCoeff(), 1e-10);
  const Matrix AV = V.transpose() * A * V;
  EXPECT_LE((AV - Matrix(s.values.asDiagonal())).cwiseAbs().maxCoeff(), 1e-9 * s.values.maxCoeff());
  EXPECT_GT(s.values.minCoeff(), 0.0);
  EXPECT_THROW((void)solve_steklov_p1(m, n0 + 1), std::invalid_argument);
  EXPECT_THROW((void)solve_steklov_p1(m, 0), std::invalid_argument);
}

TEST(SteklovP1, SignConvention) {
  const auto s = solve_steklov_p1(generate_uniform_square(4), 3);
  const Mesh m = generate_uniform_square(4);
  // the largest-magnitude boundary coefficient is positive (ties allowed)
  for (int j = 0; j < 3; ++j) {
    double hi = -INFINITY, lo = INFINITY;
    for (int v : m.boundary_vertices()) {
      hi = std::max(hi, s.vectors(v, j));
      lo = std::min(lo, s.vectors(v, j));
    }
    EXPECT_GT(hi, 0.0) << "eigenvector " << j;
    EXPECT_GE(hi, -lo - 1e-12) << "eigenvector " << j;
  }
}

TEST(SteklovP1, SquareDegeneracy) {
  for (int n : {2, 4, 8, 16}) {
    const auto s = solve_steklov_p1(generate_uniform_square(n), 3);
    EXPECT_LE(std::abs(s.values[1] - s.values[2]), 1e-9 * s.values[1]) << "n=" << n;
    EXPECT_EQ(s.group[1], s.group[2]);
  }
}

TEST(SteklovP1, UpperBoundsAndConvergenceOrder) {
  const auto ref = *default_reference_eigenvalues(Domain::unit_square);
  std::vector<double> err;
  for (int n : {4, 8, 16, 32}) {
    const auto s = solve_steklov_p1(generate_uniform_square(n), 3);
    for (int k = 0; k < 3; ++k) EXPECT_GE(s.values[k], ref[k]);
    err.push_back(s.values[0] - ref[0]);
  }
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_GE(std::log2(err[i - 1] / err[i]), 1.8);

  const auto lref = *default_reference_eigenvalues(Domain::l_shape);
  for (int n : {2, 4, 8}) {
    const auto s = solve_steklov_p1(generate_uniform_lshape(n), 3);
    for (int k = 0; k < 3; ++k) EXPECT_GE(s.values[k], lref[k]);
  }
}

TEST(SteklovP1, MuLambdaDuality) {
  const Mesh m = generate_uniform_square(4);
  const auto pencil = assemble_steklov_p1(m);
  const int n0 = static_cast<int>(m.boundary_vertices().size());
  const auto s = solve_steklov_p1(m, n0);
  const auto mu = general_sym_eig(pencil.B, pencil.A, n0, Which::largest);
  for (int i = 0; i < n0; ++i) EXPECT_LE(rel_diff(mu.values[i], 1.0 / s.values[i]), 1e-10);
}

TEST(RayleighQuotient, Examples) {
  const Mesh m = generate_uniform_square(4);
  EXPECT_NEAR(rayleigh_quotient(m, Vector::Ones(m.num_vertices())), 4.0, 1e-12);
  const auto s = solve_steklov_p1(m, 1);
  EXPECT_LE(rel_diff(rayleigh_quotient(m, s.vectors.col(0)), 1.0 / 0.2404841), 1e-6);
  Vector interior = Vector::Zero(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v)
    if (!m.is_boundary_vertex(v)) interior[v] = 1.0;
  EXPECT_THROW((void)rayleigh_quotient(m, interior), std::invalid_argument);
}

TEST(SteklovCr, SquareTableValues) {
  const auto s4 = solve_steklov_cr(generate_uniform_square(4), 3);
  EXPECT_LE(rel_diff(s4.values[0], 0.2404829), 1e-6);
  EXPECT_LE(rel_diff(s4.values[1], 1.460229), 1e-6);
  EXPECT_LE(rel_diff(s4.values[2], 1.460229), 1e-6);
  const auto s16 = solve_steklov_cr(generate_uniform_square(16), 1);
  EXPECT_LE(rel_diff(s16.values[0], 0.2401041), 1e-6);
}

TEST(SteklovCr, LshapeTableValues) {
  const auto s = solve_steklov_cr(generate_uniform_lshape(2), 3);
  EXPECT_LE(rel_diff(s.values[0], 0.3425959), 1e-6);
  EXPECT_LE(rel_diff(s.values[1], 0.5829704), 1e-6);
  EXPECT_LE(rel_diff(s.values[2], 0.9608929), 1e-6);
}

TEST(SteklovCr, MidpointBoundaryFormDiffers) {
  // edge-midpoint evaluation of b(u, v) does not reproduce the exact-trace values
  const auto exact = solve_steklov_cr(generate_uniform_square(4), 1);
  const auto mid = solve_steklov_cr(generate_uniform_square(4), 1, CrBoundaryForm::midpoint);
  EXPECT_GT(rel_diff(mid.values[0], exact.values[0]), 1e-5);
}

TEST(SteklovCr, SpectrumInvariants) {
  const Mesh m = generate_uniform_square(4);
  const auto pencil = assemble_steklov_cr(m);
  const auto s = solve_steklov_cr(m, 5);
  EXPECT_EQ(s.dof, m.num_edges());
  // exact edge integration couples each boundary edge to the two other edges
  // of its element: B has rank two per boundary edge
  EXPECT_EQ(s.n_finite, 2 * m.num_boundary_edges());
  Eigen::FullPivLU<Matrix> lu(Matrix(pencil.B));
  lu.setThreshold(1e-12);
  EXPECT_EQ(lu.rank(), s.n_finite);
  const Matrix& V = s.vectors;
  EXPECT_LE((V.transpose() * Matrix(pencil.B) * V - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((V.transpose() * Matrix(pencil.A) * V - Matrix(s.values.asDiagonal())).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW((void)solve_steklov_cr(m, 0), std::invalid_argument);
}
