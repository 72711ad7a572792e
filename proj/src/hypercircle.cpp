#include "steklov/hypercircle.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "steklov/quadrature.hpp"

namespace steklov {

HypercircleSolver::HypercircleSolver(const AssembledSystem& sys)
    : sys_(&sys), neumann_(SparseMatrix(sys.S + sys.J)), saddle_(sys.P00, sys.N0, Matrix(sys.w)) {}

NeumannSolution HypercircleSolver::solve_neumann(const BoundaryField& g) const {
  if (g.size() != sys_->dofs.s) throw std::invalid_argument("solve_neumann_p1: boundary data has wrong length");
  return {neumann_.solve(Vector(sys_->D * g))};
}

FluxSolution HypercircleSolver::solve_flux(const BoundaryField& g, const NeumannSolution& u) const {
  const auto& sys = *sys_;
  const int ph = sys.dofs.p_interior, m = sys.dofs.m;
  if (g.size() != sys.dofs.s || u.y.size() != sys.dofs.n)
    throw std::invalid_argument("solve_mixed_flux: dimension mismatch");

  // Problem (b) is solvable with c = 0 only if ∫ũ_h = ∫_Γ f_h.
  const double lhs = (sys.L * u.y).sum();
  const double rhs = Vector::Ones(sys.dofs.s).dot(sys.G * g);
  const double scale = (sys.J * u.y).cwiseAbs().sum() + (sys.G * g).cwiseAbs().sum();
  if (std::abs(lhs - rhs) > 1e-9 * scale)
    throw std::invalid_argument("solve_mixed_flux: incompatible data, ∫ũ_h − ∫_Γ f_h = " + std::to_string(lhs - rhs));

  const Vector xb = sys.trace_map * g;
  Vector b = Vector::Zero(ph + 1 + m);
  b.head(ph) = -(sys.P0b * xb);
  b.tail(m) = sys.L * u.y - sys.Nb * xb;
  const Vector sol = saddle_.solve(b);

  FluxSolution out;
  out.x.resize(sys.dofs.rt_total());
  out.x.head(ph) = sol.head(ph);
  out.x.tail(sys.dofs.p_boundary) = xb;
  out.c = sol[ph];
  out.z = sol.tail(m);
  return out;
}

void HypercircleSolver::solve_batch(const Matrix& Gdata, Matrix& Y, Matrix& X, Vector& c, Matrix* Z) const {
  const auto& sys = *sys_;
  const int ph = sys.dofs.p_interior, pb = sys.dofs.p_boundary, m = sys.dofs.m;
  const auto cols = Gdata.cols();
  Y = neumann_.solve(Matrix(sys.D * Gdata));
  const Matrix Xb = sys.trace_map * Gdata;
  Matrix rhs = Matrix::Zero(ph + 1 + m, cols);
  rhs.topRows(ph) = -(sys.P0b * Xb);
  rhs.bottomRows(m) = sys.L * Y - sys.Nb * Xb;
  const Matrix sol = saddle_.solve(rhs);
  X.resize(ph + pb, cols);
  X.topRows(ph) = sol.topRows(ph);
  X.bottomRows(pb) = Xb;
  c = sol.row(ph).transpose();
  if (Z) *Z = sol.bottomRows(m);
}

NeumannSolution solve_neumann_p1(const AssembledSystem& sys, const BoundaryField& g) {
  if (g.size() != sys.dofs.s) throw std::invalid_argument("solve_neumann_p1: boundary data has wrong length");
  return {solve_spd(SparseMatrix(sys.S + sys.J), Matrix(sys.D * g)).col(0)};
}

FluxSolution solve_mixed_flux(const AssembledSystem& sys, const BoundaryField& g, const NeumannSolution& u) {
  return HypercircleSolver(sys).solve_flux(g, u);
}

double error_quantity_direct(const Mesh& mesh, const NeumannSolution& u, const FluxSolution& flux) {
  RaviartThomasSpace space(mesh);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto grads = barycentric_gradients(mesh, t);
    const Vec2 grad_u = grads * Eigen::Vector3d(u.y[tri[0]], u.y[tri[1]], u.y[tri[2]]);
    const auto p = mesh.corners(t);
    const double area = mesh.element_geometry(t).area;
    for (const auto& q : triangle_rule_degree4()) {
      const Vec2 diff = grad_u - space.evaluate(t, bary_to_point(p, q.bary), flux.x);
      sum += q.weight * area * diff.squaredNorm();
    }
  }
  return std::sqrt(sum);
}

double error_quantity_closed_form(const AssembledSystem& sys, const BoundaryField& g, const NeumannSolution& u,
                                  const FluxSolution& flux) {
  const Vector Ju = sys.J * u.y;
  const double value = -u.y.dot(sys.D * g) + u.y.dot(Ju) - 2.0 * flux.c * Ju.sum() + flux.x.dot(sys.Q * flux.x);
  const double scale = std::abs(u.y.dot(sys.D * g)) + u.y.dot(Ju) + flux.x.dot(sys.Q * flux.x);
  if (value < -1e-12 * std::max(scale, 1.0))
    throw std::runtime_error("error_quantity: closed form is negative (" + std::to_string(value) +
                             "); assembled matrices are inconsistent");
  return std::sqrt(std::max(value, 0.0));
}

ErrorQuantity error_quantity(const Mesh& mesh, const AssembledSystem& sys, const BoundaryField& g,
                             const NeumannSolution& u, const FluxSolution& flux) {
  return {error_quantity_direct(mesh, u, flux), error_quantity_closed_form(sys, g, u, flux)};
}

Vector divergence_coefficients(const Mesh& mesh, const FluxSolution& flux) {
  RaviartThomasSpace space(mesh);
  Vector out(3 * mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto p = mesh.corners(t);
    for (int i = 0; i < 3; ++i) out[3 * t + i] = space.divergence(t, p[i], flux.x);
  }
  return out;
}

KappaResult compute_kappa_bar(const AssembledSystem& sys) {
  const int s = sys.dofs.s;
  HypercircleSolver solver(sys);
  Matrix Y, X;
  Vector c;
  solver.solve_batch(Matrix::Identity(s, s), Y, X, c);

  KappaResult out;
  out.max_abs_c = c.cwiseAbs().maxCoeff();
  const Matrix QX = sys.Q * X;
  Matrix B = -(Matrix(sys.D.transpose()) * Y) + Y.transpose() * (sys.J * Y) + X.transpose() * QX;
  const double bnorm = B.norm();
  out.asymmetry = bnorm > 0.0 ? (B - B.transpose()).norm() / bnorm : 0.0;
  if (out.asymmetry > 1e-10)
    throw LinalgError("compute_kappa_bar: quadratic form asymmetry " + std::to_string(out.asymmetry) + " exceeds 1e-10");
  out.B = 0.5 * (B + B.transpose());

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(out.B, Matrix(sys.G));
  if (ges.info() != Eigen::Success) throw LinalgError("compute_kappa_bar: eigensolver failed");
  const Eigen::Index last = s - 1;
  out.kappa_bar = std::sqrt(std::max(ges.eigenvalues()[last], 0.0));
  out.maximizer = ges.eigenvectors().col(last);
  return out;
}

}  // namespace steklov
