#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "steklov/mesh.hpp"

namespace steklov {

/// Constants of the a priori estimates. Each is already rounded up, so using
/// them as-is keeps the bounds guaranteed.
namespace constants {
inline constexpr double trace = 0.574;             // C(K) = 0.574 sqrt(|e|/|K|) h_K
inline constexpr double trace_height = 0.8118;     // C(K) <= 0.8118 h_K / sqrt(H_K)
inline constexpr double trace_simplified = 0.966;  // C_h <= 0.966 sqrt(h_K) on uniform meshes
inline constexpr double cr_trace = 0.6711;
inline constexpr double cr_projection = 0.1893;
inline constexpr double cr_simplified = 0.7981;
}  // namespace constants

class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Method { conforming, crouzeix_raviart };
std::string to_string(Method m);

/// Constant C(K) of the trace inequality ‖v‖_{L²(e)} <= C(K)|v|_{H¹(K)} for
/// v with zero mean on local edge `edge` of K.
double trace_constant(const ElementGeometry& geom, int edge);
/// The equivalent 0.8118 h_K / sqrt(H_K) form.
double trace_constant_height_form(const ElementGeometry& geom, int edge);

/// Maximum of C(K) over all (boundary element, boundary edge) pairs.
double c_h(const Mesh& mesh);
/// 0.966 sqrt(h_K), maximized over boundary elements.
double c_bar_h(const Mesh& mesh);
/// Largest h_K / sqrt(H_K) over boundary edges (H_K taken w.r.t. that edge).
double max_boundary_ratio(const Mesh& mesh);

double m_h(double C_h, double kappa_bar);

/// λ_{k,h} / (1 + M_h² λ_{k,h}).
double lower_bound_conforming(double lambda_kh, double M_h);

struct CrConstant {
  double hat_C_h = 0.0;
  double hat_C_bar_h = 0.0;
};

CrConstant cr_constant(const Mesh& mesh, double lambda_hat_1h);

/// λ̂_{k,h} / (1 + Ĉ_h² λ̂_{k,h}).
double lower_bound_cr(double lambda_hat_kh, double hat_C_h);

/// Reference eigenvalues of the two model domains: high-precision values for
/// the square, and cubic conforming elements at h = sqrt(2)/256 for the L-shape.
std::optional<std::vector<double>> default_reference_eigenvalues(Domain domain);

}  // namespace steklov
