#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace steklov {

using Vec2 = Eigen::Vector2d;

enum class Domain { unit_square, l_shape, custom };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

/// Raised when mesh data violates a structural invariant. The message names
/// the offending entity (e.g. "triangle 12").
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unique edge of the triangulation. Vertices are stored with v[0] < v[1];
/// the global normal is the tangent v[0]->v[1] rotated clockwise.
struct Edge {
  std::array<int, 2> v{};
  std::array<int, 2> tri{-1, -1};    ///< adjacent triangles, tri[1] = -1 on the boundary
  std::array<int, 2> local{-1, -1};  ///< local edge index within tri[0], tri[1]
  int boundary = -1;                 ///< index into boundary_edges(), or -1

  [[nodiscard]] bool on_boundary() const { return tri[1] < 0; }
};

/// Edge of the boundary loop, oriented so the domain lies to its left.
struct BoundaryEdge {
  std::array<int, 2> v{};
  int triangle = -1;
  int edge = -1;  ///< global edge index
  /// +1 if the global edge normal is the outward normal, -1 otherwise.
  int sign = 1;
};

/// Per-element geometry. Local edge i is opposite local vertex i.
struct ElementGeometry {
  double area = 0.0;
  double h = 0.0;  ///< longest edge length h_K
  std::array<double, 3> edge_length{};
  std::array<double, 3> height{};  ///< height of K with respect to local edge i
};

/// Immutable planar triangulation with counterclockwise triangles and a single
/// closed counterclockwise boundary loop. The constructor validates every
/// invariant and derives the edge table.
class Mesh {
 public:
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
       std::vector<std::array<int, 2>> boundary_loop, Domain domain = Domain::custom);

  [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_; }
  [[nodiscard]] Domain domain() const { return domain_; }

  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertices_.size()); }
  [[nodiscard]] int num_triangles() const { return static_cast<int>(triangles_.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] int num_boundary_edges() const { return static_cast<int>(boundary_.size()); }
  [[nodiscard]] int num_interior_edges() const { return num_edges() - num_boundary_edges(); }

  /// Global edge indices of triangle t; entry i is the edge opposite vertex i.
  [[nodiscard]] const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_.at(t); }
  [[nodiscard]] bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  /// Boundary vertices in increasing index order.
  [[nodiscard]] std::vector<int> boundary_vertices() const;

  [[nodiscard]] std::array<Vec2, 3> corners(int t) const;
  [[nodiscard]] ElementGeometry element_geometry(int t) const;
  /// Outward unit normal of boundary edge b.
  [[nodiscard]] Vec2 outward_normal(int b) const;
  /// Unit normal of edge e in its global orientation.
  [[nodiscard]] Vec2 edge_normal(int e) const;

  /// Largest h_K over all elements.
  [[nodiscard]] double mesh_size() const;
  [[nodiscard]] double total_area() const;
  [[nodiscard]] double perimeter() const;

  /// Index of a triangle containing p (closed), or -1.
  [[nodiscard]] int locate(const Vec2& p, double tol = 1e-12) const;

 private:
  void build_edges();
  void validate_boundary(const std::vector<std::array<int, 2>>& loop);

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<BoundaryEdge> boundary_;
  std::vector<bool> boundary_vertex_;
  Domain domain_;
};

/// How each grid cell of a uniform mesh is split into two triangles. The
/// checkerboard pattern is the default: it keeps the full symmetry of the
/// square, so symmetric eigenvalue pairs stay exactly degenerate.
enum class DiagonalPattern {
  forward,      ///< every cell along the lower-left to upper-right diagonal
  backward,     ///< every cell along the upper-left to lower-right diagonal
  alternating,  ///< checkerboard: forward where i + j is even ("union jack")
};

std::string to_string(DiagonalPattern p);
DiagonalPattern diagonal_from_string(const std::string& s);

/// Uniform mesh of (0,1)^2 with n cells per side.
Mesh generate_uniform_square(int n, DiagonalPattern pattern = DiagonalPattern::alternating);

/// Uniform mesh of (0,2)^2 \ [1,2]^2 with n cells per unit length.
Mesh generate_uniform_lshape(int n, DiagonalPattern pattern = DiagonalPattern::alternating);

Mesh generate_uniform(Domain domain, int n, DiagonalPattern pattern = DiagonalPattern::alternating);

ElementGeometry element_geometry(const Mesh& mesh, int t);

// JSON mesh format: {"vertices": [[x,y],...], "triangles": [[i,j,k],...],
// "boundary_edges": [[a,b],...], "domain": "unit_square"|"l_shape"|"custom"}
std::string mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const std::string& text);
void write_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh read_mesh(const std::filesystem::path& path);

}  // namespace steklov
