#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

namespace steklov {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::string edge_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

std::string to_string(Domain d) {
  switch (d) {
    case Domain::unit_square: return "unit_square";
    case Domain::l_shape: return "l_shape";
    case Domain::custom: return "custom";
  }
  return "custom";
}

Domain domain_from_string(const std::string& s) {
  if (s == "unit_square" || s == "square") return Domain::unit_square;
  if (s == "l_shape" || s == "lshape") return Domain::l_shape;
  if (s == "custom") return Domain::custom;
  throw std::invalid_argument("unknown domain '" + s + "'");
}

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
           std::vector<std::array<int, 2>> boundary_loop, Domain domain)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), domain_(domain) {
  const int nv = num_vertices();
  if (triangles_.empty()) throw MeshError("mesh has no triangles");
  for (int v = 0; v < nv; ++v) {
    if (!std::isfinite(vertices_[v].x()) || !std::isfinite(vertices_[v].y()))
      throw MeshError("vertex " + std::to_string(v) + " has non-finite coordinates");
  }
  for (int t = 0; t < num_triangles(); ++t) {
    for (int i : triangles_[t]) {
      if (i < 0 || i >= nv)
        throw MeshError("triangle " + std::to_string(t) + " references vertex " +
                        std::to_string(i) + " out of range");
    }
    const auto [a, b, c] = corners(t);
    if (!(signed_area(a, b, c) > 0.0))
      throw MeshError("triangle " + std::to_string(t) +
                      " has non-positive signed area (not counterclockwise)");
  }
  for (std::size_t k = 0; k < boundary_loop.size(); ++k) {
    for (int i : boundary_loop[k]) {
      if (i < 0 || i >= nv)
        throw MeshError("boundary edge " + std::to_string(k) + " references vertex " +
                        std::to_string(i) + " out of range");
    }
  }
  build_edges();
  validate_boundary(boundary_loop);
}

void Mesh::build_edges() {
  const auto nv = static_cast<long long>(num_vertices());
  std::unordered_map<long long, int> index;
  index.reserve(3 * triangles_.size());
  tri_edges_.assign(triangles_.size(), {-1, -1, -1});
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      int a = tri[(i + 1) % 3];
      int b = tri[(i + 2) % 3];
      if (a == b) throw MeshError("triangle " + std::to_string(t) + " has repeated vertices");
      const int lo = std::min(a, b), hi = std::max(a, b);
      const long long key = lo * nv + hi;
      auto [it, inserted] = index.try_emplace(key, num_edges());
      if (inserted) {
        Edge e;
        e.v = {lo, hi};
        e.tri[0] = t;
        e.local[0] = i;
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.tri[1] >= 0)
          throw MeshError("edge " + edge_str(lo, hi) + " is shared by more than two triangles (triangle " +
                          std::to_string(t) + ")");
        e.tri[1] = t;
        e.local[1] = i;
      }
      tri_edges_[t][i] = it->second;
    }
  }
}

void Mesh::validate_boundary(const std::vector<std::array<int, 2>>& loop) {
  const auto nv = static_cast<long long>(num_vertices());
  std::unordered_map<long long, int> index;
  for (int e = 0; e < num_edges(); ++e) index.emplace(edges_[e].v[0] * nv + edges_[e].v[1], e);

  boundary_vertex_.assign(vertices_.size(), false);
  boundary_.clear();
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const auto [a, b] = loop[k];
    const std::string name = "boundary edge " + std::to_string(k) + " " + edge_str(a, b);
    const int lo = std::min(a, b), hi = std::max(a, b);
    auto it = index.find(lo * nv + hi);
    if (it == index.end()) throw MeshError(name + " is dangling: no triangle has this edge");
    Edge& edge = edges_[it->second];
    if (!edge.on_boundary()) throw MeshError(name + " is an interior edge (two adjacent triangles)");
    if (edge.boundary >= 0) throw MeshError(name + " is listed twice");
    // Domain on the left: a -> b must be a counterclockwise edge of the triangle.
    const auto& tri = triangles_[edge.tri[0]];
    const int i = edge.local[0];
    if (!(tri[(i + 1) % 3] == a && tri[(i + 2) % 3] == b))
      throw MeshError(name + " is not oriented counterclockwise");
    edge.boundary = static_cast<int>(k);
    BoundaryEdge be;
    be.v = {a, b};
    be.triangle = edge.tri[0];
    be.edge = it->second;
    be.sign = (a < b) ? 1 : -1;
    boundary_.push_back(be);
    boundary_vertex_[a] = boundary_vertex_[b] = true;
  }
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].on_boundary() && edges_[e].boundary < 0)
      throw MeshError("edge " + edge_str(edges_[e].v[0], edges_[e].v[1]) + " of triangle " +
                      std::to_string(edges_[e].tri[0]) + " lies on the boundary but is missing from the boundary loop");
  }
  if (boundary_.empty()) throw MeshError("boundary loop is empty");
  for (std::size_t k = 0; k < boundary_.size(); ++k) {
    const auto& next = boundary_[(k + 1) % boundary_.size()];
    if (boundary_[k].v[1] != next.v[0])
      throw MeshError("boundary edge " + std::to_string(k) + " is not followed by a connected edge; loop is not closed");
  }
  // A single closed loop visits every boundary vertex exactly once.
  std::vector<int> seen(vertices_.size(), 0);
  for (std::size_t k = 0; k < boundary_.size(); ++k) {
    if (++seen[boundary_[k].v[0]] > 1)
      throw MeshError("boundary vertex " + std::to_string(boundary_[k].v[0]) +
                      " is visited twice; boundary is not a single loop");
  }
}

std::vector<int> Mesh::boundary_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < num_vertices(); ++v)
    if (boundary_vertex_[v]) out.push_back(v);
  return out;
}

std::array<Vec2, 3> Mesh::corners(int t) const {
  const auto& tri = triangles_.at(t);
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

ElementGeometry Mesh::element_geometry(int t) const {
  const auto p = corners(t);
  ElementGeometry g;
  g.area = signed_area(p[0], p[1], p[2]);
  for (int i = 0; i < 3; ++i) {
    g.edge_length[i] = (p[(i + 2) % 3] - p[(i + 1) % 3]).norm();
    g.height[i] = 2.0 * g.area / g.edge_length[i];
    g.h = std::max(g.h, g.edge_length[i]);
  }
  return g;
}

Vec2 Mesh::outward_normal(int b) const {
  const auto& be = boundary_.at(b);
  const Vec2 t = vertices_[be.v[1]] - vertices_[be.v[0]];
  return Vec2(t.y(), -t.x()).normalized();
}

Vec2 Mesh::edge_normal(int e) const {
  const auto& ed = edges_.at(e);
  const Vec2 t = vertices_[ed.v[1]] - vertices_[ed.v[0]];
  return Vec2(t.y(), -t.x()).normalized();
}

double Mesh::mesh_size() const {
  double h = 0.0;
  for (int t = 0; t < num_triangles(); ++t) h = std::max(h, element_geometry(t).h);
  return h;
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < num_triangles(); ++t) a += element_geometry(t).area;
  return a;
}

double Mesh::perimeter() const {
  double p = 0.0;
  for (const auto& be : boundary_) p += (vertices_[be.v[1]] - vertices_[be.v[0]]).norm();
  return p;
}

int Mesh::locate(const Vec2& p, double tol) const {
  for (int t = 0; t < num_triangles(); ++t) {
    const auto c = corners(t);
    const double area = signed_area(c[0], c[1], c[2]);
    const double l0 = signed_area(p, c[1], c[2]) / area;
    const double l1 = signed_area(c[0], p, c[2]) / area;
    const double l2 = 1.0 - l0 - l1;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return t;
  }
  return -1;
}

ElementGeometry element_geometry(const Mesh& mesh, int t) { return mesh.element_geometry(t); }

namespace {

// Splits a grid cell into two counterclockwise triangles.
void split_cell(std::vector<std::array<int, 3>>& tris, bool forward, int bl, int br, int tl, int tr) {
  if (forward) {
    tris.push_back({bl, br, tr});
    tris.push_back({bl, tr, tl});
  } else {
    tris.push_back({bl, br, tl});
    tris.push_back({br, tr, tl});
  }
}

bool is_forward(DiagonalPattern p, int i, int j) {
  switch (p) {
    case DiagonalPattern::forward: return true;
    case DiagonalPattern::backward: return false;
    case DiagonalPattern::alternating: return (i + j) % 2 == 0;
  }
  return true;
}

}  // namespace

std::string to_string(DiagonalPattern p) {
  switch (p) {
    case DiagonalPattern::forward: return "forward";
    case DiagonalPattern::backward: return "backward";
    case DiagonalPattern::alternating: return "alternating";
  }
  return "forward";
}

DiagonalPattern diagonal_from_string(const std::string& s) {
  if (s == "forward") return DiagonalPattern::forward;
  if (s == "backward") return DiagonalPattern::backward;
  if (s == "alternating") return DiagonalPattern::alternating;
  throw std::invalid_argument("unknown diagonal pattern '" + s + "'");
}

Mesh generate_uniform_square(int n, DiagonalPattern pattern) {
  if (n < 1) throw std::invalid_argument("generate_uniform_square: n must be >= 1");
  const int np = n + 1;
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(np) * np);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  auto id = [np](int i, int j) { return j * np + i; };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      split_cell(tris, is_forward(pattern, i, j), id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));

  std::vector<std::array<int, 2>> loop;
  for (int i = 0; i < n; ++i) loop.push_back({id(i, 0), id(i + 1, 0)});
  for (int j = 0; j < n; ++j) loop.push_back({id(n, j), id(n, j + 1)});
  for (int i = n; i > 0; --i) loop.push_back({id(i, n), id(i - 1, n)});
  for (int j = n; j > 0; --j) loop.push_back({id(0, j), id(0, j - 1)});
  return Mesh(std::move(verts), std::move(tris), std::move(loop), Domain::unit_square);
}

Mesh generate_uniform_lshape(int n, DiagonalPattern pattern) {
  if (n < 1) throw std::invalid_argument("generate_uniform_lshape: n must be >= 1");
  const int np = 2 * n + 1;
  // Grid points of [0,2]^2 except those strictly inside the removed quadrant.
  auto removed = [n](int i, int j) { return i > n && j > n; };
  std::vector<int> index(static_cast<std::size_t>(np) * np, -1);
  std::vector<Vec2> verts;
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) {
      if (removed(i, j)) continue;
      index[j * np + i] = static_cast<int>(verts.size());
      verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  auto id = [&](int i, int j) { return index[j * np + i]; };

  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < 2 * n; ++j)
    for (int i = 0; i < 2 * n; ++i) {
      if (i >= n && j >= n) continue;
      split_cell(tris, is_forward(pattern, i, j), id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
    }

  // (0,0) -> (2,0) -> (2,1) -> (1,1) -> (1,2) -> (0,2) -> (0,0)
  std::vector<std::array<int, 2>> loop;
  for (int i = 0; i < 2 * n; ++i) loop.push_back({id(i, 0), id(i + 1, 0)});
  for (int j = 0; j < n; ++j) loop.push_back({id(2 * n, j), id(2 * n, j + 1)});
  for (int i = 2 * n; i > n; --i) loop.push_back({id(i, n), id(i - 1, n)});
  for (int j = n; j < 2 * n; ++j) loop.push_back({id(n, j), id(n, j + 1)});
  for (int i = n; i > 0; --i) loop.push_back({id(i, 2 * n), id(i - 1, 2 * n)});
  for (int j = 2 * n; j > 0; --j) loop.push_back({id(0, j), id(0, j - 1)});
  return Mesh(std::move(verts), std::move(tris), std::move(loop), Domain::l_shape);
}

Mesh generate_uniform(Domain domain, int n, DiagonalPattern pattern) {
  switch (domain) {
    case Domain::unit_square: return generate_uniform_square(n, pattern);
    case Domain::l_shape: return generate_uniform_lshape(n, pattern);
    case Domain::custom: break;
  }
  throw std::invalid_argument("generate_uniform: no generator for custom domains");
}

}  // namespace steklov
