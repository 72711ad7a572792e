#include <fstream>
#include <sstream>

#include <json.hpp>

#include "steklov/mesh.hpp"

namespace steklov {

using nlohmann::json;

std::string mesh_to_json(const Mesh& mesh) {
  json doc;
  doc["domain"] = to_string(mesh.domain());
  auto& verts = doc["vertices"] = json::array();
  for (const auto& p : mesh.vertices()) verts.push_back({p.x(), p.y()});
  auto& tris = doc["triangles"] = json::array();
  for (const auto& t : mesh.triangles()) tris.push_back({t[0], t[1], t[2]});
  auto& loop = doc["boundary_edges"] = json::array();
  for (const auto& be : mesh.boundary_edges()) loop.push_back({be.v[0], be.v[1]});
  return doc.dump(1);
}

Mesh mesh_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MeshError(std::string("malformed mesh file: ") + e.what());
  }
  if (!doc.is_object()) throw MeshError("malformed mesh file: top level is not an object");
  for (const char* key : {"vertices", "triangles", "boundary_edges"}) {
    if (!doc.contains(key) || !doc[key].is_array())
      throw MeshError(std::string("malformed mesh file: missing array '") + key + "'");
  }

  std::vector<Vec2> verts;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const auto& v = doc["vertices"][i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw MeshError("malformed mesh file: vertex " + std::to_string(i) + " is not [x, y]");
    verts.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  auto read_indices = [&](const char* key, auto& out, std::size_t arity, const std::string& what) {
    for (std::size_t i = 0; i < doc[key].size(); ++i) {
      const auto& row = doc[key][i];
      if (!row.is_array() || row.size() != arity)
        throw MeshError("malformed mesh file: " + what + " " + std::to_string(i) + " has wrong arity");
      typename std::decay_t<decltype(out)>::value_type item{};
      for (std::size_t j = 0; j < arity; ++j) {
        if (!row[j].is_number_integer())
          throw MeshError("malformed mesh file: " + what + " " + std::to_string(i) + " has a non-integer index");
        item[j] = row[j].get<int>();
      }
      out.push_back(item);
    }
  };
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<int, 2>> loop;
  read_indices("triangles", tris, 3, "triangle");
  read_indices("boundary_edges", loop, 2, "boundary edge");

  Domain domain = Domain::custom;
  if (doc.contains("domain")) {
    try {
      domain = domain_from_string(doc["domain"].get<std::string>());
    } catch (const std::exception& e) {
      throw MeshError(std::string("malformed mesh file: ") + e.what());
    }
  }
  return Mesh(std::move(verts), std::move(tris), std::move(loop), domain);
}

void write_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << mesh_to_json(mesh) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Mesh read_mesh(const std::filesystem::path& path) {
  if (path.empty()) throw std::runtime_error("empty mesh path");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return mesh_from_json(buf.str());
}

}  // namespace steklov
