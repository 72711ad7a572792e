// steklov-certify: mesh generation, certified Steklov eigenvalue bounds on a
// single mesh, and convergence studies over uniform refinements.
//
// Exit codes: 0 success, 2 usage error, 1 computation or I/O failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steklov/assembly.hpp"
#include "steklov/mesh.hpp"
#include "steklov/report.hpp"

#ifndef STEKLOV_REFERENCE_FILE
#define STEKLOV_REFERENCE_FILE ""
#endif

namespace fs = std::filesystem;
using namespace steklov;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string domain;
  int n = 0;
  std::vector<int> levels;
  int k = 3;
  std::string method = "conforming";
  std::string format = "csv";
  std::string out;
  std::string refs;
  bool no_refs = false;
  std::string mesh;
  bool mesh_given = false;  // --mesh was passed, possibly as an empty string
  std::string dump_dir;
};

Domain parse_domain(const std::string& s) {
  if (s == "square") return Domain::unit_square;
  if (s == "lshape") return Domain::l_shape;
  throw UsageError("--domain must be 'square' or 'lshape'");
}

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "conforming") return {Method::conforming};
  if (s == "cr") return {Method::crouzeix_raviart};
  if (s == "both") return {Method::conforming, Method::crouzeix_raviart};
  throw UsageError("--method must be 'conforming', 'cr' or 'both'");
}

// Shipped reference file, falling back to the built-in values when it has
// been moved away from the build tree.
std::optional<ReferenceSet> references(const Options& opt) {
  if (opt.no_refs) return std::nullopt;
  if (!opt.refs.empty()) return load_references(opt.refs);
  const fs::path shipped = STEKLOV_REFERENCE_FILE;
  if (!shipped.empty() && fs::exists(shipped)) return load_references(shipped);
  return default_references();
}

void emit(const Options& opt, const std::string& text, const std::string& suffix = "") {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  fs::path path = opt.out;
  if (!suffix.empty()) path = path.parent_path() / (path.stem().string() + suffix + path.extension().string());
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  file << text;
  if (!file) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void check_k(const Options& opt, const Mesh& mesh) {
  if (opt.k < 1) throw UsageError("--k must be at least 1");
  const auto n0 = static_cast<int>(mesh.boundary_vertices().size());
  if (opt.k > n0)
    throw UsageError("--k " + std::to_string(opt.k) + " exceeds the " + std::to_string(n0) +
                     " boundary vertices of the mesh");
}

int cmd_mesh(const Options& opt) {
  if (opt.n < 1) throw UsageError("--n must be a positive integer");
  const Mesh mesh = generate_uniform(parse_domain(opt.domain), opt.n);
  emit(opt, mesh_to_json(mesh) + "\n");
  return 0;
}

int cmd_bounds(const Options& opt) {
  const auto methods = parse_methods(opt.method);
  if (opt.format != "csv" && opt.format != "json") throw UsageError("--format must be 'csv' or 'json'");
  const bool from_file = opt.mesh_given;
  if (from_file == !opt.domain.empty())
    throw UsageError("bounds needs either --mesh FILE or --domain with --n");
  std::optional<Mesh> mesh;
  int n = 0;
  if (from_file) {
    if (opt.mesh.empty()) throw std::runtime_error("empty mesh path");
    mesh = read_mesh(opt.mesh);
  } else {
    if (opt.n < 1) throw UsageError("--n must be a positive integer");
    n = opt.n;
    mesh = generate_uniform(parse_domain(opt.domain), n);
  }
  check_k(opt, *mesh);

  if (!opt.dump_dir.empty()) {
    fs::create_directories(opt.dump_dir);
    dump_matrices(assemble_system(*mesh), opt.dump_dir);
  }

  const auto refs = references(opt);
  ConvergenceReport report;
  for (Method m : methods) {
    report.levels.push_back(certify(*mesh, m, opt.k, n));
    if (refs) attach_reference(report.levels.back(), *refs);
  }
  if (opt.format == "json") {
    emit(opt, levels_json("bounds", report));
  } else {
    std::ostringstream csv;
    write_levels_csv(csv, report.levels);
    emit(opt, csv.str());
  }
  return 0;
}

int cmd_convergence(const Options& opt) {
  const auto methods = parse_methods(opt.method);
  if (opt.format != "csv" && opt.format != "json") throw UsageError("--format must be 'csv' or 'json'");
  const Domain domain = parse_domain(opt.domain);
  if (opt.levels.size() < 2) throw UsageError("--levels needs at least two mesh levels");
  for (int n : opt.levels)
    if (n < 1) throw UsageError("--levels entries must be positive integers");
  if (opt.k < 1) throw UsageError("--k must be at least 1");
  int coarsest = opt.levels[0];
  for (int n : opt.levels) coarsest = std::min(coarsest, n);
  check_k(opt, generate_uniform(domain, coarsest));

  const auto refs = references(opt);
  const auto report = run_convergence(domain, opt.levels, opt.k, methods, refs ? &*refs : nullptr);
  if (opt.format == "json") {
    emit(opt, levels_json("convergence", report));
    return 0;
  }
  std::ostringstream levels, rates;
  write_levels_csv(levels, report.levels);
  write_rates_csv(rates, report.rates);
  if (opt.out.empty()) {
    std::cout << levels.str() << "\n" << rates.str();
  } else {
    emit(opt, levels.str());
    emit(opt, rates.str(), "_rates");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guaranteed lower and upper bounds for Steklov eigenvalues", "steklov-certify"};
  app.require_subcommand(1);
  Options opt;

  auto* mesh = app.add_subcommand("mesh", "Write a uniform mesh as JSON");
  mesh->add_option("--domain", opt.domain, "square | lshape")->required();
  mesh->add_option("--n", opt.n, "Cells per unit length")->required();
  mesh->add_option("--out", opt.out, "Output file (default: stdout)");

  auto* bounds = app.add_subcommand("bounds", "Certified bounds on one mesh");
  bounds->add_option("--mesh", opt.mesh, "Mesh file written by 'mesh'");
  bounds->add_option("--domain", opt.domain, "square | lshape (with --n, instead of --mesh)");
  bounds->add_option("--n", opt.n, "Cells per unit length");

  auto* conv = app.add_subcommand("convergence", "Bounds over a sequence of uniform meshes");
  conv->add_option("--domain", opt.domain, "square | lshape")->required();
  conv->add_option("--levels", opt.levels, "Cells per unit length, e.g. 4,8,16")->required()->delimiter(',');

  for (auto* sub : {bounds, conv}) {
    sub->add_option("--k", opt.k, "Number of eigenvalues")->capture_default_str();
    sub->add_option("--method", opt.method, "conforming | cr | both")->capture_default_str();
    sub->add_option("--format", opt.format, "csv | json")->capture_default_str();
    sub->add_option("--out", opt.out, "Output file (default: stdout)");
    sub->add_option("--refs", opt.refs, "Reference eigenvalue file (JSON)");
    sub->add_flag("--no-refs", opt.no_refs, "Omit the error columns");
  }
  bounds->add_option("--dump-matrices", opt.dump_dir, "Write the assembled matrices to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mesh) return cmd_mesh(opt);
    if (*bounds) {
      opt.mesh_given = bounds->count("--mesh") > 0;
      return cmd_bounds(opt);
    }
    return cmd_convergence(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
