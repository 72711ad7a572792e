#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/mesh.hpp"

namespace steklov {

/// Reference eigenvalues per domain, used only for the error columns.
struct ReferenceSet {
  std::map<Domain, std::vector<double>> values;
  std::map<Domain, std::string> source;

  [[nodiscard]] const std::vector<double>* find(Domain d) const;
};

/// Built-in values for the two model domains.
ReferenceSet default_references();

/// Reads {"unit_square": {"values": [...], "source": "..."}, "l_shape": {...}}.
/// Unknown domain keys and non-positive values are rejected.
ReferenceSet load_references(const std::filesystem::path& path);
ReferenceSet references_from_json(const std::string& text);

/// Certified bounds on one mesh with one method.
struct LevelReport {
  Method method = Method::conforming;
  Domain domain = Domain::custom;
  int n = 0;            ///< cells per unit length; 0 for meshes read from file
  double h = 0.0;       ///< largest element diameter
  int dof = 0;          ///< dim V^h (conforming) or number of edges (CR)

  // Conforming constants (zero for CR).
  double kappa_bar = 0.0;
  double C_h = 0.0;
  double C_bar_h = 0.0;
  double M_h = 0.0;
  double asymmetry = 0.0;
  // CR constants (zero for conforming).
  double hat_C_h = 0.0;
  double hat_C_bar_h = 0.0;

  std::vector<double> lambda;  ///< λ_{k,h} or λ̂_{k,h}, k = 1..K
  std::vector<double> lower;
  std::vector<int> group;      ///< degenerate-group id per k
  std::vector<double> reference;  ///< empty when no reference is configured
  std::vector<double> error;      ///< |λ_k − lower_k| when a reference is configured

  [[nodiscard]] bool has_reference() const { return !reference.empty(); }
  /// Sum of the per-k errors.
  [[nodiscard]] double total_error() const;
  /// "sqrt2/n", or empty for meshes read from file.
  [[nodiscard]] std::string h_token() const;
};

LevelReport certify_conforming(const Mesh& mesh, int k, int n = 0);
LevelReport certify_cr(const Mesh& mesh, int k, int n = 0);
LevelReport certify(const Mesh& mesh, Method method, int k, int n = 0);

/// Fills `reference` and `error` if the set has at least k values for the domain.
void attach_reference(LevelReport& level, const ReferenceSet& refs);

/// Observed order log(e_i/e_{i+1}) / log(h_i/h_{i+1}) between consecutive levels.
struct RateRow {
  Method method = Method::conforming;
  int n_coarse = 0;
  int n_fine = 0;
  std::vector<double> upper;  ///< order of λ_{k,h} − λ_k (conforming only; empty for CR)
  std::vector<double> lower;  ///< order of λ_k − lower_k
  double total = 0.0;         ///< order of the total error
};

struct ConvergenceReport {
  std::vector<LevelReport> levels;  ///< grouped by method, each by decreasing h
  std::vector<RateRow> rates;       ///< empty without references
};

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Runs every (method, level) pair. Levels are sorted by decreasing h.
ConvergenceReport run_convergence(Domain domain, std::vector<int> levels, int k, const std::vector<Method>& methods,
                                  const ReferenceSet* refs);

/// Number formatting shared by all writers.
std::string format_sig(double value, int digits);

/// One CSV row per (level, degenerate group); a group of multiplicity m is a
/// single row whose error column holds the sum over its m members.
void write_levels_csv(std::ostream& out, const std::vector<LevelReport>& levels);
void write_rates_csv(std::ostream& out, const std::vector<RateRow>& rates);
std::string levels_json(const std::string& command, const ConvergenceReport& report);

}  // namespace steklov
