#include "steklov/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "steklov/hypercircle.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

using nlohmann::json;

namespace {

constexpr int eigen_digits = 7;
constexpr int constant_digits = 4;

const char* domain_key(Domain d) {
  switch (d) {
    case Domain::unit_square: return "unit_square";
    case Domain::l_shape: return "l_shape";
    case Domain::custom: return "custom";
  }
  return "custom";
}

// Value rounded to the printed number of significant digits, so JSON and
// CSV carry the same numbers.
double rounded(double value, int digits) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_sig(value, digits));
}

json number_or_null(double value, int digits) {
  if (!std::isfinite(value)) return nullptr;
  return rounded(value, digits);
}

}  // namespace

const std::vector<double>* ReferenceSet::find(Domain d) const {
  auto it = values.find(d);
  return it == values.end() ? nullptr : &it->second;
}

ReferenceSet default_references() {
  ReferenceSet refs;
  for (Domain d : {Domain::unit_square, Domain::l_shape}) {
    refs.values[d] = *default_reference_eigenvalues(d);
    refs.source[d] = "built-in";
  }
  return refs;
}

ReferenceSet references_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed reference file: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("malformed reference file: top level is not an object");
  ReferenceSet refs;
  for (const auto& [key, entry] : doc.items()) {
    Domain d;
    try {
      d = domain_from_string(key);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("reference file: unknown domain '" + key + "'");
    }
    if (!entry.is_object() || !entry.contains("values") || !entry["values"].is_array())
      throw std::invalid_argument("reference file: entry '" + key + "' has no 'values' array");
    std::vector<double> vals;
    for (const auto& v : entry["values"]) {
      if (!v.is_number() || !(v.get<double>() > 0.0))
        throw std::invalid_argument("reference file: entry '" + key + "' has a non-positive or non-numeric value");
      vals.push_back(v.get<double>());
    }
    if (!std::is_sorted(vals.begin(), vals.end()))
      throw std::invalid_argument("reference file: values for '" + key + "' are not in ascending order");
    refs.values[d] = std::move(vals);
    refs.source[d] = entry.value("source", std::string());
  }
  return refs;
}

ReferenceSet load_references(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return references_from_json(ss.str());
}

double LevelReport::total_error() const {
  double sum = 0.0;
  for (double e : error) sum += e;
  return sum;
}

std::string LevelReport::h_token() const { return n > 0 ? "sqrt2/" + std::to_string(n) : std::string(); }

LevelReport certify_conforming(const Mesh& mesh, int k, int n) {
  LevelReport r;
  r.method = Method::conforming;
  r.domain = mesh.domain();
  r.n = n;
  r.h = mesh.mesh_size();
  r.dof = mesh.num_vertices();

  const auto spectrum = solve_steklov_p1(mesh, k);
  const auto sys = assemble_system(mesh);
  const auto kappa = compute_kappa_bar(sys);
  r.kappa_bar = kappa.kappa_bar;
  r.asymmetry = kappa.asymmetry;
  r.C_h = c_h(mesh);
  r.C_bar_h = c_bar_h(mesh);
  r.M_h = m_h(r.C_h, r.kappa_bar);

  for (int i = 0; i < k; ++i) {
    r.lambda.push_back(spectrum.values[i]);
    r.lower.push_back(lower_bound_conforming(spectrum.values[i], r.M_h));
  }
  r.group = degenerate_groups(spectrum.values.head(k));
  return r;
}

LevelReport certify_cr(const Mesh& mesh, int k, int n) {
  LevelReport r;
  r.method = Method::crouzeix_raviart;
  r.domain = mesh.domain();
  r.n = n;
  r.h = mesh.mesh_size();
  r.dof = mesh.num_edges();

  const auto spectrum = solve_steklov_cr(mesh, k);
  const auto constant = cr_constant(mesh, spectrum.values[0]);
  r.hat_C_h = constant.hat_C_h;
  r.hat_C_bar_h = constant.hat_C_bar_h;
  for (int i = 0; i < k; ++i) {
    r.lambda.push_back(spectrum.values[i]);
    r.lower.push_back(lower_bound_cr(spectrum.values[i], r.hat_C_h));
  }
  r.group = degenerate_groups(spectrum.values.head(k));
  return r;
}

LevelReport certify(const Mesh& mesh, Method method, int k, int n) {
  return method == Method::conforming ? certify_conforming(mesh, k, n) : certify_cr(mesh, k, n);
}

void attach_reference(LevelReport& level, const ReferenceSet& refs) {
  level.reference.clear();
  level.error.clear();
  const auto* vals = refs.find(level.domain);
  const auto k = level.lambda.size();
  if (!vals || vals->size() < k) return;
  level.reference.assign(vals->begin(), vals->begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < k; ++i) level.error.push_back(std::abs(level.reference[i] - level.lower[i]));
}

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > h_fine) || !(h_fine > 0.0))
    return std::numeric_limits<double>::quiet_NaN();
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

ConvergenceReport run_convergence(Domain domain, std::vector<int> levels, int k, const std::vector<Method>& methods,
                                  const ReferenceSet* refs) {
  if (levels.size() < 2) throw std::invalid_argument("convergence study needs at least two levels");
  std::sort(levels.begin(), levels.end());
  if (std::adjacent_find(levels.begin(), levels.end()) != levels.end())
    throw std::invalid_argument("convergence study: levels must be distinct");

  ConvergenceReport report;
  for (Method method : methods) {
    const auto first = report.levels.size();
    for (int n : levels) {
      report.levels.push_back(certify(generate_uniform(domain, n), method, k, n));
      if (refs) attach_reference(report.levels.back(), *refs);
    }
    for (auto i = first; i + 1 < report.levels.size(); ++i) {
      const auto& a = report.levels[i];
      const auto& b = report.levels[i + 1];
      if (!a.has_reference() || !b.has_reference()) continue;
      RateRow row;
      row.method = method;
      row.n_coarse = a.n;
      row.n_fine = b.n;
      for (int j = 0; j < k; ++j) {
        row.upper.push_back(observed_order(std::abs(a.lambda[j] - a.reference[j]),
                                           std::abs(b.lambda[j] - b.reference[j]), a.h, b.h));
        row.lower.push_back(observed_order(a.error[j], b.error[j], a.h, b.h));
      }
      row.total = observed_order(a.total_error(), b.total_error(), a.h, b.h);
      report.rates.push_back(row);
    }
  }
  return report;
}

std::string format_sig(double value, int digits) {
  if (!std::isfinite(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.*g", digits, value);
  std::string s(buf);
  // "%#g" keeps trailing zeros but may leave a bare trailing point.
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void write_levels_csv(std::ostream& out, const std::vector<LevelReport>& levels) {
  out << "method,domain,n,h,h_token,dof,kappa_bar,C_h,C_bar_h,M_h,hat_C_h,hat_C_bar_h,"
         "k,multiplicity,lambda_h,lower,reference,abs_error,total_error\n";
  for (const auto& r : levels) {
    const bool conf = r.method == Method::conforming;
    const auto c = [&](bool show, double v) { return show ? format_sig(v, constant_digits) : std::string(); };
    // Ĉ_h is printed with eigenvalue precision; four digits hide its h-dependence.
    const auto chat = [&](double v) { return conf ? std::string() : format_sig(v, eigen_digits); };
    const std::string head = to_string(r.method) + "," + domain_key(r.domain) + "," + std::to_string(r.n) + "," +
                             format_sig(r.h, eigen_digits) + "," + r.h_token() + "," + std::to_string(r.dof) + "," +
                             c(conf, r.kappa_bar) + "," + c(conf, r.C_h) + "," + c(conf, r.C_bar_h) + "," +
                             c(conf, r.M_h) + "," + chat(r.hat_C_h) + "," + chat(r.hat_C_bar_h);
    const std::string total = r.has_reference() ? format_sig(r.total_error(), eigen_digits) : std::string();
    for (std::size_t i = 0; i < r.lambda.size();) {
      std::size_t j = i;
      double err = 0.0;
      while (j < r.lambda.size() && r.group[j] == r.group[i]) {
        if (r.has_reference()) err += r.error[j];
        ++j;
      }
      out << head << "," << i + 1 << "," << j - i << "," << format_sig(r.lambda[i], eigen_digits) << ","
          << format_sig(r.lower[i], eigen_digits) << ","
          << (r.has_reference() ? format_sig(r.reference[i], eigen_digits) : "") << ","
          << (r.has_reference() ? format_sig(err, eigen_digits) : "") << "," << total << "\n";
      i = j;
    }
  }
}

void write_rates_csv(std::ostream& out, const std::vector<RateRow>& rates) {
  out << "method,n_coarse,n_fine,quantity,k,order\n";
  for (const auto& row : rates) {
    const std::string head =
        to_string(row.method) + "," + std::to_string(row.n_coarse) + "," + std::to_string(row.n_fine) + ",";
    for (std::size_t j = 0; j < row.upper.size(); ++j)
      out << head << "upper," << j + 1 << "," << format_sig(row.upper[j], constant_digits) << "\n";
    for (std::size_t j = 0; j < row.lower.size(); ++j)
      out << head << "lower," << j + 1 << "," << format_sig(row.lower[j], constant_digits) << "\n";
    out << head << "total,," << format_sig(row.total, constant_digits) << "\n";
  }
}

std::string levels_json(const std::string& command, const ConvergenceReport& report) {
  json doc;
  doc["command"] = command;
  auto& levels = doc["levels"] = json::array();
  for (const auto& r : report.levels) {
    json level;
    level["method"] = to_string(r.method);
    level["domain"] = domain_key(r.domain);
    level["n"] = r.n;
    level["h"] = rounded(r.h, eigen_digits);
    level["h_token"] = r.h_token();
    level["dof"] = r.dof;
    json constants;
    if (r.method == Method::conforming) {
      constants["kappa_bar"] = rounded(r.kappa_bar, constant_digits);
      constants["C_h"] = rounded(r.C_h, constant_digits);
      constants["C_bar_h"] = rounded(r.C_bar_h, constant_digits);
      constants["M_h"] = rounded(r.M_h, constant_digits);
    } else {
      // Ĉ_h is printed with eigenvalue precision; four digits hide its h-dependence.
      constants["hat_C_h"] = rounded(r.hat_C_h, eigen_digits);
      constants["hat_C_bar_h"] = rounded(r.hat_C_bar_h, eigen_digits);
    }
    level["constants"] = constants;
    auto& eig = level["eigenvalues"] = json::array();
    for (std::size_t i = 0; i < r.lambda.size(); ++i) {
      json e;
      e["k"] = i + 1;
      e["group"] = r.group[i];
      e["lambda_h"] = rounded(r.lambda[i], eigen_digits);
      e["lower"] = rounded(r.lower[i], eigen_digits);
      if (r.has_reference()) {
        e["reference"] = rounded(r.reference[i], eigen_digits);
        e["abs_error"] = rounded(r.error[i], eigen_digits);
      }
      eig.push_back(e);
    }
    level["total_error"] = r.has_reference() ? json(rounded(r.total_error(), eigen_digits)) : json(nullptr);
    levels.push_back(level);
  }

  auto& rates = doc["rates"] = json::array();
  for (const auto& row : report.rates) {
    json jr;
    jr["method"] = to_string(row.method);
    jr["n_coarse"] = row.n_coarse;
    jr["n_fine"] = row.n_fine;
    jr["upper"] = json::array();
    jr["lower"] = json::array();
    for (double v : row.upper) jr["upper"].push_back(number_or_null(v, constant_digits));
    for (double v : row.lower) jr["lower"].push_back(number_or_null(v, constant_digits));
    jr["total"] = number_or_null(row.total, constant_digits);
    rates.push_back(jr);
  }

  // (DOF, error) series per method for each k and for the total.
  auto& plot = doc["plot"] = json::array();
  std::map<std::string, json> series;
  std::vector<std::string> order;
  for (const auto& r : report.levels) {
    if (!r.has_reference()) continue;
    const auto add = [&](const std::string& name, double err) {
      const std::string key = to_string(r.method) + "/" + name;
      if (!series.count(key)) {
        order.push_back(key);
        series[key] = json{{"method", to_string(r.method)}, {"series", name}, {"points", json::array()}};
      }
      series[key]["points"].push_back(json::array({r.dof, rounded(err, eigen_digits)}));
    };
    for (std::size_t i = 0; i < r.error.size(); ++i) add("k" + std::to_string(i + 1), r.error[i]);
    add("total", r.total_error());
  }
  for (const auto& key : order) plot.push_back(series[key]);
  return doc.dump(2) + "\n";
}

}  // namespace steklov
