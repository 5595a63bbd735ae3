#include "tave/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tave/parameter_select.hpp"
#include "tave/problem_gen.hpp"

namespace tave::bench {

namespace {

bool is_hss_method(Method m) {
  return m == Method::picard_hss || m == Method::hss_like;
}

bool is_gn_method(Method m) {
  return m == Method::gn_gmres || m == Method::gn_tfqmr;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_key(ExperimentSpec& spec, const std::string& key,
               const std::string& value);

CVec parse_complex_array(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array())
    throw std::invalid_argument("custom problem: " + what + " must be an array");
  CVec out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw std::invalid_argument("custom problem: entries of " + what +
                                  " must be numbers or [re, im] pairs");
    }
  }
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::example1: return "example1";
    case Family::example2: return "example2";
    case Family::custom: return "custom";
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : {Family::example1, Family::example2, Family::custom})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

void validate(const ExperimentSpec& spec) {
  if (spec.methods.empty())
    throw std::invalid_argument("experiment: methods list must be non-empty");
  if (spec.family != Family::custom && spec.sizes.empty())
    throw std::invalid_argument("experiment: sizes list must be non-empty");
  if (spec.family == Family::custom && spec.custom_path.empty())
    throw std::invalid_argument("experiment: custom family needs a file path");
  if (spec.sigma && !(*spec.sigma > 0.0))
    throw std::invalid_argument("experiment: explicit sigma must be positive");
  SolverConfig cfg;
  cfg.outer_tol = spec.outer_tol;
  cfg.outer_maxit = spec.outer_maxit;
  cfg.inner_tol = spec.inner_tol;
  cfg.inner_maxit = spec.inner_maxit;
  cfg.gmres_restart = spec.gmres_restart;
  cfg.inner_krylov_tol = spec.inner_krylov_tol;
  cfg.inner_krylov_maxit = spec.inner_krylov_maxit;
  tave::validate(cfg);
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  validate(spec);

  std::optional<AveProblem> custom;
  if (spec.family == Family::custom) custom = load_custom_problem(spec.custom_path);

  std::vector<std::size_t> sizes = spec.sizes;
  if (spec.family == Family::custom) sizes = {custom->A.n};

  // Auto-selected sigma is shared by every method of the same splitting.
  std::map<std::pair<std::size_t, bool>, double> sigma_cache;

  std::vector<ResultRow> rows;
  for (const std::size_t n : sizes) {
    for (const Method m : spec.methods) {
      ResultRow row;
      row.method = std::string(method_name(m));
      row.n = n;
      try {
        AveProblem problem = [&] {
          switch (spec.family) {
            case Family::example1:
              return make_example1_problem({n, spec.gamma, spec.c, spec.d});
            case Family::example2:
              return make_example2_problem(
                  example2_params(n, spec.alpha, spec.d_plus, spec.d_minus));
            case Family::custom: return *custom;
          }
          throw std::invalid_argument("experiment: unknown family");
        }();

        SolverConfig cfg;
        cfg.method = m;
        cfg.outer_tol = spec.outer_tol;
        cfg.outer_maxit = spec.outer_maxit;
        cfg.inner_tol = spec.inner_tol;
        cfg.inner_maxit = spec.inner_maxit;
        cfg.gmres_restart = spec.gmres_restart;
        cfg.inner_krylov_tol = spec.inner_krylov_tol;
        cfg.inner_krylov_maxit = spec.inner_krylov_maxit;

        if (spec.sigma) {
          cfg.sigma = *spec.sigma;
          row.sigma = *spec.sigma;
        } else if (is_gn_method(m)) {
          row.sigma = 0.0;  // not used by generalized Newton
        } else {
          const auto key = std::make_pair(n, is_hss_method(m));
          auto it = sigma_cache.find(key);
          if (it == sigma_cache.end()) {
            double s;
            if (is_hss_method(m)) {
              s = sigma_hss_opt(problem.A);
            } else {
              const CscsSplit split = cscs_split(problem.A);
              s = sigma_cscs_opt(circulant_spectrum(split.circulant_col),
                                 skew_circulant_spectrum(split.skew_col));
            }
            it = sigma_cache.emplace(key, s).first;
          }
          cfg.sigma = it->second;
          row.sigma = it->second;
        }

        auto [x, report] = solve_ave(problem, cfg);
        row.it_out = report.it_out;
        row.it_inn_mean = report.it_inn_mean;
        row.it_total = report.it_total;
        row.converged = report.converged;
        row.final_residual = report.residual_history.back();
        row.wall_seconds = report.wall_seconds;
        row.report = std::move(report);
      } catch (const std::exception& e) {
        row.error = e.what();
        row.converged = false;
        row.final_residual = std::nan("");
      }
      rows.push_back(std::move(row));
    }
  }

  if (!spec.out_path.empty()) emit_csv(rows, spec.out_path);
  if (!spec.history_dir.empty()) {
    std::filesystem::create_directories(spec.history_dir);
    for (const ResultRow& row : rows) {
      if (!row.error.empty()) continue;
      emit_history(row.report, spec.history_dir + "/" + row.method + "_n" +
                                   std::to_string(row.n) + ".csv");
    }
  }
  return rows;
}

std::string csv_string(const std::vector<ResultRow>& rows) {
  std::string out =
      "method,n,sigma,it_out,it_inn_mean,it_total,converged,final_residual,"
      "wall_seconds\n";
  for (const ResultRow& r : rows) {
    out += r.method;
    out += ',' + std::to_string(r.n);
    out += ',' + fmt6(r.sigma);
    out += ',' + std::to_string(r.it_out);
    out += ',' + fmt6(r.it_inn_mean);
    out += ',' + std::to_string(r.it_total);
    out += r.converged ? ",true" : ",false";
    out += ',' + fmt6(r.final_residual);
    out += ',' + fmt6(r.wall_seconds);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  f << csv_string(rows);
  if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_history(const IterationReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_history: cannot open " + path);
  f << "k,relative_residual\n";
  for (std::size_t k = 0; k < report.residual_history.size(); ++k)
    f << k << ',' << fmt6(report.residual_history[k]) << '\n';
  if (!f) throw std::runtime_error("emit_history: write failed for " + path);
}

AveProblem load_custom_problem(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("custom problem: cannot open " + path);
  nlohmann::json j;
  f >> j;
  const auto n = j.at("n").get<std::size_t>();
  CVec col = parse_complex_array(j.at("first_col"), "first_col");
  CVec row = parse_complex_array(j.at("first_row"), "first_row");
  CVec b = parse_complex_array(j.at("b"), "b");
  if (col.size() != n || row.size() != n || b.size() != n)
    throw std::invalid_argument("custom problem: array lengths must equal n");
  std::optional<CVec> exact;
  if (j.contains("exact_solution"))
    exact = parse_complex_array(j["exact_solution"], "exact_solution");
  return make_ave_problem(toeplitz_new(std::move(col), std::move(row)),
                          std::move(b), std::move(exact));
}

ExperimentSpec load_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  ExperimentSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section header
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);

    try {
      apply_key(spec, key, value);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad value for " + key + " on line " +
                                  std::to_string(lineno));
    }
  }
  return spec;
}

namespace {

void apply_key(ExperimentSpec& spec, const std::string& key,
               const std::string& value) {
    if (key == "family") {
      const auto fam = family_from_name(value);
      if (!fam) throw std::invalid_argument("config: unknown family " + value);
      spec.family = *fam;
    } else if (key == "gamma") {
      spec.gamma = std::stod(value);
    } else if (key == "c") {
      spec.c = std::stod(value);
    } else if (key == "d") {
      spec.d = std::stod(value);
    } else if (key == "alpha") {
      spec.alpha = std::stod(value);
    } else if (key == "dplus") {
      spec.d_plus = std::stod(value);
    } else if (key == "dminus") {
      spec.d_minus = std::stod(value);
    } else if (key == "custom_file") {
      spec.custom_path = value;
    } else if (key == "sizes") {
      spec.sizes.clear();
      for (const std::string& s : split_list(value))
        spec.sizes.push_back(std::stoul(s));
    } else if (key == "methods" || key == "expect_fail") {
      std::vector<Method>& dst =
          key == "methods" ? spec.methods : spec.expect_fail;
      dst.clear();
      for (const std::string& s : split_list(value)) {
        const auto m = method_from_name(s);
        if (!m) throw std::invalid_argument("config: unknown method " + s);
        dst.push_back(*m);
      }
    } else if (key == "sigma") {
      spec.sigma = std::stod(value);
    } else if (key == "outer_tol") {
      spec.outer_tol = std::stod(value);
    } else if (key == "outer_maxit") {
      spec.outer_maxit = std::stoi(value);
    } else if (key == "inner_tol") {
      spec.inner_tol = std::stod(value);
    } else if (key == "inner_maxit") {
      spec.inner_maxit = std::stoi(value);
    } else if (key == "gmres_restart") {
      spec.gmres_restart = std::stoi(value);
    } else if (key == "inner_krylov_tol") {
      spec.inner_krylov_tol = std::stod(value);
    } else if (key == "inner_krylov_maxit") {
      spec.inner_krylov_maxit = std::stoi(value);
    } else if (key == "out") {
      spec.out_path = value;
    } else if (key == "history_dir") {
      spec.history_dir = value;
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
}

}  // namespace

bool all_rows_ok(const ExperimentSpec& spec, const std::vector<ResultRow>& rows) {
  for (const ResultRow& row : rows) {
    if (!row.error.empty()) return false;
    if (row.converged) continue;
    const auto m = method_from_name(row.method);
    const bool expected =
        m && std::find(spec.expect_fail.begin(), spec.expect_fail.end(), *m) !=
                 spec.expect_fail.end();
    if (!expected) return false;
  }
  return true;
}

}  // namespace tave::bench
