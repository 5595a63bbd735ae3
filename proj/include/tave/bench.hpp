#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tave/ave_solvers.hpp"
#include "tave/types.hpp"

namespace tave::bench {

enum class Family { example1, example2, custom };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

/// One benchmark campaign: a problem family, a size sweep and a method list.
/// sigma empty means auto-selection (CSCS bound minimization for CSCS
/// methods, sqrt(lmin*lmax) of the Hermitian part for HSS methods).
struct ExperimentSpec {
  Family family = Family::example1;
  // example1
  double gamma = 10.0;
  double c = 2.0;
  double d = 3.0;
  // example2
  double alpha = 1.2;
  double d_plus = 0.5;
  double d_minus = 0.8;
  // custom
  std::string custom_path;

  std::vector<std::size_t> sizes;
  std::vector<Method> methods;
  std::optional<double> sigma;

  double outer_tol = 1e-7;
  int outer_maxit = 200;
  double inner_tol = 0.01;
  int inner_maxit = 15;
  int gmres_restart = 5;
  double inner_krylov_tol = 0.01;
  int inner_krylov_maxit = 100;

  /// Methods whose non-convergence is expected and not an error.
  std::vector<Method> expect_fail;

  std::string out_path;      // CSV destination; empty = stdout only
  std::string history_dir;   // per-row residual histories; empty = skip
};

/// Throws std::invalid_argument when the experiment violates its invariants.
void validate(const ExperimentSpec& spec);

struct ResultRow {
  std::string method;
  std::size_t n = 0;
  double sigma = 0.0;
  int it_out = 0;
  double it_inn_mean = 0.0;
  int it_total = 0;
  bool converged = false;
  double final_residual = 0.0;
  double wall_seconds = 0.0;
  std::string error;  // non-empty when the row failed to run

  IterationReport report;  // full history, for emit_history
};

/// Runs every (size, method) cell; construction failures become error rows
/// and the run continues. Deterministic apart from wall_seconds.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// CSV with header
/// method,n,sigma,it_out,it_inn_mean,it_total,converged,final_residual,wall_seconds
/// (UTF-8, LF line endings, '.' decimal separator, residuals with 6
/// significant digits).
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::string csv_string(const std::vector<ResultRow>& rows);

/// Per-outer-iteration residual history: header k,relative_residual.
void emit_history(const IterationReport& report, const std::string& path);

/// Load a problem from a JSON file with fields n, first_col, first_row, b
/// and optional exact_solution; complex entries are [re, im] pairs.
AveProblem load_custom_problem(const std::string& path);

/// Flat key = value config file (TOML-style sections allowed and ignored).
/// Unknown keys are an error. Keys match the CLI flag names.
ExperimentSpec load_spec_file(const std::string& path);

/// True when every row either converged, or was expected to fail and ran
/// without error.
bool all_rows_ok(const ExperimentSpec& spec, const std::vector<ResultRow>& rows);

}  // namespace tave::bench
