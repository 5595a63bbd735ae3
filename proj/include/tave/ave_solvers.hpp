#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave {

/// The absolute value equation A x - |x| = b with Toeplitz A.
/// |x| is the componentwise complex modulus.
struct AveProblem {
  ToeplitzMatrix A;
  CVec b;
  std::optional<CVec> exact_solution;
};

/// Validates dimensions and, when an exact solution is supplied, that it
/// satisfies the equation to relative residual 1e-12.
AveProblem make_ave_problem(ToeplitzMatrix A, CVec b,
                            std::optional<CVec> exact_solution = {});

enum class Method {
  picard_cscs,
  picard_cscs_ru,
  cscs_like,
  cscs_like_ru,
  picard_hss,
  hss_like,
  gn_gmres,
  gn_tfqmr,
};

std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

struct SolverConfig {
  double sigma = 1.0;
  double outer_tol = 1e-7;
  int outer_maxit = 200;
  double inner_tol = 0.01;  // eta, inner residual-reduction factor
  int inner_maxit = 15;     // l_k, cap on inner sweeps per outer step
  Method method = Method::cscs_like;
  int gmres_restart = 5;
  double inner_krylov_tol = 0.01;
  int inner_krylov_maxit = 100;
};

/// Throws std::invalid_argument when tolerances or caps are out of range.
void validate(const SolverConfig& cfg);

struct IterationReport {
  int it_out = 0;
  double it_inn_mean = 0.0;
  int it_total = 0;
  std::vector<double> residual_history;  // entry 0 is the initial residual
  bool converged = false;
  double wall_seconds = 0.0;
};

/// |x| componentwise (complex modulus).
RVec abs_vec(const CVec& x);

/// ||A x - |x| - b||_2 / ||b||_2. Throws on zero right-hand side.
double ave_residual(const AveProblem& p, const CVec& x);

/// Called after each outer update with the 1-based outer index and iterate.
using IterateObserver = std::function<void(int outer, const CVec& x)>;

// The four CSCS-based schemes. Outer fixed-point; non-convergence is a
// reported state, never an exception. x0 defaults to the zero vector.
std::pair<CVec, IterationReport> picard_cscs(const AveProblem& p,
                                             const SolverConfig& cfg,
                                             const IterateObserver& obs = {},
                                             const CVec* x0 = nullptr);
std::pair<CVec, IterationReport> picard_cscs_residual_update(
    const AveProblem& p, const SolverConfig& cfg,
    const IterateObserver& obs = {}, const CVec* x0 = nullptr);
std::pair<CVec, IterationReport> cscs_like(const AveProblem& p,
                                           const SolverConfig& cfg,
                                           const IterateObserver& obs = {},
                                           const CVec* x0 = nullptr);
std::pair<CVec, IterationReport> cscs_like_residual_update(
    const AveProblem& p, const SolverConfig& cfg,
    const IterateObserver& obs = {}, const CVec* x0 = nullptr);

// HSS baselines; inner shifted solves use precomputed dense LU factors, so
// the dimension must stay within the dense cap.
std::pair<CVec, IterationReport> picard_hss(const AveProblem& p,
                                            const SolverConfig& cfg,
                                            const IterateObserver& obs = {},
                                            const CVec* x0 = nullptr);
std::pair<CVec, IterationReport> hss_like(const AveProblem& p,
                                          const SolverConfig& cfg,
                                          const IterateObserver& obs = {},
                                          const CVec* x0 = nullptr);

enum class KrylovKind { gmres, tfqmr };

/// Generalized Newton: each outer step solves (A - diag(sign(x))) x = b
/// matrix-free with the chosen Krylov method. sign(z) = z/|z|, 0 when
/// |z| <= 1e-14.
std::pair<CVec, IterationReport> generalized_newton(
    const AveProblem& p, const SolverConfig& cfg, KrylovKind inner,
    const IterateObserver& obs = {}, const CVec* x0 = nullptr);

/// Dispatch on cfg.method.
std::pair<CVec, IterationReport> solve_ave(const AveProblem& p,
                                           const SolverConfig& cfg,
                                           const IterateObserver& obs = {});

}  // namespace tave
