#pragma once

#include <functional>

#include "tave/dense.hpp"
#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave {

/// Matrix-free linear action x -> A x of a fixed dimension.
struct LinearOperator {
  std::size_t n = 0;
  std::function<void(const cxd* x, cxd* y)> apply;

  CVec operator()(const CVec& x) const;
};

LinearOperator make_operator(const ToeplitzOperator& op);
LinearOperator make_operator(const DenseMatrix& M);

struct LinearSolveReport {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Stationary CSCS iteration for the Toeplitz system A x = b. Each sweep runs
/// the two shifted half-solves; stops on relative residual <= tol or maxit.
/// Throws on non-positive sigma and on divergence (residual above 1e8 times
/// the initial one).
std::pair<CVec, LinearSolveReport> cscs_solve(const ToeplitzMatrix& T,
                                              const CVec& b, double sigma,
                                              double tol, int maxit,
                                              const CVec& x0);

/// Dense iteration matrix M(sigma) = (sI+S)^{-1}(sI-C)(sI+C)^{-1}(sI-S)
/// of the CSCS sweep; diagnostics and tests only.
DenseMatrix iteration_matrix_dense(const ToeplitzMatrix& T, double sigma,
                                   std::size_t cap = kDenseCap);

/// Restarted GMRES(m) with modified Gram-Schmidt (one reorthogonalization
/// pass when orthogonality degrades). maxit caps total Arnoldi steps.
/// Returns the best iterate seen; stagnation is a flag, not an error.
std::pair<CVec, LinearSolveReport> gmres_restarted(const LinearOperator& A,
                                                   const CVec& b, int m,
                                                   double tol, int maxit,
                                                   const CVec& x0);

/// Transpose-free QMR. Breakdown returns the current iterate with
/// converged = false.
std::pair<CVec, LinearSolveReport> tfqmr(const LinearOperator& A, const CVec& b,
                                         double tol, int maxit, const CVec& x0);

}  // namespace tave
