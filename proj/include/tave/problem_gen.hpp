#pragma once

#include "tave/ave_solvers.hpp"
#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave {

/// Complex banded test family: diagonal gamma, first two subdiagonals
/// -1-c*i and -1-d*i, first two superdiagonals c*i and d*i.
struct Example1Params {
  std::size_t n = 0;
  double gamma = 10.0;
  double c = 2.0;
  double d = 3.0;
};

ToeplitzMatrix example1(const Example1Params& params);

/// One implicit-Euler step of a one-dimensional two-sided fractional
/// diffusion discretization: A = I - (tau/h^alpha)(d+ G + d- G^T) with G the
/// shifted Grunwald difference matrix.
struct Example2Params {
  std::size_t n = 0;      // interior grid points
  double alpha = 1.5;     // fractional order, in (1,2)
  double d_plus = 0.5;
  double d_minus = 0.5;
  double tau = 0.0;       // time step
  double h = 0.0;         // grid size
};

/// Params with the benchmark convention tau = h = 1/(n+1).
Example2Params example2_params(std::size_t n, double alpha, double d_plus,
                               double d_minus);

/// Grunwald weights g_0..g_K: g_0 = 1, g_k = (1 - (alpha+1)/k) g_{k-1}.
/// Signs: g_1 = -alpha < 0 and g_k > 0 for k >= 2 when alpha is in (1,2).
RVec grunwald_coeffs(double alpha, std::size_t K);

ToeplitzMatrix fractional_matrix(const Example2Params& params);

/// Minimum real parts of the circulant and skew-circulant spectra of T;
/// both positive means the CSCS parts are positive definite.
std::pair<double, double> cscs_min_real_parts(const ToeplitzMatrix& T);

/// Alternating purely imaginary vector x_k = (-1)^k i, k = 1..n.
CVec exact_solution(std::size_t n);

/// b = scale * (A x* - |x*|); with x0 = 0 the scaled problem has exact
/// solution scale * x*.
CVec rhs_from_solution(const ToeplitzMatrix& A, const CVec& x_star,
                       double scale = 1.0);

/// Ready-to-solve problems with the alternating exact solution attached.
AveProblem make_example1_problem(const Example1Params& params);
AveProblem make_example2_problem(const Example2Params& params);

}  // namespace tave
