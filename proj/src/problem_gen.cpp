#include "tave/problem_gen.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "tave/circulant.hpp"
#include "tave/kernels.hpp"

namespace tave {

ToeplitzMatrix example1(const Example1Params& params) {
  if (params.n < 3)
    throw std::invalid_argument("example1: n must be at least 3");
  if (!(params.gamma > 0.0))
    throw std::invalid_argument("example1: gamma must be positive");
  CVec col(params.n, cxd(0.0)), row(params.n, cxd(0.0));
  col[0] = params.gamma;
  row[0] = params.gamma;
  col[1] = cxd(-1.0, -params.c);
  col[2] = cxd(-1.0, -params.d);
  row[1] = cxd(0.0, params.c);
  row[2] = cxd(0.0, params.d);
  return toeplitz_new(std::move(col), std::move(row));
}

Example2Params example2_params(std::size_t n, double alpha, double d_plus,
                               double d_minus) {
  Example2Params p;
  p.n = n;
  p.alpha = alpha;
  p.d_plus = d_plus;
  p.d_minus = d_minus;
  p.tau = 1.0 / static_cast<double>(n + 1);
  p.h = p.tau;
  return p;
}

RVec grunwald_coeffs(double alpha, std::size_t K) {
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::invalid_argument("grunwald_coeffs: alpha must lie in (1,2)");
  RVec g(K + 1);
  g[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k)
    g[k] = (1.0 - (alpha + 1.0) / static_cast<double>(k)) * g[k - 1];
  return g;
}

ToeplitzMatrix fractional_matrix(const Example2Params& params) {
  const std::size_t n = params.n;
  if (n < 1) throw std::invalid_argument("fractional_matrix: n must be >= 1");
  if (!(params.alpha > 1.0) || !(params.alpha < 2.0))
    throw std::invalid_argument("fractional_matrix: alpha must lie in (1,2)");
  if (params.d_plus < 0.0 || params.d_minus < 0.0)
    throw std::invalid_argument(
        "fractional_matrix: diffusion coefficients must be nonnegative");
  if (!(params.tau > 0.0) || !(params.h > 0.0))
    throw std::invalid_argument("fractional_matrix: tau and h must be positive");

  const double nu = params.tau / std::pow(params.h, params.alpha);
  const RVec g = grunwald_coeffs(params.alpha, n);

  // G has first column (g_1 .. g_n) and first row (g_1, g_0, 0, ...).
  CVec col(n, cxd(0.0)), row(n, cxd(0.0));
  col[0] = 1.0 - nu * (params.d_plus + params.d_minus) * g[1];
  row[0] = col[0];
  for (std::size_t k = 1; k < n; ++k) {
    const double g_col = g[k + 1];              // column k of G
    const double g_row = k == 1 ? g[0] : 0.0;   // row entry of G
    col[k] = -nu * (params.d_plus * g_col + params.d_minus * g_row);
    row[k] = -nu * (params.d_plus * g_row + params.d_minus * g_col);
  }
  ToeplitzMatrix T = toeplitz_new(std::move(col), std::move(row));

  const auto [min_c, min_s] = cscs_min_real_parts(T);
  if (min_c <= 0.0 || min_s <= 0.0)
    std::cerr << "tave: warning: fractional matrix CSCS parts not positive "
              << "definite (min Re = " << min_c << ", " << min_s << ")\n";
  return T;
}

std::pair<double, double> cscs_min_real_parts(const ToeplitzMatrix& T) {
  const CscsSplit split = cscs_split(T);
  return {min_real(circulant_spectrum(split.circulant_col).lambdas),
          min_real(skew_circulant_spectrum(split.skew_col).lambdas)};
}

CVec exact_solution(std::size_t n) {
  if (n < 1) throw std::invalid_argument("exact_solution: n must be >= 1");
  CVec x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = (j + 1) % 2 == 0 ? cxd(0.0, 1.0) : cxd(0.0, -1.0);
  return x;
}

CVec rhs_from_solution(const ToeplitzMatrix& A, const CVec& x_star,
                       double scale) {
  if (x_star.size() != A.n)
    throw std::invalid_argument("rhs_from_solution: dimension mismatch");
  if (!(scale > 0.0))
    throw std::invalid_argument("rhs_from_solution: scale must be positive");
  const std::size_t n = A.n;
  CVec ax = toeplitz_matvec(A, x_star);
  CVec b(n);
  for (std::size_t j = 0; j < n; ++j)
    b[j] = scale * (ax[j] - std::abs(x_star[j]));
  return b;
}

AveProblem make_example1_problem(const Example1Params& params) {
  ToeplitzMatrix A = example1(params);
  CVec x_star = exact_solution(params.n);
  CVec b = rhs_from_solution(A, x_star);
  return make_ave_problem(std::move(A), std::move(b), std::move(x_star));
}

AveProblem make_example2_problem(const Example2Params& params) {
  ToeplitzMatrix A = fractional_matrix(params);
  CVec x_star = exact_solution(params.n);
  const double scale = std::pow(params.h, params.alpha);
  CVec b = rhs_from_solution(A, x_star, scale);
  for (cxd& z : x_star) z *= scale;  // the scaled problem's exact solution
  return make_ave_problem(std::move(A), std::move(b), std::move(x_star));
}

}  // namespace tave
