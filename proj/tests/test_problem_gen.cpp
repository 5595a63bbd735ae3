#include <doctest.h>

#include <cmath>

#include "support/test_support.hpp"
#include "tave/ave_solvers.hpp"
#include "tave/problem_gen.hpp"

using namespace tave;

TEST_CASE("example1 matrix layout") {
  const ToeplitzMatrix T = example1({5, 10.0, 2.0, 3.0});
  const DenseMatrix A = materialize_dense(T);
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(A(i, i) == cxd(10.0));
  CHECK(A(1, 0) == cxd(-1, -2));
  CHECK(A(2, 0) == cxd(-1, -3));
  CHECK(A(3, 0) == cxd(0.0));
  CHECK(A(0, 1) == cxd(0, 2));
  CHECK(A(0, 2) == cxd(0, 3));
  CHECK(A(0, 3) == cxd(0.0));
  CHECK(A(4, 1) == cxd(0.0));
  CHECK(A(4, 2) == cxd(-1, -3));

  // degenerate band coefficients
  const ToeplitzMatrix T0 = example1({4, 7.5, 0.0, 0.0});
  CHECK(T0.first_col[1] == cxd(-1.0));
  CHECK(T0.first_col[2] == cxd(-1.0));
  CHECK(T0.first_row[1] == cxd(0.0));

  CHECK_THROWS_AS(example1({2, 10.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(example1({8, -1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("grunwald weights: base cases and closed forms") {
  const RVec g = grunwald_coeffs(1.5, 4);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(g[2] == doctest::Approx(1.5 * 0.5 / 2.0).epsilon(1e-14));  // a(a-1)/2
  CHECK(g[2] == doctest::Approx(0.375));
  CHECK_THROWS_AS(grunwald_coeffs(2.5, 4), std::invalid_argument);
  CHECK_THROWS_AS(grunwald_coeffs(1.0, 4), std::invalid_argument);
}

TEST_CASE("grunwald weights: sign pattern and partial sums") {
  for (double alpha : {1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9}) {
    const RVec g = grunwald_coeffs(alpha, 64);
    CHECK(g[1] < 0.0);
    for (std::size_t k = 2; k <= 64; ++k) CHECK(g[k] > 0.0);
    // partial sums approach zero monotonically in magnitude
    double sum = g[0] + g[1];
    double prev = std::abs(sum);
    CHECK(prev > 0.0);
    CHECK(prev < 1.0);
    for (std::size_t k = 2; k <= 64; ++k) {
      sum += g[k];
      CHECK(std::abs(sum) > 0.0);
      CHECK(std::abs(sum) < 1.0);
      CHECK(std::abs(sum) <= prev);
      prev = std::abs(sum);
    }
  }
}

TEST_CASE("fractional matrix against a dense assembly oracle") {
  // zero diffusion: identity
  {
    const ToeplitzMatrix T = fractional_matrix(example2_params(6, 1.5, 0.0, 0.0));
    CHECK(test::max_abs_entry_diff(materialize_dense(T),
                                   DenseMatrix::Identity(6, 6)) == 0.0);
  }
  // dense assembly: A = I - nu (d+ G + d- G^T), G lower Hessenberg from g
  {
    const std::size_t n = 8;
    const Example2Params prm = example2_params(n, 1.4, 0.6, 0.3);
    const ToeplitzMatrix T = fractional_matrix(prm);
    const RVec g = grunwald_coeffs(prm.alpha, n);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) -
                                 static_cast<std::ptrdiff_t>(j) + 1;
        if (k >= 0) G(i, j) = g[static_cast<std::size_t>(k)];
      }
    const double nu = prm.tau / std::pow(prm.h, prm.alpha);
    const Eigen::MatrixXd want = Eigen::MatrixXd::Identity(n, n) -
                                 nu * (prm.d_plus * G +
                                       prm.d_minus * G.transpose());
    CHECK((materialize_dense(T).real() - want).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(materialize_dense(T).imag().cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(fractional_matrix(example2_params(8, 2.5, 0.5, 0.5)),
                  std::invalid_argument);
  Example2Params bad = example2_params(8, 1.5, -0.1, 0.5);
  CHECK_THROWS_AS(fractional_matrix(bad), std::invalid_argument);
}

TEST_CASE("fractional matrices keep positive definite splitting parts") {
  const struct {
    double alpha, dp, dm;
  } combos[] = {{1.2, 0.5, 0.8}, {1.5, 0.6, 0.4}, {1.8, 0.7, 0.3}};
  for (const auto& combo : combos) {
    for (std::size_t n : {128u, 256u}) {
      const ToeplitzMatrix T =
          fractional_matrix(example2_params(n, combo.alpha, combo.dp, combo.dm));
      const auto [min_c, min_s] = cscs_min_real_parts(T);
      CHECK(min_c > 0.0);
      CHECK(min_s > 0.0);
    }
  }
}

TEST_CASE("exact solution alternates -i, +i") {
  const CVec x3 = exact_solution(3);
  CHECK(x3[0] == cxd(0, -1));
  CHECK(x3[1] == cxd(0, 1));
  CHECK(x3[2] == cxd(0, -1));
  CHECK(exact_solution(1)[0] == cxd(0, -1));
  for (const double m : abs_vec(exact_solution(17)))
    CHECK(m == doctest::Approx(1.0));
}

TEST_CASE("rhs construction satisfies the equation identically") {
  // A = 2I, x* = (-i, i): b = 2 x* - ones
  {
    CVec col{2.0, 0.0}, row{2.0, 0.0};
    const ToeplitzMatrix A = toeplitz_new(col, row);
    const CVec b = rhs_from_solution(A, {{0, -1}, {0, 1}});
    CHECK(std::abs(b[0] - cxd(-1, -2)) <= 1e-15);
    CHECK(std::abs(b[1] - cxd(-1, 2)) <= 1e-15);
  }
  auto rng = test::make_rng(140);
  for (int trial = 0; trial < 10; ++trial) {
    const ToeplitzMatrix A = test::random_toeplitz(rng, 12);
    const CVec xs = test::random_cvec(rng, 12);
    const CVec b = rhs_from_solution(A, xs);
    const AveProblem p{A, b, std::nullopt};
    CHECK(ave_residual(p, xs) <= 1e-12);
  }
  CHECK_THROWS_AS(rhs_from_solution(test::random_toeplitz(rng, 4), CVec(3)),
                  std::invalid_argument);
}

TEST_CASE("generated problems validate their exact solutions") {
  const AveProblem p1 = make_example1_problem({64, 10.0, 2.0, 3.0});
  CHECK(ave_residual(p1, *p1.exact_solution) <= 1e-12);

  const AveProblem p2 = make_example2_problem(example2_params(64, 1.5, 0.6, 0.4));
  CHECK(ave_residual(p2, *p2.exact_solution) <= 1e-12);
  // the scaled problem's solution is h^alpha times the alternating vector
  const double scale = std::pow(1.0 / 65.0, 1.5);
  CHECK(std::abs((*p2.exact_solution)[0] - scale * cxd(0, -1)) <= 1e-15);
}
