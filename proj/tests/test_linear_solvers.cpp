#include <doctest.h>

#include <cmath>

#include "support/test_support.hpp"
#include "tave/linear_solvers.hpp"

using namespace tave;

namespace {

ToeplitzMatrix example1_matrix(std::size_t n) {
  CVec col(n, cxd(0.0)), row(n, cxd(0.0));
  col[0] = 10.0;
  row[0] = 10.0;
  col[1] = cxd(-1, -2);
  col[2] = cxd(-1, -3);
  row[1] = cxd(0, 2);
  row[2] = cxd(0, 3);
  return toeplitz_new(col, row);
}

DenseMatrix well_conditioned(std::mt19937_64& rng, std::size_t n) {
  DenseMatrix M = DenseMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      M(i, j) += 0.3 * test::random_unit(rng) / static_cast<double>(n);
  return M;
}

}  // namespace

TEST_CASE("cscs_solve on a scaled identity") {
  CVec col(8, cxd(0.0)), row(8, cxd(0.0));
  col[0] = row[0] = 2.0;
  const ToeplitzMatrix T = toeplitz_new(col, row);
  const CVec b(8, cxd(1.0));
  const auto [x, rep] = cscs_solve(T, b, 1.0, 1e-12, 50, CVec(8, cxd(0.0)));
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  for (const cxd& v : x) CHECK(std::abs(v - 0.5) <= 1e-12);
  CHECK_THROWS_AS(cscs_solve(T, b, -1.0, 1e-12, 50, CVec(8, cxd(0.0))),
                  std::invalid_argument);
}

TEST_CASE("cscs_solve converges on the banded complex family at n=128") {
  const std::size_t n = 128;
  const ToeplitzMatrix T = example1_matrix(n);
  auto rng = test::make_rng(21);
  const CVec xs = test::random_cvec(rng, n);
  const CVec b = toeplitz_matvec(T, xs);
  const auto [x, rep] = cscs_solve(T, b, 1.1817, 1e-7, 200, CVec(n, cxd(0.0)));
  CHECK(rep.converged);
  CHECK(rep.rel_residual <= 1e-7);
}

TEST_CASE("cscs_solve error contraction tracks the spectral radius") {
  auto rng = test::make_rng(31);
  const std::size_t n = 32;
  const ToeplitzMatrix T = test::random_pd_toeplitz(rng, n);
  const double sigma = 1.0;
  const double rho = spectral_radius(iteration_matrix_dense(T, sigma));

  const CVec xs = test::random_cvec(rng, n);
  const CVec b = toeplitz_matvec(T, xs);
  CVec x(n, cxd(0.0));
  const double e0 = test::vec_dist(x, xs);
  for (int k = 0; k < 10; ++k) {
    auto [xk, rep] = cscs_solve(T, b, sigma, 0.0, 1, x);
    x = std::move(xk);
  }
  const double e10 = test::vec_dist(x, xs);
  const double factor = std::pow(e10 / e0, 0.1);
  CHECK(factor <= rho + 0.05);
}

TEST_CASE("cscs_solve detects divergence") {
  // a_0 = -1 makes both parts negative definite; sigma = 0.25 then gives a
  // sweep with spectral radius 9.
  CVec col(4, cxd(0.0)), row(4, cxd(0.0));
  col[0] = row[0] = -1.0;
  const ToeplitzMatrix T = toeplitz_new(col, row);
  const CVec b(4, cxd(1.0));
  CHECK_THROWS_AS(cscs_solve(T, b, 0.25, 1e-12, 200, CVec(4, cxd(0.0))),
                  std::runtime_error);
}

TEST_CASE("iteration matrix: zero at the perfectly shifted identity") {
  CVec col(4, cxd(0.0)), row(4, cxd(0.0));
  col[0] = row[0] = 1.0;  // C = S = I/2
  const DenseMatrix M = iteration_matrix_dense(toeplitz_new(col, row), 0.5);
  CHECK(M.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("iteration matrix spectral radius below one for definite parts") {
  const DenseMatrix M32 = iteration_matrix_dense(example1_matrix(32), 1.1817);
  CHECK(spectral_radius(M32) < 1.0);

  auto rng = test::make_rng(41);
  const ToeplitzMatrix T = test::random_pd_toeplitz(rng, 16);
  CHECK(spectral_radius(iteration_matrix_dense(T, 1.0)) < 1.0);
}

TEST_CASE("one sweep equals M(sigma) x + G(sigma) b densely") {
  auto rng = test::make_rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 31;
    const ToeplitzMatrix T = test::random_pd_toeplitz(rng, n);
    const double sigma = 0.4 + std::abs(test::random_unit(rng));
    const CVec x0 = test::random_cvec(rng, n);
    const CVec b = test::random_cvec(rng, n);

    auto [x1, rep] = cscs_solve(T, b, sigma, 0.0, 1, x0);
    CHECK(rep.iterations == 1);

    const CscsSplit split = cscs_split(T);
    const DenseMatrix C = dense_circulant(split.circulant_col);
    const DenseMatrix S = dense_skew_circulant(split.skew_col);
    const DenseMatrix I = DenseMatrix::Identity(C.rows(), C.cols());
    const DenseMatrix M = iteration_matrix_dense(T, sigma);
    const DenseMatrix G = 2.0 * sigma *
                          (sigma * I + S).partialPivLu().solve(
                              (sigma * I + C).partialPivLu().solve(I));
    const Eigen::VectorXcd wv = M * to_eigen(x0) + G * to_eigen(b);
    const CVec expect = from_eigen(wv);
    CHECK(test::vec_dist(x1, expect) <= 1e-10 * std::max(1.0, test::vec_norm(expect)));
  }
}

TEST_CASE("contraction for 50 random definite splittings") {
  auto rng = test::make_rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 31;
    const ToeplitzMatrix T = test::random_pd_toeplitz(rng, n);
    for (const double sigma : {0.1, 1.0, 10.0})
      CHECK(spectral_radius(iteration_matrix_dense(T, sigma)) < 1.0);
  }
}

TEST_CASE("linear operators are linear to roundoff") {
  auto rng = test::make_rng(71);
  const std::size_t n = 24;
  const DenseMatrix M = well_conditioned(rng, n);
  const LinearOperator A = make_operator(M);
  for (int probe = 0; probe < 5; ++probe) {
    const CVec x = test::random_cvec(rng, n);
    const CVec y = test::random_cvec(rng, n);
    CVec xy(n);
    for (std::size_t i = 0; i < n; ++i) xy[i] = x[i] + y[i];
    const CVec lhs = A(xy);
    const CVec ax = A(x), ay = A(y);
    CVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = ax[i] + ay[i];
    CHECK(test::vec_dist(lhs, rhs) <=
          1e-12 * std::max(1.0, test::vec_norm(lhs)));
  }
}

TEST_CASE("gmres: identity, dense oracle and Krylov exactness") {
  auto rng = test::make_rng(81);
  {
    const std::size_t n = 10;
    const DenseMatrix I = DenseMatrix::Identity(n, n);
    const CVec b = test::random_cvec(rng, n);
    const auto [x, rep] =
        gmres_restarted(make_operator(I), b, 5, 1e-12, 100, CVec(n, cxd(0.0)));
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(test::vec_dist(x, b) <= 1e-12);
  }
  {
    const std::size_t n = 16;
    const DenseMatrix M = well_conditioned(rng, n);
    const CVec b = test::random_cvec(rng, n);
    const CVec want = dense_lu_solve(M, b);
    const auto [x, rep] =
        gmres_restarted(make_operator(M), b, 8, 1e-12, 400, CVec(n, cxd(0.0)));
    CHECK(rep.converged);
    CHECK(test::vec_dist(x, want) <= 1e-10 * std::max(1.0, test::vec_norm(want)));
  }
  {
    // diagonal 1..16, full restart: exact within n steps
    const std::size_t n = 16;
    DenseMatrix D = DenseMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < D.rows(); ++i) D(i, i) = double(i + 1);
    const CVec b(n, cxd(1.0));
    const auto [x, rep] = gmres_restarted(make_operator(D), b, 16, 1e-10, 64,
                                          CVec(n, cxd(0.0)));
    CHECK(rep.converged);
    CHECK(rep.iterations <= 16);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(x[i] - 1.0 / double(i + 1)) <= 1e-8);
  }
  CHECK_THROWS_AS(gmres_restarted(make_operator(DenseMatrix::Identity(4, 4)),
                                  CVec(4), 0, 1e-8, 10, CVec(4)),
                  std::invalid_argument);
}

TEST_CASE("tfqmr: identity, dense oracle, singular flag") {
  auto rng = test::make_rng(91);
  {
    const std::size_t n = 10;
    const CVec b = test::random_cvec(rng, n);
    const auto [x, rep] = tfqmr(make_operator(DenseMatrix::Identity(n, n)), b,
                                1e-12, 100, CVec(n, cxd(0.0)));
    CHECK(rep.converged);
    CHECK(rep.iterations <= 2);
    CHECK(test::vec_dist(x, b) <= 1e-12);
  }
  {
    const std::size_t n = 16;
    DenseMatrix M = well_conditioned(rng, n);
    M = (M * M.adjoint()).eval();  // Hermitian positive definite
    M += DenseMatrix::Identity(n, n);
    const CVec b = test::random_cvec(rng, n);
    const CVec want = dense_lu_solve(M, b);
    const auto [x, rep] =
        tfqmr(make_operator(M), b, 1e-12, 400, CVec(n, cxd(0.0)));
    CHECK(rep.converged);
    CHECK(test::vec_dist(x, want) <= 1e-9 * std::max(1.0, test::vec_norm(want)));
  }
  {
    // singular operator with b outside the range: no solution, flag only
    const std::size_t n = 6;
    DenseMatrix Z = DenseMatrix::Identity(n, n);
    Z(0, 0) = 0.0;
    CVec b(n, cxd(1.0));
    const auto [x, rep] = tfqmr(make_operator(Z), b, 1e-10, 60, CVec(n, cxd(0.0)));
    CHECK_FALSE(rep.converged);
  }
}

TEST_CASE("krylov solvers handle nonsingular dense systems within 2n steps") {
  auto rng = test::make_rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4 + rng() % 29;
    const DenseMatrix M = well_conditioned(rng, n);
    const CVec b = test::random_cvec(rng, n);
    const auto [xg, rg] = gmres_restarted(make_operator(M), b,
                                          static_cast<int>(n), 1e-8,
                                          static_cast<int>(2 * n), CVec(n, cxd(0.0)));
    CHECK(rg.converged);
    const auto [xt, rt] = tfqmr(make_operator(M), b, 1e-8,
                                static_cast<int>(2 * n), CVec(n, cxd(0.0)));
    CHECK(rt.converged);
  }
}

TEST_CASE("dense LU solve") {
  auto rng = test::make_rng(111);
  {
    const CVec b = test::random_cvec(rng, 5);
    const CVec x = dense_lu_solve(DenseMatrix::Identity(5, 5), b);
    CHECK(test::vec_dist(x, b) == 0.0);
  }
  {
    DenseMatrix P(2, 2);
    P << cxd(0.0), cxd(1.0), cxd(1.0), cxd(0.0);
    const CVec x = dense_lu_solve(P, {1.0, 2.0});
    CHECK(std::abs(x[0] - 2.0) <= 1e-15);
    CHECK(std::abs(x[1] - 1.0) <= 1e-15);
  }
  {
    const std::size_t n = 32;
    DenseMatrix M = well_conditioned(rng, n);
    const CVec b = test::random_cvec(rng, n);
    const CVec x = dense_lu_solve(M, b);
    const CVec back = test::dense_apply(M, x);
    CHECK(test::vec_dist(back, b) <= 1e-10 * test::vec_norm(b));
  }
  {
    DenseMatrix Z = DenseMatrix::Zero(3, 3);
    CHECK_THROWS_AS(dense_lu_solve(Z, CVec(3, cxd(1.0))), std::runtime_error);
  }
}
