#include "tave/linear_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cscs_context.hpp"
#include "tave/kernels.hpp"

namespace tave {

namespace {

bool finite(double v) { return std::isfinite(v); }

bool all_finite(const CVec& v) {
  for (const cxd& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// Complex Givens rotation zeroing b: [c, s; -conj(s), c] [a; b] = [r; 0].
void givens(cxd a, cxd b, double& c, cxd& s) {
  const double absa = std::abs(a);
  if (absa == 0.0) {
    c = 0.0;
    s = 1.0;
    return;
  }
  const double t = std::sqrt(absa * absa + std::norm(b));
  c = absa / t;
  s = (a / absa) * std::conj(b) / (cxd)t;
}

}  // namespace

CVec LinearOperator::operator()(const CVec& x) const {
  if (x.size() != n)
    throw std::invalid_argument("LinearOperator: dimension mismatch");
  CVec y(n);
  apply(x.data(), y.data());
  return y;
}

LinearOperator make_operator(const ToeplitzOperator& op) {
  return LinearOperator{op.dim(),
                        [&op](const cxd* x, cxd* y) { op.apply(x, y); }};
}

LinearOperator make_operator(const DenseMatrix& M) {
  const auto n = static_cast<std::size_t>(M.rows());
  return LinearOperator{n, [&M, n](const cxd* x, cxd* y) {
                          Eigen::Map<const Eigen::VectorXcd> xv(
                              x, static_cast<Eigen::Index>(n));
                          Eigen::Map<Eigen::VectorXcd> yv(
                              y, static_cast<Eigen::Index>(n));
                          yv = M * xv;
                        }};
}

std::pair<CVec, LinearSolveReport> cscs_solve(const ToeplitzMatrix& T,
                                              const CVec& b, double sigma,
                                              double tol, int maxit,
                                              const CVec& x0) {
  if (b.size() != T.n || x0.size() != T.n)
    throw std::invalid_argument("cscs_solve: dimension mismatch");
  const detail::CscsContext ctx(T, sigma);
  const ToeplitzOperator A(T);
  const std::size_t n = T.n;

  const double bnorm = kernels::norm2(b);
  const double den = bnorm > 0.0 ? bnorm : 1.0;

  CVec x = x0, r(n), ax(n);
  A.apply(x.data(), ax.data());
  kernels::csub(r.data(), b.data(), ax.data(), n);
  double rel = kernels::norm2(r) / den;
  const double rel0 = rel;

  LinearSolveReport rep;
  rep.rel_residual = rel;
  rep.converged = rel <= tol;
  int k = 0;
  while (!rep.converged && k < maxit) {
    ctx.sweep(x, b);
    ++k;
    A.apply(x.data(), ax.data());
    kernels::csub(r.data(), b.data(), ax.data(), n);
    rel = kernels::norm2(r) / den;
    rep.iterations = k;
    rep.rel_residual = rel;
    rep.converged = rel <= tol;
    if (!finite(rel) || rel > 1e8 * std::max(rel0, 1.0))
      throw std::runtime_error("cscs_solve: divergence detected");
  }
  return {std::move(x), rep};
}

DenseMatrix iteration_matrix_dense(const ToeplitzMatrix& T, double sigma,
                                   std::size_t cap) {
  if (T.n > cap)
    throw std::runtime_error("iteration_matrix_dense: dense cap exceeded");
  if (!(sigma > 0.0))
    throw std::invalid_argument("iteration_matrix_dense: sigma must be positive");
  const CscsSplit split = cscs_split(T);
  const DenseMatrix C = dense_circulant(split.circulant_col);
  const DenseMatrix S = dense_skew_circulant(split.skew_col);
  const auto n = C.rows();
  const DenseMatrix I = DenseMatrix::Identity(n, n);

  Eigen::PartialPivLU<DenseMatrix> lu_c(sigma * I + C);
  Eigen::PartialPivLU<DenseMatrix> lu_s(sigma * I + S);
  const double scale = std::max(sigma, std::max(C.cwiseAbs().maxCoeff(),
                                                S.cwiseAbs().maxCoeff()));
  if (lu_c.matrixLU().diagonal().cwiseAbs().minCoeff() <= 1e-14 * scale ||
      lu_s.matrixLU().diagonal().cwiseAbs().minCoeff() <= 1e-14 * scale)
    throw std::runtime_error("iteration_matrix_dense: singular shifted factor");

  return lu_s.solve((sigma * I - C) * lu_c.solve(sigma * I - S));
}

std::pair<CVec, LinearSolveReport> gmres_restarted(const LinearOperator& A,
                                                   const CVec& b, int m,
                                                   double tol, int maxit,
                                                   const CVec& x0) {
  if (m < 1) throw std::invalid_argument("gmres_restarted: restart must be >= 1");
  const std::size_t n = A.n;
  if (b.size() != n || x0.size() != n)
    throw std::invalid_argument("gmres_restarted: dimension mismatch");

  const double bnorm = kernels::norm2(b);
  const double den = bnorm > 0.0 ? bnorm : 1.0;

  CVec x = x0, r(n), ax(n);
  auto residual = [&](const CVec& xv) {
    A.apply(xv.data(), ax.data());
    kernels::csub(r.data(), b.data(), ax.data(), n);
    return kernels::norm2(r) / den;
  };

  double rel = residual(x);
  CVec best_x = x;
  double best_rel = rel;
  LinearSolveReport rep;
  rep.rel_residual = rel;
  rep.converged = rel <= tol;
  if (rep.converged) return {std::move(x), rep};

  const std::size_t mm = static_cast<std::size_t>(m);
  std::vector<CVec> V(mm + 1, CVec(n));
  std::vector<CVec> H(mm, CVec(mm + 1));  // H[j][i], column j
  std::vector<double> cs(mm);
  CVec sn(mm), g(mm + 1);

  int total = 0;
  while (total < maxit) {
    const double beta = kernels::norm2(r);
    if (beta == 0.0) break;
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), cxd(0.0));
    g[0] = beta;

    std::size_t j = 0;
    bool happy = false;
    double res_est = rel;
    CVec w(n);
    while (j < mm && total < maxit) {
      A.apply(V[j].data(), w.data());
      ++total;
      const double norm_before = kernels::norm2(w);
      for (std::size_t i = 0; i <= j; ++i) {
        const cxd h = kernels::cdotc(V[i].data(), w.data(), n);
        kernels::caxpy(w.data(), -h, V[i].data(), n);
        H[j][i] = h;
      }
      // One reorthogonalization pass when the residual coupling against the
      // basis exceeds 1e-8 of the pre-orthogonalization norm.
      {
        CVec h2(j + 1);
        double loss_sq = 0.0;
        for (std::size_t i = 0; i <= j; ++i) {
          h2[i] = kernels::cdotc(V[i].data(), w.data(), n);
          loss_sq += std::norm(h2[i]);
        }
        if (std::sqrt(loss_sq) > 1e-8 * norm_before) {
          for (std::size_t i = 0; i <= j; ++i) {
            kernels::caxpy(w.data(), -h2[i], V[i].data(), n);
            H[j][i] += h2[i];
          }
        }
      }
      const double hnext = kernels::norm2(w);
      happy = hnext <= 1e-14 * std::max(1.0, norm_before);
      H[j][j + 1] = hnext;
      if (!happy)
        for (std::size_t i = 0; i < n; ++i) V[j + 1][i] = w[i] / hnext;

      for (std::size_t i = 0; i < j; ++i) {
        const cxd t0 = H[j][i], t1 = H[j][i + 1];
        H[j][i] = cs[i] * t0 + sn[i] * t1;
        H[j][i + 1] = -std::conj(sn[i]) * t0 + cs[i] * t1;
      }
      givens(H[j][j], H[j][j + 1], cs[j], sn[j]);
      H[j][j] = cs[j] * H[j][j] + sn[j] * H[j][j + 1];
      H[j][j + 1] = 0.0;
      g[j + 1] = -std::conj(sn[j]) * g[j];
      g[j] = cs[j] * g[j];
      res_est = std::abs(g[j + 1]) / den;
      ++j;
      if (happy || res_est <= tol) break;
    }

    // y from the j x j triangular system, then x += V y.
    CVec y(j);
    for (std::size_t i = j; i-- > 0;) {
      cxd s = g[i];
      for (std::size_t l = i + 1; l < j; ++l) s -= H[l][i] * y[l];
      y[i] = s / H[i][i];
    }
    for (std::size_t l = 0; l < j; ++l)
      kernels::caxpy(x.data(), y[l], V[l].data(), n);

    rel = residual(x);
    if (!all_finite(x) || !finite(rel)) {
      x = best_x;
      rel = best_rel;
      break;
    }
    if (rel < best_rel) {
      best_rel = rel;
      best_x = x;
    }
    if (rel <= tol) break;
    if (happy) break;  // Krylov space exhausted without further progress
  }

  rep.iterations = total;
  rep.rel_residual = best_rel;
  rep.converged = best_rel <= tol;
  return {std::move(best_x), rep};
}

std::pair<CVec, LinearSolveReport> tfqmr(const LinearOperator& A, const CVec& b,
                                         double tol, int maxit, const CVec& x0) {
  const std::size_t n = A.n;
  if (b.size() != n || x0.size() != n)
    throw std::invalid_argument("tfqmr: dimension mismatch");

  const double bnorm = kernels::norm2(b);
  const double den = bnorm > 0.0 ? bnorm : 1.0;

  CVec x = x0, ax(n), r0(n);
  A.apply(x.data(), ax.data());
  kernels::csub(r0.data(), b.data(), ax.data(), n);

  LinearSolveReport rep;
  double tau = kernels::norm2(r0);
  rep.rel_residual = tau / den;
  rep.converged = rep.rel_residual <= tol;
  if (rep.converged) return {std::move(x), rep};

  CVec w = r0, y1 = r0, y2(n), u1(n), u2(n), v(n), d(n, cxd(0.0));
  A.apply(y1.data(), v.data());
  u1 = v;
  double theta = 0.0;
  cxd eta = 0.0;
  cxd rho = kernels::cdotc(r0.data(), r0.data(), n);

  auto true_rel = [&](const CVec& xv) {
    A.apply(xv.data(), ax.data());
    CVec rr(n);
    kernels::csub(rr.data(), b.data(), ax.data(), n);
    return kernels::norm2(rr) / den;
  };

  int m = 0;
  while (m < maxit) {
    const cxd sig = kernels::cdotc(r0.data(), v.data(), n);
    if (std::abs(sig) == 0.0 || !finite(std::abs(sig))) break;  // breakdown
    const cxd alpha = rho / sig;
    for (int half = 1; half <= 2 && m < maxit; ++half) {
      if (half == 2) {
        y2 = y1;
        kernels::caxpy(y2.data(), -alpha, v.data(), n);
        A.apply(y2.data(), u2.data());
      }
      ++m;
      kernels::caxpy(w.data(), -alpha, half == 1 ? u1.data() : u2.data(), n);
      const cxd dscale = (theta * theta) * eta / alpha;
      const CVec& yj = half == 1 ? y1 : y2;
      for (std::size_t i = 0; i < n; ++i) d[i] = yj[i] + dscale * d[i];
      theta = kernels::norm2(w) / tau;
      const double c = 1.0 / std::sqrt(1.0 + theta * theta);
      tau = tau * theta * c;
      eta = (c * c) * alpha;
      kernels::caxpy(x.data(), eta, d.data(), n);
      if (!finite(tau) || !finite(theta)) {
        rep.iterations = m;
        rep.rel_residual = rep.converged ? rep.rel_residual : tau / den;
        rep.converged = false;
        return {std::move(x), rep};
      }
      if (tau * std::sqrt(static_cast<double>(m + 1)) <= tol * den) {
        const double rel = true_rel(x);
        if (rel <= tol) {
          rep.iterations = m;
          rep.rel_residual = rel;
          rep.converged = true;
          return {std::move(x), rep};
        }
      }
    }
    if (m >= maxit) break;
    if (std::abs(rho) == 0.0) break;  // breakdown
    const cxd rho_new = kernels::cdotc(r0.data(), w.data(), n);
    const cxd beta = rho_new / rho;
    rho = rho_new;
    y1 = w;
    kernels::caxpy(y1.data(), beta, y2.data(), n);
    A.apply(y1.data(), u1.data());
    // v = u1 + beta*(u2 + beta*v)
    for (std::size_t i = 0; i < n; ++i)
      v[i] = u1[i] + beta * (u2[i] + beta * v[i]);
  }

  rep.iterations = m;
  rep.rel_residual = true_rel(x);
  rep.converged = rep.rel_residual <= tol;
  return {std::move(x), rep};
}

}  // namespace tave
