#include "tave/ave_solvers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cscs_context.hpp"
#include "tave/dense.hpp"
#include "tave/kernels.hpp"
#include "tave/linear_solvers.hpp"

namespace tave {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool all_finite(const CVec& v) {
  for (const cxd& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// Shifted solves and (sigma*I - part) products for one splitting A = P1 + P2,
// first half-step solving with P1. CSCS and HSS share the iteration drivers
// through this interface.
class SplitParts {
 public:
  virtual ~SplitParts() = default;
  virtual void solve_first(const CVec& rhs, CVec& out) const = 0;
  virtual void solve_second(const CVec& rhs, CVec& out) const = 0;
  virtual void apply_sub_first(const CVec& x, CVec& out) const = 0;
  virtual void apply_sub_second(const CVec& x, CVec& out) const = 0;
};

class CscsParts final : public SplitParts {
 public:
  CscsParts(const ToeplitzMatrix& T, double sigma) : ctx_(T, sigma) {}
  void solve_first(const CVec& rhs, CVec& out) const override {
    ctx_.solve_c(rhs, out);
  }
  void solve_second(const CVec& rhs, CVec& out) const override {
    ctx_.solve_s(rhs, out);
  }
  void apply_sub_first(const CVec& x, CVec& out) const override {
    ctx_.apply_sub_c(x, out);
  }
  void apply_sub_second(const CVec& x, CVec& out) const override {
    ctx_.apply_sub_s(x, out);
  }

 private:
  detail::CscsContext ctx_;
};

class HssParts final : public SplitParts {
 public:
  HssParts(const ToeplitzMatrix& T, double sigma) : sigma_(sigma) {
    const DenseMatrix A = materialize_dense(T);  // throws past the dense cap
    const auto n = A.rows();
    herm_ = (A + A.adjoint()) / 2.0;
    skew_ = (A - A.adjoint()) / 2.0;
    const DenseMatrix I = DenseMatrix::Identity(n, n);
    lu_h_.compute(sigma * I + herm_);
    lu_s_.compute(sigma * I + skew_);
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if (lu_h_.matrixLU().diagonal().cwiseAbs().minCoeff() <= 1e-14 * scale ||
        lu_s_.matrixLU().diagonal().cwiseAbs().minCoeff() <= 1e-14 * scale)
      throw std::runtime_error("hss: singular shifted factor");
  }
  void solve_first(const CVec& rhs, CVec& out) const override {
    out = from_eigen(lu_h_.solve(to_eigen(rhs)));
  }
  void solve_second(const CVec& rhs, CVec& out) const override {
    out = from_eigen(lu_s_.solve(to_eigen(rhs)));
  }
  void apply_sub_first(const CVec& x, CVec& out) const override {
    const Eigen::VectorXcd xv = to_eigen(x);
    out = from_eigen((sigma_ * xv - herm_ * xv).eval());
  }
  void apply_sub_second(const CVec& x, CVec& out) const override {
    const Eigen::VectorXcd xv = to_eigen(x);
    out = from_eigen((sigma_ * xv - skew_ * xv).eval());
  }

 private:
  double sigma_;
  DenseMatrix herm_, skew_;
  Eigen::PartialPivLU<DenseMatrix> lu_h_, lu_s_;
};

struct OuterState {
  CVec x;
  CVec r;       // |x| + b - A x
  double rel = 0.0;
  double den = 1.0;
  IterationReport rep;
};

OuterState init_state(const AveProblem& p, const ToeplitzOperator& A,
                      const CVec* x0) {
  const std::size_t n = p.A.n;
  if (x0 && x0->size() != n)
    throw std::invalid_argument("solve: initial guess dimension mismatch");
  OuterState st;
  st.x = x0 ? *x0 : CVec(n, cxd(0.0));
  const double bnorm = kernels::norm2(p.b);
  st.den = bnorm > 0.0 ? bnorm : 1.0;
  st.r.resize(n);
  CVec ax(n);
  A.apply(st.x.data(), ax.data());
  kernels::abs_residual(st.r.data(), st.x.data(), p.b.data(), ax.data(), n);
  st.rel = kernels::norm2(st.r) / st.den;
  st.rep.residual_history.push_back(st.rel);
  return st;
}

void refresh_residual(OuterState& st, const AveProblem& p,
                      const ToeplitzOperator& A) {
  const std::size_t n = p.A.n;
  CVec ax(n);
  A.apply(st.x.data(), ax.data());
  kernels::abs_residual(st.r.data(), st.x.data(), p.b.data(), ax.data(), n);
  st.rel = kernels::norm2(st.r) / st.den;
  st.rep.residual_history.push_back(st.rel);
}

bool runaway(const OuterState& st) {
  return !std::isfinite(st.rel) || st.rel > 1e10;
}

// One AVE half-step rhs: t = (sigma*I - P) x + |x| + b, shared by the
// direct-form sweeps.
void like_half_rhs(const SplitParts& parts, bool second, const CVec& x,
                   const CVec& b, CVec& t, CVec& scratch) {
  const std::size_t n = x.size();
  if (second)
    parts.apply_sub_first(x, t);
  else
    parts.apply_sub_second(x, t);
  scratch.resize(n);
  kernels::abs_plus(scratch.data(), x.data(), b.data(), n);
  kernels::cadd(t.data(), t.data(), scratch.data(), n);
}

// Inner linear sweep for A s = g through the splitting.
void linear_sweep(const SplitParts& parts, CVec& s, const CVec& g, CVec& t,
                  CVec& half) {
  const std::size_t n = s.size();
  parts.apply_sub_second(s, t);
  kernels::cadd(t.data(), t.data(), g.data(), n);
  parts.solve_first(t, half);
  parts.apply_sub_first(half, t);
  kernels::cadd(t.data(), t.data(), g.data(), n);
  parts.solve_second(t, s);
}

// Picard outer iteration, in the direct form (inner sweeps iterate the
// solution) or the residual-updating form (inner sweeps build a correction
// from zero), over any splitting. The inner loop stops after
// l_k sweeps or once the inner residual drops below eta times its initial
// value; both forms use the same test and produce the same iterates.
std::pair<CVec, IterationReport> picard_driver(const AveProblem& p,
                                               const SolverConfig& cfg,
                                               const SplitParts& parts,
                                               bool residual_form,
                                               const IterateObserver& obs,
                                               const CVec* x0) {
  validate(cfg);
  const auto t0 = Clock::now();
  const ToeplitzOperator A(p.A);
  const std::size_t n = p.A.n;
  OuterState st = init_state(p, A, x0);

  CVec t(n), half(n), as(n), inner_res(n);
  while (!(st.rel <= cfg.outer_tol) && st.rep.it_out < cfg.outer_maxit &&
         !runaway(st)) {
    const double r0norm = kernels::norm2(st.r);
    int l = 0;
    if (residual_form) {
      CVec s(n, cxd(0.0));
      while (l < cfg.inner_maxit) {
        linear_sweep(parts, s, st.r, t, half);
        ++l;
        A.apply(s.data(), as.data());
        kernels::csub(inner_res.data(), st.r.data(), as.data(), n);
        if (kernels::norm2(inner_res) <= cfg.inner_tol * r0norm) break;
      }
      kernels::cadd(st.x.data(), st.x.data(), s.data(), n);
    } else {
      CVec bk(n);
      kernels::abs_plus(bk.data(), st.x.data(), p.b.data(), n);
      CVec xi = st.x;
      while (l < cfg.inner_maxit) {
        linear_sweep(parts, xi, bk, t, half);
        ++l;
        A.apply(xi.data(), as.data());
        kernels::csub(inner_res.data(), bk.data(), as.data(), n);
        if (kernels::norm2(inner_res) <= cfg.inner_tol * r0norm) break;
      }
      st.x = std::move(xi);
    }
    st.rep.it_total += l;
    ++st.rep.it_out;
    if (obs) obs(st.rep.it_out, st.x);
    refresh_residual(st, p, A);
  }

  st.rep.converged = std::isfinite(st.rel) && st.rel <= cfg.outer_tol;
  st.rep.it_inn_mean =
      st.rep.it_out > 0 ? static_cast<double>(st.rep.it_total) / st.rep.it_out
                        : 0.0;
  st.rep.wall_seconds = seconds_since(t0);
  return {std::move(st.x), std::move(st.rep)};
}

// One-step nonlinear iteration, direct or residual-updating form: the
// absolute-value term is refreshed at each half-step.
std::pair<CVec, IterationReport> like_driver(const AveProblem& p,
                                             const SolverConfig& cfg,
                                             const SplitParts& parts,
                                             bool residual_form,
                                             const IterateObserver& obs,
                                             const CVec* x0) {
  validate(cfg);
  const auto t0 = Clock::now();
  const ToeplitzOperator A(p.A);
  const std::size_t n = p.A.n;
  OuterState st = init_state(p, A, x0);

  CVec t(n), scratch(n), xh(n), ax(n);
  while (!(st.rel <= cfg.outer_tol) && st.rep.it_out < cfg.outer_maxit &&
         !runaway(st)) {
    if (residual_form) {
      // st.r already holds |x| + b - A x
      parts.solve_first(st.r, t);
      kernels::cadd(xh.data(), st.x.data(), t.data(), n);
      A.apply(xh.data(), ax.data());
      kernels::abs_residual(t.data(), xh.data(), p.b.data(), ax.data(), n);
      parts.solve_second(t, scratch);
      kernels::cadd(st.x.data(), xh.data(), scratch.data(), n);
    } else {
      like_half_rhs(parts, /*second=*/false, st.x, p.b, t, scratch);
      parts.solve_first(t, xh);
      like_half_rhs(parts, /*second=*/true, xh, p.b, t, scratch);
      parts.solve_second(t, st.x);
    }
    ++st.rep.it_out;
    if (obs) obs(st.rep.it_out, st.x);
    refresh_residual(st, p, A);
  }

  st.rep.it_total = st.rep.it_out;
  st.rep.it_inn_mean = st.rep.it_out > 0 ? 1.0 : 0.0;
  st.rep.converged = std::isfinite(st.rel) && st.rel <= cfg.outer_tol;
  st.rep.wall_seconds = seconds_since(t0);
  return {std::move(st.x), std::move(st.rep)};
}

}  // namespace

AveProblem make_ave_problem(ToeplitzMatrix A, CVec b,
                            std::optional<CVec> exact_solution) {
  if (b.size() != A.n)
    throw std::invalid_argument("make_ave_problem: dimension mismatch");
  AveProblem p{std::move(A), std::move(b), std::move(exact_solution)};
  if (p.exact_solution) {
    if (p.exact_solution->size() != p.A.n)
      throw std::invalid_argument(
          "make_ave_problem: exact solution dimension mismatch");
    if (ave_residual(p, *p.exact_solution) > 1e-12)
      throw std::invalid_argument(
          "make_ave_problem: claimed exact solution does not satisfy the "
          "equation");
  }
  return p;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::picard_cscs: return "picard_cscs";
    case Method::picard_cscs_ru: return "picard_cscs_ru";
    case Method::cscs_like: return "cscs_like";
    case Method::cscs_like_ru: return "cscs_like_ru";
    case Method::picard_hss: return "picard_hss";
    case Method::hss_like: return "hss_like";
    case Method::gn_gmres: return "gn_gmres";
    case Method::gn_tfqmr: return "gn_tfqmr";
  }
  return "unknown";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : {Method::picard_cscs, Method::picard_cscs_ru,
                   Method::cscs_like, Method::cscs_like_ru, Method::picard_hss,
                   Method::hss_like, Method::gn_gmres, Method::gn_tfqmr})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

void validate(const SolverConfig& cfg) {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(cfg.outer_tol) || !in_unit(cfg.inner_tol) ||
      !in_unit(cfg.inner_krylov_tol))
    throw std::invalid_argument("SolverConfig: tolerances must lie in (0,1)");
  if (cfg.outer_maxit < 1 || cfg.inner_maxit < 1 || cfg.gmres_restart < 1 ||
      cfg.inner_krylov_maxit < 1)
    throw std::invalid_argument("SolverConfig: iteration caps must be >= 1");
  if (!(cfg.sigma > 0.0))
    throw std::invalid_argument("SolverConfig: sigma must be positive");
}

RVec abs_vec(const CVec& x) {
  RVec out(x.size());
  kernels::modulus(out.data(), x.data(), x.size());
  return out;
}

double ave_residual(const AveProblem& p, const CVec& x) {
  if (x.size() != p.A.n)
    throw std::invalid_argument("ave_residual: dimension mismatch");
  const double bnorm = kernels::norm2(p.b);
  if (bnorm == 0.0)
    throw std::invalid_argument("ave_residual: zero right-hand side");
  const std::size_t n = p.A.n;
  CVec ax(n), r(n);
  ToeplitzOperator(p.A).apply(x.data(), ax.data());
  kernels::abs_residual(r.data(), x.data(), p.b.data(), ax.data(), n);
  return kernels::norm2(r) / bnorm;
}

std::pair<CVec, IterationReport> picard_cscs(const AveProblem& p,
                                             const SolverConfig& cfg,
                                             const IterateObserver& obs,
                                             const CVec* x0) {
  return picard_driver(p, cfg, CscsParts(p.A, cfg.sigma),
                       /*residual_form=*/false, obs, x0);
}

std::pair<CVec, IterationReport> picard_cscs_residual_update(
    const AveProblem& p, const SolverConfig& cfg, const IterateObserver& obs,
    const CVec* x0) {
  return picard_driver(p, cfg, CscsParts(p.A, cfg.sigma),
                       /*residual_form=*/true, obs, x0);
}

std::pair<CVec, IterationReport> cscs_like(const AveProblem& p,
                                           const SolverConfig& cfg,
                                           const IterateObserver& obs,
                                           const CVec* x0) {
  return like_driver(p, cfg, CscsParts(p.A, cfg.sigma),
                     /*residual_form=*/false, obs, x0);
}

std::pair<CVec, IterationReport> cscs_like_residual_update(
    const AveProblem& p, const SolverConfig& cfg, const IterateObserver& obs,
    const CVec* x0) {
  return like_driver(p, cfg, CscsParts(p.A, cfg.sigma),
                     /*residual_form=*/true, obs, x0);
}

std::pair<CVec, IterationReport> picard_hss(const AveProblem& p,
                                            const SolverConfig& cfg,
                                            const IterateObserver& obs,
                                            const CVec* x0) {
  return picard_driver(p, cfg, HssParts(p.A, cfg.sigma),
                       /*residual_form=*/false, obs, x0);
}

std::pair<CVec, IterationReport> hss_like(const AveProblem& p,
                                          const SolverConfig& cfg,
                                          const IterateObserver& obs,
                                          const CVec* x0) {
  return like_driver(p, cfg, HssParts(p.A, cfg.sigma),
                     /*residual_form=*/false, obs, x0);
}

std::pair<CVec, IterationReport> generalized_newton(const AveProblem& p,
                                                    const SolverConfig& cfg,
                                                    KrylovKind inner,
                                                    const IterateObserver& obs,
                                                    const CVec* x0) {
  validate(cfg);
  const auto t0 = Clock::now();
  const ToeplitzOperator A(p.A);
  const std::size_t n = p.A.n;
  OuterState st = init_state(p, A, x0);

  CVec sign(n);
  const LinearOperator J{n, [&A, &sign, n](const cxd* v, cxd* y) {
                           A.apply(v, y);
                           for (std::size_t i = 0; i < n; ++i)
                             y[i] -= sign[i] * v[i];
                         }};
  const CVec zero(n, cxd(0.0));

  while (!(st.rel <= cfg.outer_tol) && st.rep.it_out < cfg.outer_maxit) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(st.x[i]);
      sign[i] = m > 1e-14 ? st.x[i] / m : cxd(0.0);
    }
    auto [xnew, inner_rep] =
        inner == KrylovKind::gmres
            ? gmres_restarted(J, p.b, cfg.gmres_restart, cfg.inner_krylov_tol,
                              cfg.inner_krylov_maxit, zero)
            : tfqmr(J, p.b, cfg.inner_krylov_tol, cfg.inner_krylov_maxit, zero);
    st.rep.it_total += inner_rep.iterations;
    // On inner breakdown keep the previous iterate; the outer loop still
    // completes and reports Fail.
    if (all_finite(xnew)) st.x = std::move(xnew);
    ++st.rep.it_out;
    if (obs) obs(st.rep.it_out, st.x);
    refresh_residual(st, p, A);
  }

  st.rep.converged = std::isfinite(st.rel) && st.rel <= cfg.outer_tol;
  st.rep.it_inn_mean =
      st.rep.it_out > 0 ? static_cast<double>(st.rep.it_total) / st.rep.it_out
                        : 0.0;
  st.rep.wall_seconds = seconds_since(t0);
  return {std::move(st.x), std::move(st.rep)};
}

std::pair<CVec, IterationReport> solve_ave(const AveProblem& p,
                                           const SolverConfig& cfg,
                                           const IterateObserver& obs) {
  switch (cfg.method) {
    case Method::picard_cscs: return picard_cscs(p, cfg, obs);
    case Method::picard_cscs_ru: return picard_cscs_residual_update(p, cfg, obs);
    case Method::cscs_like: return cscs_like(p, cfg, obs);
    case Method::cscs_like_ru: return cscs_like_residual_update(p, cfg, obs);
    case Method::picard_hss: return picard_hss(p, cfg, obs);
    case Method::hss_like: return hss_like(p, cfg, obs);
    case Method::gn_gmres:
      return generalized_newton(p, cfg, KrylovKind::gmres, obs);
    case Method::gn_tfqmr:
      return generalized_newton(p, cfg, KrylovKind::tfqmr, obs);
  }
  throw std::invalid_argument("solve_ave: unknown method");
}

}  // namespace tave
