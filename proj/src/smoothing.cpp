#include "tave/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tave/dense.hpp"

namespace tave {

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("smoothing: mu must be positive");
}

struct DenseParts {
  DenseMatrix C, S, I;
};

DenseParts dense_parts(const ToeplitzMatrix& T, std::size_t cap) {
  if (T.n > cap) throw std::runtime_error("smoothing: dense cap exceeded");
  const CscsSplit split = cscs_split(T);
  DenseParts p;
  p.C = dense_circulant(split.circulant_col);
  p.S = dense_skew_circulant(split.skew_col);
  p.I = DenseMatrix::Identity(p.C.rows(), p.C.cols());
  return p;
}

}  // namespace

RVec phi(const RVec& x, double mu) {
  check_mu(mu);
  RVec out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = std::abs(x[j]);
    out[j] = a + mu * std::log1p(std::exp(-2.0 * a / mu));
  }
  return out;
}

RVec phi_jacobian(const RVec& x, double mu) {
  check_mu(mu);
  // tanh saturates to exactly +/-1 in floating point; the entries must stay
  // strictly inside (-1, 1).
  const double cap = std::nextafter(1.0, 0.0);
  RVec out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = std::tanh(x[j] / mu);
    out[j] = std::clamp(d, -cap, cap);
  }
  return out;
}

SmoothingGap smoothing_gap(const RVec& x, double mu) {
  check_mu(mu);
  double sq = 0.0;
  for (const double v : x) {
    const double g = mu * std::log1p(std::exp(-2.0 * std::abs(v) / mu));
    sq += g * g;
  }
  return {std::sqrt(sq),
          std::sqrt(static_cast<double>(x.size())) * std::numbers::ln2 * mu};
}

double attraction_spectral_radius(const ToeplitzMatrix& T, double sigma,
                                  const RVec& x_star, double mu,
                                  std::size_t cap) {
  return attraction_diagnostics(T, sigma, x_star, mu, DeltaVariant::plain, cap)
      .rho;
}

AttractionDiagnostics attraction_diagnostics(const ToeplitzMatrix& T,
                                             double sigma, const RVec& x_star,
                                             double mu, DeltaVariant variant,
                                             std::size_t cap) {
  if (x_star.size() != T.n)
    throw std::invalid_argument("attraction_diagnostics: dimension mismatch");
  const DenseParts p = dense_parts(T, cap);
  const RVec d = phi_jacobian(x_star, mu);
  DenseMatrix D = DenseMatrix::Zero(p.I.rows(), p.I.cols());
  for (Eigen::Index j = 0; j < p.I.rows(); ++j)
    D(j, j) = d[static_cast<std::size_t>(j)];

  const DenseMatrix shift_c = sigma * p.I + p.C;
  const DenseMatrix shift_s = sigma * p.I + p.S;
  Eigen::PartialPivLU<DenseMatrix> lu_c(shift_c);
  Eigen::PartialPivLU<DenseMatrix> lu_s(shift_s);

  const DenseMatrix M =
      lu_s.solve((sigma * p.I - p.C + D) * lu_c.solve(sigma * p.I - p.S + D));

  const DenseMatrix inv_c = lu_c.solve(p.I);
  const DenseMatrix inv_s = lu_s.solve(p.I);

  AttractionDiagnostics out;
  out.rho = spectral_radius(M);
  out.xi = std::max(two_norm((sigma * p.I - p.S) * inv_s),
                    two_norm((sigma * p.I - p.C) * inv_c));
  out.delta = variant == DeltaVariant::plain
                  ? std::max(two_norm(inv_c), two_norm(inv_s))
                  : std::max(two_norm(D * inv_c), two_norm(D * inv_s));
  return out;
}

double mu_threshold(const ToeplitzMatrix& T, double sigma, double eps,
                    std::size_t cap) {
  if (!(eps > 0.0))
    throw std::invalid_argument("mu_threshold: eps must be positive");
  const DenseParts p = dense_parts(T, cap);
  const double norm_shift_s = two_norm(sigma * p.I + p.S);
  const double norm_inv_c =
      two_norm(Eigen::PartialPivLU<DenseMatrix>(sigma * p.I + p.C).solve(p.I));
  const double n = static_cast<double>(T.n);
  return norm_shift_s * eps /
         ((2.0 + norm_inv_c) * std::sqrt(n) * std::numbers::ln2);
}

}  // namespace tave
