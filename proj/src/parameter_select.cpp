#include "tave/parameter_select.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tave/dense.hpp"

namespace tave {

namespace {

double max_cayley(double sigma, const CVec& lambdas) {
  double m = 0.0;
  for (const cxd& l : lambdas) {
    const double denom = std::abs(sigma + l);
    if (denom <= kShiftSingularTol)
      throw std::runtime_error("convergence_factor_bound: sigma + lambda ~ 0");
    m = std::max(m, std::abs(sigma - l) / denom);
  }
  return m;
}

}  // namespace

double convergence_factor_bound(double sigma, const CirculantSpectrum& circ,
                                const SkewCirculantSpectrum& skew) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("convergence_factor_bound: sigma must be > 0");
  return max_cayley(sigma, circ.lambdas) * max_cayley(sigma, skew.lambdas);
}

double sigma_cscs_opt(const CirculantSpectrum& circ,
                      const SkewCirculantSpectrum& skew) {
  constexpr double lo = 1e-4, hi = 1e4;
  auto f = [&](double u) {
    try {
      return convergence_factor_bound(std::exp(u), circ, skew);
    } catch (const std::runtime_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Coarse scan on log sigma to bracket the minimum.
  constexpr int kGrid = 241;
  const double ulo = std::log(lo), uhi = std::log(hi);
  const double du = (uhi - ulo) / (kGrid - 1);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double v = f(ulo + i * du);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best == kGrid - 1) {
    std::cerr << "tave: warning: sigma_cscs_opt found no interior minimum; "
              << "returning search boundary\n";
    return std::exp(ulo + best * du);
  }

  double a = ulo + (best - 1) * du, b = ulo + (best + 1) * du;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-6) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return std::exp(0.5 * (a + b));
}

double sigma_hss_opt(const ToeplitzMatrix& T, std::size_t cap) {
  const DenseMatrix A = materialize_dense(T, cap);
  const DenseMatrix H = (A + A.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(H,
                                                Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(lmin > 0.0))
    throw std::runtime_error(
        "sigma_hss_opt: Hermitian part is not positive definite");
  return std::sqrt(lmin * lmax);
}

}  // namespace tave
