#pragma once

#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave {

// Smooth approximation of |x| used by the convergence diagnostics only; the
// production solvers never evaluate it. Defined over real vectors.

/// phi_j = mu * ln(e^{x_j/mu} + e^{-x_j/mu}), evaluated in the overflow-safe
/// form |x_j| + mu*log1p(e^{-2|x_j|/mu}). Throws when mu <= 0.
RVec phi(const RVec& x, double mu);

/// Diagonal Jacobian of phi: D_jj = tanh(x_j / mu), strictly inside (-1, 1).
RVec phi_jacobian(const RVec& x, double mu);

struct SmoothingGap {
  double gap;    // || phi(x) - |x| ||_2
  double bound;  // sqrt(n) * ln 2 * mu
};
SmoothingGap smoothing_gap(const RVec& x, double mu);

/// Spectral radius of the local linearization
///   M(sigma, x*) = (sI+S)^{-1} (sI-C+D) (sI+C)^{-1} (sI-S+D),
/// D = phi_jacobian(x*, mu), computed densely.
double attraction_spectral_radius(const ToeplitzMatrix& T, double sigma,
                                  const RVec& x_star, double mu,
                                  std::size_t cap = kDenseCap);

/// Which definition of the delta norm bound to use in the diagnostics; the
/// two appear in slightly different forms in the convergence analysis.
enum class DeltaVariant {
  plain,          // max{ ||(sI+C)^{-1}||, ||(sI+S)^{-1}|| }
  jacobian_scaled  // max{ ||D(sI+C)^{-1}||, ||D(sI+S)^{-1}|| }
};

struct AttractionDiagnostics {
  double rho;    // spectral radius of M(sigma, x*)
  double xi;     // max of the two Cayley-factor norms
  double delta;  // per DeltaVariant
};
AttractionDiagnostics attraction_diagnostics(
    const ToeplitzMatrix& T, double sigma, const RVec& x_star, double mu,
    DeltaVariant variant = DeltaVariant::plain, std::size_t cap = kDenseCap);

/// Largest mu such that the smoothed fixed-point map stays within eps of the
/// exact one: ||sI+S|| * eps / ((2 + ||(sI+C)^{-1}||) * sqrt(n) * ln 2).
double mu_threshold(const ToeplitzMatrix& T, double sigma, double eps,
                    std::size_t cap = kDenseCap);

}  // namespace tave
