#pragma once

#include "tave/circulant.hpp"
#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave {

/// Convergence-factor bound of the CSCS sweep:
///   f(sigma) = max_k |(s-l^C_k)/(s+l^C_k)| * max_k |(s-l^S_k)/(s+l^S_k)|.
/// Throws when some |sigma + lambda| is near zero.
double convergence_factor_bound(double sigma, const CirculantSpectrum& circ,
                                const SkewCirculantSpectrum& skew);

/// Minimizer of convergence_factor_bound over sigma in [1e-4, 1e4]:
/// coarse log-grid bracketing followed by golden-section refinement to
/// relative tolerance 1e-6. Falls back to the boundary (with a warning on
/// stderr) when no interior minimum exists.
double sigma_cscs_opt(const CirculantSpectrum& circ,
                      const SkewCirculantSpectrum& skew);

/// sqrt(lambda_min * lambda_max) of the Hermitian part H = (A + A^H)/2.
/// Dense eigensolve; throws when H is indefinite or n exceeds the cap.
double sigma_hss_opt(const ToeplitzMatrix& T, std::size_t cap = kDenseCap);

}  // namespace tave
