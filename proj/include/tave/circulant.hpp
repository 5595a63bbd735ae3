#pragma once

#include "tave/fft.hpp"
#include "tave/types.hpp"

namespace tave {

/// Eigenvalues of a circulant matrix: lambdas = forward DFT of the first
/// column under the convention recorded in dft_sign (see fft.hpp).
struct CirculantSpectrum {
  std::size_t n = 0;
  CVec lambdas;
  int dft_sign = kDftForwardSign;
};

/// Eigenvalues of a skew-circulant matrix. With Omega = diag(omega),
/// omega_j = e^{-i*pi*j/n}, the matrix factors as
///   S = Omega^* . IDFT . diag(lambdas) . DFT . Omega,
/// and lambdas is the forward DFT of (omega .* first column).
struct SkewCirculantSpectrum {
  std::size_t n = 0;
  CVec lambdas;
  CVec omega;
};

CirculantSpectrum circulant_spectrum(const CVec& first_col);
SkewCirculantSpectrum skew_circulant_spectrum(const CVec& first_col);

/// x = (sigma*I + C)^{-1} y via DFT, componentwise divide, inverse DFT.
/// Throws if min_k |sigma + lambda_k| <= kShiftSingularTol.
CVec apply_shifted_circulant_inverse(double sigma, const CirculantSpectrum& spec,
                                     const CVec& y);

/// x = (sigma*I + S)^{-1} y with the Omega-scaled transform sandwich.
CVec apply_shifted_skew_inverse(double sigma, const SkewCirculantSpectrum& spec,
                                const CVec& y);

/// Smallest real part over a spectrum; positive for a positive definite part.
double min_real(const CVec& lambdas);

}  // namespace tave
