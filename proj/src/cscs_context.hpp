#pragma once

// Internal engine shared by the linear CSCS iteration and the AVE solvers:
// spectra of the splitting parts plus precomputed shifted-factor tables, so a
// half-step costs two length-n transforms and O(n) pointwise work.

#include <cstddef>

#include "tave/circulant.hpp"
#include "tave/fft.hpp"
#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave::detail {

class CscsContext {
 public:
  CscsContext(const ToeplitzMatrix& T, double sigma);

  std::size_t dim() const { return n_; }
  double sigma() const { return sigma_; }

  const CirculantSpectrum& circ() const { return circ_; }
  const SkewCirculantSpectrum& skew() const { return skew_; }

  // out = (sigma*I + C)^{-1} rhs
  void solve_c(const CVec& rhs, CVec& out) const;
  // out = (sigma*I + S)^{-1} rhs
  void solve_s(const CVec& rhs, CVec& out) const;
  // out = (sigma*I - C) x
  void apply_sub_c(const CVec& x, CVec& out) const;
  // out = (sigma*I - S) x
  void apply_sub_s(const CVec& x, CVec& out) const;

  // One full linear sweep for the system A x = g:
  //   (sigma*I + C) x' = (sigma*I - S) x  + g
  //   (sigma*I + S) x''= (sigma*I - C) x' + g
  void sweep(CVec& x, const CVec& g) const;

 private:
  std::size_t n_;
  double sigma_;
  CirculantSpectrum circ_;
  SkewCirculantSpectrum skew_;
  Dft dft_;
  CVec conj_omega_;
  CVec inv_c_, inv_s_;  // 1/(sigma + lambda)
  CVec sub_c_, sub_s_;  // sigma - lambda

  void spectral_circ(const CVec& in, const CVec& factors, CVec& out) const;
  void spectral_skew(const CVec& in, const CVec& factors, CVec& out) const;
};

}  // namespace tave::detail
