#include "cscs_context.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "tave/kernels.hpp"

namespace tave::detail {

CscsContext::CscsContext(const ToeplitzMatrix& T, double sigma)
    : n_(T.n), sigma_(sigma), dft_(T.n) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("CscsContext: sigma must be positive");
  const CscsSplit split = cscs_split(T);
  circ_ = circulant_spectrum(split.circulant_col);
  skew_ = skew_circulant_spectrum(split.skew_col);

  const double min_re_c = min_real(circ_.lambdas);
  const double min_re_s = min_real(skew_.lambdas);
  if (min_re_c <= 0.0 || min_re_s <= 0.0)
    std::cerr << "tave: warning: CSCS part not positive definite "
              << "(min Re lambda_C = " << min_re_c
              << ", min Re lambda_S = " << min_re_s
              << "); convergence is not guaranteed\n";

  conj_omega_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) conj_omega_[j] = std::conj(skew_.omega[j]);

  inv_c_.resize(n_);
  inv_s_.resize(n_);
  sub_c_.resize(n_);
  sub_s_.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const cxd shift_c = sigma + circ_.lambdas[k];
    const cxd shift_s = sigma + skew_.lambdas[k];
    if (std::abs(shift_c) <= kShiftSingularTol ||
        std::abs(shift_s) <= kShiftSingularTol)
      throw std::runtime_error("CscsContext: near-singular shifted spectrum");
    inv_c_[k] = 1.0 / shift_c;
    inv_s_[k] = 1.0 / shift_s;
    sub_c_[k] = sigma - circ_.lambdas[k];
    sub_s_[k] = sigma - skew_.lambdas[k];
  }
}

void CscsContext::spectral_circ(const CVec& in, const CVec& factors,
                                CVec& out) const {
  CVec hat(n_);
  dft_.forward(in.data(), hat.data());
  kernels::cmul(hat.data(), hat.data(), factors.data(), n_);
  out.resize(n_);
  dft_.inverse(hat.data(), out.data());
}

void CscsContext::spectral_skew(const CVec& in, const CVec& factors,
                                CVec& out) const {
  CVec t(n_), hat(n_);
  kernels::cmul(t.data(), skew_.omega.data(), in.data(), n_);
  dft_.forward(t.data(), hat.data());
  kernels::cmul(hat.data(), hat.data(), factors.data(), n_);
  dft_.inverse(hat.data(), t.data());
  out.resize(n_);
  kernels::cmul(out.data(), conj_omega_.data(), t.data(), n_);
}

void CscsContext::solve_c(const CVec& rhs, CVec& out) const {
  spectral_circ(rhs, inv_c_, out);
}

void CscsContext::solve_s(const CVec& rhs, CVec& out) const {
  spectral_skew(rhs, inv_s_, out);
}

void CscsContext::apply_sub_c(const CVec& x, CVec& out) const {
  spectral_circ(x, sub_c_, out);
}

void CscsContext::apply_sub_s(const CVec& x, CVec& out) const {
  spectral_skew(x, sub_s_, out);
}

void CscsContext::sweep(CVec& x, const CVec& g) const {
  CVec t(n_), half(n_);
  apply_sub_s(x, t);
  kernels::cadd(t.data(), t.data(), g.data(), n_);
  solve_c(t, half);
  apply_sub_c(half, t);
  kernels::cadd(t.data(), t.data(), g.data(), n_);
  solve_s(t, x);
}

}  // namespace tave::detail
