#include "tave/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

#include "tave/kernels.hpp"

namespace tave {

namespace {

bool all_finite(const CVec& v) {
  for (const cxd& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

ToeplitzMatrix toeplitz_new(CVec first_col, CVec first_row) {
  if (first_col.empty() || first_col.size() != first_row.size())
    throw std::invalid_argument(
        "toeplitz_new: first column and row must have equal length >= 1");
  if (std::abs(first_col[0] - first_row[0]) > 1e-14)
    throw std::invalid_argument(
        "toeplitz_new: corner entries first_col[0] and first_row[0] disagree");
  if (!all_finite(first_col) || !all_finite(first_row))
    throw std::invalid_argument("toeplitz_new: non-finite entry");
  ToeplitzMatrix T;
  T.n = first_col.size();
  T.first_col = std::move(first_col);
  T.first_row = std::move(first_row);
  return T;
}

CscsSplit cscs_split(const ToeplitzMatrix& T) {
  const std::size_t n = T.n;
  CscsSplit out;
  out.circulant_col.resize(n);
  out.skew_col.resize(n);
  out.circulant_col[0] = T.first_col[0] * 0.5;
  out.skew_col[0] = T.first_col[0] * 0.5;
  for (std::size_t k = 1; k < n; ++k) {
    const cxd ak = T.first_col[k];
    const cxd akmn = T.first_row[n - k];  // a_{k-n}
    out.circulant_col[k] = (ak + akmn) * 0.5;
    out.skew_col[k] = (ak - akmn) * 0.5;
  }
  return out;
}

ToeplitzOperator::ToeplitzOperator(const ToeplitzMatrix& T)
    : n_(T.n), dft2n_(std::make_shared<Dft>(2 * T.n)) {
  // Embedded circulant first column: [a_0..a_{n-1}, 0, a_{1-n}..a_{-1}].
  CVec embed(2 * n_, cxd(0.0, 0.0));
  for (std::size_t k = 0; k < n_; ++k) embed[k] = T.first_col[k];
  for (std::size_t j = 1; j < n_; ++j) embed[n_ + j] = T.first_row[n_ - j];
  embed_hat_.resize(2 * n_);
  dft2n_->forward(embed.data(), embed_hat_.data());
}

void ToeplitzOperator::apply(const cxd* x, cxd* y) const {
  const std::size_t m = 2 * n_;
  CVec padded(m, cxd(0.0, 0.0));
  for (std::size_t i = 0; i < n_; ++i) padded[i] = x[i];
  CVec hat(m), prod(m);
  dft2n_->forward(padded.data(), hat.data());
  kernels::cmul(prod.data(), hat.data(), embed_hat_.data(), m);
  dft2n_->inverse(prod.data(), hat.data());
  for (std::size_t i = 0; i < n_; ++i) y[i] = hat[i];
}

CVec ToeplitzOperator::apply(const CVec& x) const {
  if (x.size() != n_)
    throw std::invalid_argument("ToeplitzOperator::apply: dimension mismatch");
  CVec y(n_);
  apply(x.data(), y.data());
  return y;
}

CVec toeplitz_matvec(const ToeplitzMatrix& T, const CVec& x) {
  return ToeplitzOperator(T).apply(x);
}

}  // namespace tave
