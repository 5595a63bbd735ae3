#pragma once

#include <memory>

#include "tave/fft.hpp"
#include "tave/types.hpp"

namespace tave {

/// Non-Hermitian Toeplitz matrix stored by its first column and first row.
///
/// first_col[k] = a_k (k = 0..n-1, the subdiagonals), first_row[k] = a_{-k}
/// (the superdiagonals); first_col[0] == first_row[0] is the shared diagonal.
/// Immutable after construction via toeplitz_new.
struct ToeplitzMatrix {
  std::size_t n = 0;
  CVec first_col;
  CVec first_row;
};

/// Validates lengths, the shared corner entry and finiteness.
ToeplitzMatrix toeplitz_new(CVec first_col, CVec first_row);

/// Circulant + skew-circulant splitting A = C + S, returned as the first
/// columns of C and S:
///   c_0 = s_0 = a_0 / 2,
///   c_k = (a_k + a_{k-n}) / 2,  s_k = (a_k - a_{k-n}) / 2,  k = 1..n-1,
/// with a_{k-n} = first_row[n-k].
struct CscsSplit {
  CVec circulant_col;
  CVec skew_col;
};
CscsSplit cscs_split(const ToeplitzMatrix& T);

/// Fast A*x products via embedding into a 2n-by-2n circulant.
/// The embedded spectrum is computed once; apply() costs two length-2n
/// transforms. Safe for concurrent apply() calls.
class ToeplitzOperator {
 public:
  explicit ToeplitzOperator(const ToeplitzMatrix& T);

  void apply(const cxd* x, cxd* y) const;
  CVec apply(const CVec& x) const;

  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  std::shared_ptr<const Dft> dft2n_;
  CVec embed_hat_;  // forward DFT of the embedded first column
};

/// One-shot product A*x (builds a ToeplitzOperator internally).
CVec toeplitz_matvec(const ToeplitzMatrix& T, const CVec& x);

}  // namespace tave
