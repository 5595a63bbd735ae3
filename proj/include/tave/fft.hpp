#pragma once

#include <cstddef>
#include <memory>

#include "tave/types.hpp"

namespace tave {

/// Fixed DFT convention used throughout:
///   forward:  X_k = sum_j x_j e^{-2*pi*i*j*k/n}
///   inverse:  x_j = (1/n) sum_k X_k e^{+2*pi*i*j*k/n}
/// The sign of the forward exponent, recorded in spectrum types.
inline constexpr int kDftForwardSign = -1;

/// One-dimensional complex DFT of a fixed size, FFTW-backed.
///
/// Immutable after construction; a single instance may be executed from
/// multiple threads concurrently as long as each call uses its own buffers.
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();

  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  /// out and in must be distinct arrays of size() elements.
  void forward(const cxd* in, cxd* out) const;
  void inverse(const cxd* in, cxd* out) const;

  void forward(const CVec& in, CVec& out) const;
  void inverse(const CVec& in, CVec& out) const;

  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  void* fwd_plan_;
  void* bwd_plan_;
};

}  // namespace tave
