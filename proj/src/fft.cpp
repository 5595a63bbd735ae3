#include "tave/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace tave {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cxd* p) { return reinterpret_cast<fftw_complex*>(p); }
const fftw_complex* as_fftw(const cxd* p) {
  return reinterpret_cast<const fftw_complex*>(p);
}

}  // namespace

Dft::Dft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Dft: size must be positive");
  CVec dummy_in(n), dummy_out(n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_UNALIGNED lets the plans execute on any caller buffers.
  fwd_plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(dummy_in.data()),
                               as_fftw(dummy_out.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(dummy_in.data()),
                               as_fftw(dummy_out.data()), FFTW_BACKWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_plan_ || !bwd_plan_) throw std::runtime_error("Dft: planning failed");
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_plan_));
}

void Dft::forward(const cxd* in, cxd* out) const {
  if (in == out)
    throw std::invalid_argument("Dft::forward: buffers must be distinct");
  fftw_execute_dft(static_cast<fftw_plan>(fwd_plan_),
                   const_cast<fftw_complex*>(as_fftw(in)), as_fftw(out));
}

void Dft::inverse(const cxd* in, cxd* out) const {
  if (in == out)
    throw std::invalid_argument("Dft::inverse: buffers must be distinct");
  fftw_execute_dft(static_cast<fftw_plan>(bwd_plan_),
                   const_cast<fftw_complex*>(as_fftw(in)), as_fftw(out));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] *= scale;
}

void Dft::forward(const CVec& in, CVec& out) const {
  if (in.size() != n_ || out.size() != n_)
    throw std::invalid_argument("Dft::forward: size mismatch");
  forward(in.data(), out.data());
}

void Dft::inverse(const CVec& in, CVec& out) const {
  if (in.size() != n_ || out.size() != n_)
    throw std::invalid_argument("Dft::inverse: size mismatch");
  inverse(in.data(), out.data());
}

}  // namespace tave
