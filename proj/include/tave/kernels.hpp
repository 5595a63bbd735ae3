#pragma once

// Data-parallel complex kernels used in the solver inner loops.
//
// Every operation has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active variant is chosen once at startup from CPU
// capabilities; TAVE_KERNEL_ISA=scalar in the environment forces the scalar
// path. Both variants stay callable so tests can check them against each
// other.

#include <cstddef>

#include "tave/types.hpp"

namespace tave::kernels {

struct Table {
  // dst = a .* b (dst may alias a or b)
  void (*cmul)(cxd* dst, const cxd* a, const cxd* b, std::size_t n);
  // dst = a + b / dst = a - b
  void (*cadd)(cxd* dst, const cxd* a, const cxd* b, std::size_t n);
  void (*csub)(cxd* dst, const cxd* a, const cxd* b, std::size_t n);
  // y += alpha * x
  void (*caxpy)(cxd* y, cxd alpha, const cxd* x, std::size_t n);
  // sum_j conj(a_j) * b_j
  cxd (*cdotc)(const cxd* a, const cxd* b, std::size_t n);
  // sum_j |a_j|^2
  double (*norm2_sq)(const cxd* a, std::size_t n);
  // dst_j = |a_j|
  void (*modulus)(double* dst, const cxd* a, std::size_t n);
  // dst_j = |x_j| + g_j
  void (*abs_plus)(cxd* dst, const cxd* x, const cxd* g, std::size_t n);
  // dst_j = |x_j| + g_j - ax_j  (the AVE residual vector)
  void (*abs_residual)(cxd* dst, const cxd* x, const cxd* g, const cxd* ax,
                       std::size_t n);
  const char* name;
};

const Table& scalar_table();

/// AVX2+FMA table, or nullptr when the build or CPU lacks support.
const Table* avx2_table();

/// Table selected at startup (CPU detection + TAVE_KERNEL_ISA override).
const Table& active_table();

// Convenience forwarders through the active table.
inline void cmul(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  active_table().cmul(dst, a, b, n);
}
inline void cadd(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  active_table().cadd(dst, a, b, n);
}
inline void csub(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  active_table().csub(dst, a, b, n);
}
inline void caxpy(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
  active_table().caxpy(y, alpha, x, n);
}
inline cxd cdotc(const cxd* a, const cxd* b, std::size_t n) {
  return active_table().cdotc(a, b, n);
}
inline double norm2_sq(const cxd* a, std::size_t n) {
  return active_table().norm2_sq(a, n);
}
inline void modulus(double* dst, const cxd* a, std::size_t n) {
  active_table().modulus(dst, a, n);
}
inline void abs_plus(cxd* dst, const cxd* x, const cxd* g, std::size_t n) {
  active_table().abs_plus(dst, x, g, n);
}
inline void abs_residual(cxd* dst, const cxd* x, const cxd* g, const cxd* ax,
                         std::size_t n) {
  active_table().abs_residual(dst, x, g, ax, n);
}

double norm2(const cxd* a, std::size_t n);
inline double norm2(const CVec& a) { return norm2(a.data(), a.size()); }

}  // namespace tave::kernels
