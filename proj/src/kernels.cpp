#include "tave/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace tave::kernels {

namespace scalar {

void cmul(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cadd(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void csub(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void caxpy(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cxd cdotc(const cxd* a, const cxd* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cxd t = std::conj(a[i]) * b[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

double norm2_sq(const cxd* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i]);
  return acc;
}

void modulus(double* dst, const cxd* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::abs(a[i]);
}

void abs_plus(cxd* dst, const cxd* x, const cxd* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = g[i] + std::abs(x[i]);
}

void abs_residual(cxd* dst, const cxd* x, const cxd* g, const cxd* ax,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = g[i] - ax[i] + std::abs(x[i]);
}

}  // namespace scalar

const Table& scalar_table() {
  static const Table t{scalar::cmul,     scalar::cadd,    scalar::csub,
                       scalar::caxpy,    scalar::cdotc,   scalar::norm2_sq,
                       scalar::modulus,  scalar::abs_plus,
                       scalar::abs_residual, "scalar"};
  return t;
}

#if !defined(TAVE_HAVE_AVX2)
const Table* avx2_table() { return nullptr; }
#endif

namespace {

const Table& select_table() {
  if (const char* env = std::getenv("TAVE_KERNEL_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return scalar_table();
  }
  if (const Table* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const Table& active_table() {
  static const Table& t = select_table();
  return t;
}

double norm2(const cxd* a, std::size_t n) {
  return std::sqrt(norm2_sq(a, n));
}

}  // namespace tave::kernels
