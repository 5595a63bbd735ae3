// AVX2+FMA variants of the complex kernels. Compiled with -mavx2 -mfma on
// x86-64 only; selected at runtime after a cpuid check.

#include "tave/kernels.hpp"

#if defined(TAVE_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace tave::kernels {
namespace avx2 {

namespace {

// One __m256d holds two complex<double> values [re0, im0, re1, im1].

inline __m256d complex_mul(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);        // [br0, br0, br1, br1]
  const __m256d bi = _mm256_permute_pd(b, 0xF);   // [bi0, bi0, bi1, bi1]
  const __m256d as = _mm256_permute_pd(a, 0x5);   // [ai0, ar0, ai1, ar1]
  return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

// [|z0|, |z0|, |z1|, |z1|] from [re0, im0, re1, im1]
inline __m256d modulus_pairs(__m256d v) {
  const __m256d sq = _mm256_mul_pd(v, v);
  return _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline const double* dptr(const cxd* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* dptr(cxd* p) { return reinterpret_cast<double*>(p); }

}  // namespace

void cmul(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dptr(a + i));
    const __m256d vb = _mm256_loadu_pd(dptr(b + i));
    _mm256_storeu_pd(dptr(dst + i), complex_mul(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cadd(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(dptr(a + i)),
                                    _mm256_loadu_pd(dptr(b + i)));
    _mm256_storeu_pd(dptr(dst + i), s);
  }
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void csub(cxd* dst, const cxd* a, const cxd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d s = _mm256_sub_pd(_mm256_loadu_pd(dptr(a + i)),
                                    _mm256_loadu_pd(dptr(b + i)));
    _mm256_storeu_pd(dptr(dst + i), s);
  }
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void caxpy(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(dptr(x + i));
    const __m256d xs = _mm256_permute_pd(vx, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(vx, ar, _mm256_mul_pd(xs, ai));
    const __m256d vy = _mm256_loadu_pd(dptr(y + i));
    _mm256_storeu_pd(dptr(y + i), _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cxd cdotc(const cxd* a, const cxd* b, std::size_t n) {
  // conj(a)*b: re = ar*br + ai*bi, im = ar*bi - ai*br
  const __m256d odd_neg = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dptr(a + i));
    const __m256d vb = _mm256_loadu_pd(dptr(b + i));
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    const __m256d bs = _mm256_xor_pd(_mm256_permute_pd(vb, 0x5), odd_neg);
    acc_im = _mm256_fmadd_pd(va, bs, acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; i < n; ++i) {
    const cxd t = std::conj(a[i]) * b[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

double norm2_sq(const cxd* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(dptr(a + i));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(a[i]);
  return s;
}

void modulus(double* dst, const cxd* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d m = modulus_pairs(_mm256_loadu_pd(dptr(a + i)));
    const __m128d lo = _mm256_castpd256_pd128(m);
    const __m128d hi = _mm256_extractf128_pd(m, 1);
    _mm_storeu_pd(dst + i, _mm_unpacklo_pd(lo, hi));
  }
  for (; i < n; ++i) dst[i] = std::abs(a[i]);
}

void abs_plus(cxd* dst, const cxd* x, const cxd* g, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d m = modulus_pairs(_mm256_loadu_pd(dptr(x + i)));
    const __m256d mre = _mm256_blend_pd(m, zero, 0xA);  // [m0, 0, m1, 0]
    const __m256d vg = _mm256_loadu_pd(dptr(g + i));
    _mm256_storeu_pd(dptr(dst + i), _mm256_add_pd(vg, mre));
  }
  for (; i < n; ++i) dst[i] = g[i] + std::abs(x[i]);
}

void abs_residual(cxd* dst, const cxd* x, const cxd* g, const cxd* ax,
                  std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d m = modulus_pairs(_mm256_loadu_pd(dptr(x + i)));
    const __m256d mre = _mm256_blend_pd(m, zero, 0xA);
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(dptr(g + i)),
                                       _mm256_loadu_pd(dptr(ax + i)));
    _mm256_storeu_pd(dptr(dst + i), _mm256_add_pd(diff, mre));
  }
  for (; i < n; ++i) dst[i] = g[i] - ax[i] + std::abs(x[i]);
}

}  // namespace avx2

const Table* avx2_table() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (!supported) return nullptr;
  static const Table t{avx2::cmul,     avx2::cadd,    avx2::csub,
                       avx2::caxpy,    avx2::cdotc,   avx2::norm2_sq,
                       avx2::modulus,  avx2::abs_plus,
                       avx2::abs_residual, "avx2"};
  return &t;
}

}  // namespace tave::kernels

#endif  // TAVE_HAVE_AVX2
