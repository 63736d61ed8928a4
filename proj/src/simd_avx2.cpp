#include "vimpact/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define VIMPACT_AVX2_TARGET __attribute__((target("avx2")))
#else
#define VIMPACT_AVX2_TARGET
#endif

namespace vimpact::simd::kernels {

#if defined(__x86_64__) || defined(__i386__)

namespace {
VIMPACT_AVX2_TARGET inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}
}  // namespace

VIMPACT_AVX2_TARGET
void poly1d_avx2(const double* c, int n, bool abs_wrap, const double* x, double* out,
                 std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d acc = _mm256_setzero_pd();
    for (int k = n - 1; k >= 0; --k)
      acc = _mm256_add_pd(_mm256_mul_pd(acc, xv), _mm256_set1_pd(c[k]));
    if (abs_wrap) acc = abs_pd(acc);
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < count) poly1d_scalar(c, n, abs_wrap, x + i, out + i, count - i);
}

VIMPACT_AVX2_TARGET
void poly2d_avx2(const Term* t, std::size_t nt, bool abs_wrap, const double* v,
                 const double* phi, double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d pv = _mm256_loadu_pd(phi + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < nt; ++k) {
      __m256d m = _mm256_set1_pd(t[k].c);
      for (int a = 0; a < t[k].ev; ++a) m = _mm256_mul_pd(m, vv);
      for (int b = 0; b < t[k].ephi; ++b) m = _mm256_mul_pd(m, pv);
      acc = _mm256_add_pd(acc, m);
    }
    if (abs_wrap) acc = abs_pd(acc);
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < count) poly2d_scalar(t, nt, abs_wrap, v + i, phi + i, out + i, count - i);
}

#else

void poly1d_avx2(const double* c, int n, bool abs_wrap, const double* x, double* out,
                 std::size_t count) {
  poly1d_scalar(c, n, abs_wrap, x, out, count);
}

void poly2d_avx2(const Term* t, std::size_t nt, bool abs_wrap, const double* v,
                 const double* phi, double* out, std::size_t count) {
  poly2d_scalar(t, nt, abs_wrap, v, phi, out, count);
}

#endif

}  // namespace vimpact::simd::kernels
