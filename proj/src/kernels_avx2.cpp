#include <immintrin.h>

#include <cmath>
#include <vector>

#include "loopeq/kernels.hpp"

namespace loopeq::kernels {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

struct Lane {
  __m256d v;
};

}  // namespace

// Four points per lane group; the running term w z^k is advanced with FMA.
void power_moments_avx2(const double* zr, const double* zi, const double* wr, const double* wi, std::size_t n,
                        int kmax, double* acc_re, double* acc_im, double* abs_acc) {
  const std::size_t K = static_cast<std::size_t>(kmax) + 1;
  std::vector<Lane> sr(K, Lane{_mm256_setzero_pd()}), si(sr), sa(sr);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d zre = _mm256_loadu_pd(zr + i);
    const __m256d zim = _mm256_loadu_pd(zi + i);
    __m256d tr = _mm256_loadu_pd(wr + i);
    __m256d ti = _mm256_loadu_pd(wi + i);
    const __m256d az = _mm256_sqrt_pd(_mm256_fmadd_pd(zre, zre, _mm256_mul_pd(zim, zim)));
    __m256d a = _mm256_sqrt_pd(_mm256_fmadd_pd(tr, tr, _mm256_mul_pd(ti, ti)));
    for (std::size_t k = 0; k < K; ++k) {
      sr[k].v = _mm256_add_pd(sr[k].v, tr);
      si[k].v = _mm256_add_pd(si[k].v, ti);
      sa[k].v = _mm256_add_pd(sa[k].v, a);
      const __m256d nr = _mm256_fmsub_pd(tr, zre, _mm256_mul_pd(ti, zim));
      ti = _mm256_fmadd_pd(tr, zim, _mm256_mul_pd(ti, zre));
      tr = nr;
      a = _mm256_mul_pd(a, az);
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    acc_re[k] += hsum(sr[k].v);
    acc_im[k] += hsum(si[k].v);
    abs_acc[k] += hsum(sa[k].v);
  }
  if (i < n) power_moments_scalar(zr + i, zi + i, wr + i, wi + i, n - i, kmax, acc_re, acc_im, abs_acc);
}

}  // namespace loopeq::kernels
