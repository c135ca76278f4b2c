#include "grassop/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define GRASSOP_HAVE_AVX2 1
#else
#define GRASSOP_HAVE_AVX2 0
#endif

namespace grassop::kernels::avx2 {

#if GRASSOP_HAVE_AVX2

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

bool compiled() noexcept { return true; }

// Two complex numbers per register, laid out [re0, im0, re1, im1].
cplx cdot(const cplx* x, const cplx* y, std::size_t n) noexcept {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();  // xr*yr, xi*yi
  __m256d acc_im = _mm256_setzero_pd();  // xr*yi, xi*yr
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * k);
    __m256d yv = _mm256_loadu_pd(yp + 2 * k);
    __m256d ys = _mm256_permute_pd(yv, 0b0101);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, ys, acc_im);
  }
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(acc_re);
  double im = hsum(_mm256_mul_pd(acc_im, sign));
  for (; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) noexcept {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_setr_pd(-a.imag(), a.imag(), -a.imag(), a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * k);
    __m256d xs = _mm256_permute_pd(xv, 0b0101);
    __m256d yv = _mm256_loadu_pd(yp + 2 * k);
    yv = _mm256_fmadd_pd(ar, xv, yv);
    yv = _mm256_fmadd_pd(ai, xs, yv);
    _mm256_storeu_pd(yp + 2 * k, yv);
  }
  for (; k < n; ++k) {
    y[k] += a * x[k];
  }
}

double norm2(const cplx* x, std::size_t n) noexcept {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v0 = _mm256_loadu_pd(xp + 2 * k);
    __m256d v1 = _mm256_loadu_pd(xp + 2 * k + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  }
  return s;
}

#else

bool compiled() noexcept { return false; }
cplx cdot(const cplx* x, const cplx* y, std::size_t n) noexcept { return scalar::cdot(x, y, n); }
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) noexcept { scalar::caxpy(a, x, y, n); }
double norm2(const cplx* x, std::size_t n) noexcept { return scalar::norm2(x, n); }

#endif

}  // namespace grassop::kernels::avx2
