#include "grassop/kernels.hpp"

namespace grassop::kernels::scalar {

cplx cdot(const cplx* x, const cplx* y, std::size_t n) noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) noexcept {
  for (std::size_t k = 0; k < n; ++k) {
    y[k] += a * x[k];
  }
}

double norm2(const cplx* x, std::size_t n) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  }
  return s;
}

}  // namespace grassop::kernels::scalar
