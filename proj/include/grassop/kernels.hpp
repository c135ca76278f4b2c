#pragma once

// Complex BLAS-1 style kernels used by the subspace layer. A portable scalar
// reference lives in kernels::scalar; kernels::avx2 is compiled separately
// with -mavx2 -mfma and picked at runtime when the CPU supports it.

#include <complex>
#include <cstddef>
#include <string_view>

namespace grassop::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

namespace scalar {
// sum_k conj(x[k]) * y[k]
cplx cdot(const cplx* x, const cplx* y, std::size_t n) noexcept;
// y += a * x
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) noexcept;
// sum_k |x[k]|^2
double norm2(const cplx* x, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
bool compiled() noexcept;
cplx cdot(const cplx* x, const cplx* y, std::size_t n) noexcept;
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) noexcept;
double norm2(const cplx* x, std::size_t n) noexcept;
}  // namespace avx2

struct KernelTable {
  Isa isa;
  cplx (*cdot)(const cplx*, const cplx*, std::size_t) noexcept;
  void (*caxpy)(cplx, const cplx*, cplx*, std::size_t) noexcept;
  double (*norm2)(const cplx*, std::size_t) noexcept;
};

// Best table for this CPU; GRASSOP_ISA=scalar in the environment forces the
// reference path. Resolved once.
const KernelTable& active() noexcept;

KernelTable table_for(Isa isa) noexcept;

bool cpu_supports(Isa isa) noexcept;

}  // namespace grassop::kernels
