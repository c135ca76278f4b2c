#include <cstdlib>
#include <string>

#include "grassop/kernels.hpp"

namespace grassop::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2::compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

KernelTable table_for(Isa isa) noexcept {
  if (isa == Isa::Avx2 && cpu_supports(Isa::Avx2)) {
    return {Isa::Avx2, &avx2::cdot, &avx2::caxpy, &avx2::norm2};
  }
  return {Isa::Scalar, &scalar::cdot, &scalar::caxpy, &scalar::norm2};
}

const KernelTable& active() noexcept {
  static const KernelTable table = [] {
    const char* env = std::getenv("GRASSOP_ISA");
    if (env != nullptr && std::string(env) == "scalar") {
      return table_for(Isa::Scalar);
    }
    return table_for(Isa::Avx2);
  }();
  return table;
}

}  // namespace grassop::kernels
