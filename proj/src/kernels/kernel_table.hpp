#pragma once

#include <span>

namespace tradecone::kernels::detail {

struct KernelTable {
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  void (*rotate)(std::span<double>, std::span<double>, double, double);
  double (*max_abs)(std::span<const double>);
};

const KernelTable& scalar_table();
#if defined(TRADECONE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(TRADECONE_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace tradecone::kernels::detail
