#include <atomic>
#include <string>

#include "kernel_table.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/kernels.hpp"

namespace tradecone::kernels {
namespace {

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(TRADECONE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(TRADECONE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const detail::KernelTable& table_for(Backend b) {
  switch (b) {
#if defined(TRADECONE_HAVE_AVX2)
    case Backend::avx2:
      return detail::avx2_table();
#endif
#if defined(TRADECONE_HAVE_NEON)
    case Backend::neon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

Backend detect() {
  if (cpu_supports(Backend::avx2)) return Backend::avx2;
  if (cpu_supports(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

const detail::KernelTable& active() { return table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

Backend active_backend() { return current().load(); }

bool backend_available(Backend b) { return cpu_supports(b); }

void set_backend(Backend b) {
  if (!cpu_supports(b)) throw InvalidInput("kernel backend '" + std::string(backend_name(b)) + "' is not available");
  current().store(b);
}

void reset_backend() { current().store(detect()); }

double dot(std::span<const double> a, std::span<const double> b) { return active().dot(a, b); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) { active().axpy(alpha, x, y); }

void rotate(std::span<double> x, std::span<double> y, double c, double s) { active().rotate(x, y, c, s); }

double max_abs(std::span<const double> x) { return active().max_abs(x); }

}  // namespace tradecone::kernels
