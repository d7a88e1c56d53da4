// AArch64 only; NEON is part of the base ISA there, so no runtime check is needed.
#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "kernel_table.hpp"

namespace tradecone::kernels::detail {
namespace {

double dot_neon(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a.data() + i + 2), vld1q_f64(b.data() + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_neon(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y.data() + i, vfmaq_f64(vld1q_f64(y.data() + i), va, vld1q_f64(x.data() + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rotate_neon(std::span<double> x, std::span<double> y, double c, double s) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x.data() + i);
    const float64x2_t vy = vld1q_f64(y.data() + i);
    vst1q_f64(x.data() + i, vfmsq_n_f64(vmulq_n_f64(vx, c), vy, s));
    vst1q_f64(y.data() + i, vfmaq_n_f64(vmulq_n_f64(vy, c), vx, s));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double max_abs_neon(std::span<const double> x) {
  const std::size_t n = x.size();
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x.data() + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{&dot_neon, &axpy_neon, &rotate_neon, &max_abs_neon};
  return table;
}

}  // namespace tradecone::kernels::detail
