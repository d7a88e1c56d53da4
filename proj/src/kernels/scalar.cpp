#include "kernel_table.hpp"

#include <cmath>
#include <cstddef>

#include "tradecone/kernels.hpp"

namespace tradecone::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::fmax(m, std::fabs(v));
  return m;
}

}  // namespace tradecone::kernels::scalar

namespace tradecone::kernels::detail {

const KernelTable& scalar_table() {
  static const KernelTable table{&scalar::dot, &scalar::axpy, &scalar::rotate, &scalar::max_abs};
  return table;
}

}  // namespace tradecone::kernels::detail
