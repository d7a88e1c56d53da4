#pragma once

// Data-parallel inner loops used by the eigensolver, the PSD test and the
// equilibrium residual. Each kernel has a scalar reference version and, where
// the target supports it, an AVX2+FMA or NEON variant. The variant is picked
// once at startup from the running CPU; tests can pin a backend to compare
// variants against the scalar reference.

#include <span>
#include <string_view>

namespace tradecone::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

/// Backend currently used by the free functions below.
Backend active_backend();

/// True when `b` was compiled in and the running CPU supports it.
bool backend_available(Backend b);

/// Pin a backend. Throws InvalidInput when it is unavailable.
void set_backend(Backend b);

/// Restore the CPU-detected default.
void reset_backend();

/// sum_i a[i] * b[i]. Sizes must match.
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Plane rotation: (x, y) <- (c*x - s*y, s*x + c*y), elementwise.
void rotate(std::span<double> x, std::span<double> y, double c, double s);

/// max_i |x[i]|, 0 for an empty span.
double max_abs(std::span<const double> x);

/// Explicit per-backend entry points, for equivalence tests.
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void rotate(std::span<double> x, std::span<double> y, double c, double s);
double max_abs(std::span<const double> x);
}  // namespace scalar

}  // namespace tradecone::kernels
