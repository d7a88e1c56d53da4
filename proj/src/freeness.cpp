#include "tradecone/freeness.hpp"

#include <cmath>
#include <string>

#include "tradecone/errors.hpp"

namespace tradecone {

namespace {

void require_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw TOutOfRange("t must lie in (0, 1), got " + std::to_string(t));
}

}  // namespace

void fill_freeness(const Matrix& metric, double t, Matrix& out) {
  const std::size_t n = metric.size();
  if (out.size() != n) out = Matrix(n);
  const double log_t = std::log(t);
  const auto src = metric.data();
  auto dst = out.data();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] == 0.0 ? 1.0 : std::exp(src[k] * log_t);
}

FreenessMatrix freeness_from_metric(const MetricMatrix& m, double t) {
  require_t(t);
  Matrix phi;
  fill_freeness(m.matrix(), t, phi);
  bool degenerate = false;
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = 0; j < phi.size(); ++j)
      if (i != j && phi(i, j) == 1.0) degenerate = true;
  return FreenessMatrix(std::move(phi), degenerate);
}

MetricMatrix friction_metric(const FreenessMatrix& phi) {
  const std::size_t n = phi.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? 0.0 : -std::log(phi(i, j));
  // The multiplicative triangle is checked to 1e-12 in value; after the log the
  // slack scales with 1/phi.
  double min_phi = 1.0;
  for (double x : phi.matrix().data()) min_phi = std::fmin(min_phi, x);
  return validate_metric(m, 1e-11 / min_phi);
}

FreenessMatrix validate_freeness(const Matrix& phi, double tol) {
  const std::size_t n = phi.size();
  if (n == 0) throw InvalidInput("freeness matrix must have at least one country");
  auto at = [](std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(phi(i, j) > 0.0 && phi(i, j) <= 1.0 + tol))
        throw RangeError(i, j, "phi" + at(i, j) + " = " + std::to_string(phi(i, j)) + " is outside (0, 1]");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(phi(i, j) - phi(j, i)) > tol) throw AsymmetryError(i, j, "phi" + at(i, j) + " != phi" + at(j, i));
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(phi(i, i) - 1.0) > tol) throw DiagonalError(i, "phi" + at(i, i) + " is not 1");

  Matrix clean(n);
  bool degenerate = false;
  for (std::size_t i = 0; i < n; ++i) {
    clean(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::fmin(1.0, 0.5 * (phi(i, j) + phi(j, i)));
      clean(i, j) = clean(j, i) = v;
      if (v == 1.0) degenerate = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (clean(i, j) * clean(j, k) > clean(i, k) + tol)
          throw MultiplicativeTriangleViolation(
              {i, j, k}, "phi" + at(i, j) + " * phi" + at(j, k) + " > phi" + at(i, k));
      }
    }
  return FreenessMatrix(std::move(clean), degenerate);
}

}  // namespace tradecone
