#pragma once

#include <cstddef>
#include <utility>

#include "tradecone/matrix.hpp"
#include "tradecone/metric.hpp"

namespace tradecone {

/// Freeness-of-trade matrix: symmetric, unit diagonal, entries in (0, 1],
/// phi(i,j) * phi(j,k) <= phi(i,k).
class FreenessMatrix {
public:
  std::size_t size() const noexcept { return phi_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return phi_(i, j); }
  const Matrix& matrix() const noexcept { return phi_; }

  /// Some off-diagonal entry equals 1 (free trade between distinct countries).
  bool degenerate() const noexcept { return degenerate_; }

private:
  friend FreenessMatrix validate_freeness(const Matrix& phi, double tol);
  friend FreenessMatrix freeness_from_metric(const MetricMatrix& m, double t);
  FreenessMatrix(Matrix phi, bool degenerate) : phi_(std::move(phi)), degenerate_(degenerate) {}

  Matrix phi_;
  bool degenerate_ = false;
};

/// Phi_t = (t^{m_ij}), computed as exp(m_ij * log t). Requires 0 < t < 1.
FreenessMatrix freeness_from_metric(const MetricMatrix& m, double t);

/// Raw Phi_t without validation, for tight loops that scan t.
void fill_freeness(const Matrix& metric, double t, Matrix& out);

/// M_Phi = (-log phi_ij).
MetricMatrix friction_metric(const FreenessMatrix& phi);

/// Checks the four freeness axioms; reports a witness on failure.
FreenessMatrix validate_freeness(const Matrix& phi, double tol = 1e-12);

/// A metric viewed as the one-parameter family t -> Phi_t.
class FreenessFamily {
public:
  explicit FreenessFamily(MetricMatrix metric) : metric_(std::move(metric)) {}
  const MetricMatrix& metric() const noexcept { return metric_; }
  FreenessMatrix at(double t) const { return freeness_from_metric(metric_, t); }

private:
  MetricMatrix metric_;
};

}  // namespace tradecone
