#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tradecone/matrix.hpp"
#include "tradecone/metric.hpp"

namespace tradecone {

/// Eigenvalues of a symmetric matrix, ascending.
struct SpectralReport {
  std::vector<double> eigenvalues;
  double min_eigenvalue = 0.0;
  bool psd = false;  // min_eigenvalue >= -psd_tolerance(A)
};

/// Eigenvalues (ascending) plus the matching orthonormal eigenvectors,
/// eigenvectors[k] belonging to eigenvalues[k].
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

/// -1e-10 * max(1, ||A||_F) is the most negative eigenvalue still counted as zero.
double psd_tolerance(const Matrix& a);

/// Cyclic Jacobi with a fixed sweep order. Stops when the off-diagonal
/// Frobenius norm drops below 1e-14 * ||A||_F. Throws NotSymmetric when
/// asymmetry exceeds 1e-12 * max(1, ||A||_F).
EigenDecomposition eigen_sym(const Matrix& a);
SpectralReport eigenvalues_sym(const Matrix& a);

/// min eigenvalue(A) >= -tol, decided by a Cholesky factorisation of A + tol*I.
bool is_psd(const Matrix& a, double tol);

/// Conditionally negative semi-definite: c'Mc <= tol whenever sum(c) = 0,
/// tested as max eigenvalue of P M P <= tol with P = I - J/n.
bool is_cnd(const MetricMatrix& m, double tol = 1e-10);

struct StabilityOptions {
  std::size_t grid_points = 1024;
  double tol = 1e-8;               // bisection width for the index
  std::size_t verify_points = 4096;  // PSD re-check below the index
};

/// Mossay-Tabuchi stability of the family t -> Phi_t = (t^{m_ij}).
struct StabilityResult {
  bool stable = true;
  double index = 1.0;                // largest t0 with Phi_t PSD on (0, t0]
  std::optional<double> witness_t;   // a t just above the index where PSD fails
  std::optional<double> witness_eigenvalue;  // min eigenvalue of Phi at witness_t
};

/// Scans a uniform grid t_k = k/(grid+1), then 16 points 1 - 2^-j/(grid+1);
/// on the first PSD failure bisects between the neighbouring probes. Throws NonIntervalStabilityRegion if
/// a verification scan finds a failure below the bisected index.
StabilityResult mt_stability(const MetricMatrix& m, const StabilityOptions& opts = {});

/// Stability decided through the CND test (Schoenberg equivalence).
bool mt_stable_via_schoenberg(const MetricMatrix& m);

/// Points x_i with ||x_i - x_j||^2 = m_ij.
struct Embedding {
  std::vector<std::vector<double>> points;
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }
};

/// Classical scaling of the double-centred matrix G = -1/2 P M P. Throws
/// NotNegativeType carrying the most negative eigenvalue when G is not PSD.
Embedding schoenberg_embedding(const MetricMatrix& m);

/// max_{i,j} | ||x_i - x_j||^2 - m_ij |.
double embedding_error(const Embedding& e, const MetricMatrix& m);

/// Closed-form spectrum of Phi_t for K_{n,m}: 1 - t^2 with multiplicity
/// n+m-2, and 1 + (n+m-2)t^2/2 +- sqrt(4nm t^2 + (n-m)^2 t^4)/2.
SpectralReport bipartite_spectrum(std::size_t n, std::size_t m, double t);

struct BipartiteIndex {
  double index = 1.0;
  bool always_stable = true;
};

/// min(1, 1/sqrt((n-1)(m-1))); always_stable when (n-1)(m-1) <= 1.
BipartiteIndex bipartite_index(std::size_t n, std::size_t m);

}  // namespace tradecone
