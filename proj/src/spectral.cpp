#include "tradecone/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tradecone/errors.hpp"
#include "tradecone/freeness.hpp"
#include "tradecone/kernels.hpp"

namespace tradecone {

double psd_tolerance(const Matrix& a) { return 1e-10 * std::fmax(1.0, frobenius_norm(a)); }

EigenDecomposition eigen_sym(const Matrix& input) {
  const std::size_t n = input.size();
  const double norm = frobenius_norm(input);
  if (asymmetry(input) > 1e-12 * std::fmax(1.0, norm)) throw NotSymmetric("matrix is not symmetric");

  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  Matrix vt = Matrix::identity(n);  // row k holds eigenvector k

  constexpr int kMaxSweeps = 100;
  const double target = 1e-14 * norm;
  for (int sweep = 0; sweep < kMaxSweeps && norm > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) < target) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        if (!std::isfinite(theta)) t = 0.5 / theta;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        kernels::rotate(a.row(p), a.row(q), c, s);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = a(p, k);
          a(k, q) = a(q, k);
        }
        kernels::rotate(vt.row(p), vt.row(q), c, s);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(a(k, k));
    out.eigenvectors.emplace_back(vt.row(k).begin(), vt.row(k).end());
  }
  return out;
}

SpectralReport eigenvalues_sym(const Matrix& a) {
  SpectralReport r;
  r.eigenvalues = eigen_sym(a).eigenvalues;
  r.min_eigenvalue = r.eigenvalues.empty() ? 0.0 : r.eigenvalues.front();
  r.psd = r.min_eigenvalue >= -psd_tolerance(a);
  return r;
}

bool is_psd(const Matrix& a, double tol) {
  const std::size_t n = a.size();
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto lj = l.row(j).first(j);
    const double diag = a(j, j) + tol - kernels::dot(lj, lj);
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) l(i, j) = (a(i, j) - kernels::dot(l.row(i).first(j), lj)) / ljj;
  }
  return true;
}

namespace {

/// P M P with P = I - J/n.
Matrix double_center(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<double> row_mean(n, 0.0);
  std::vector<double> col_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      row_mean[i] += m(i, j);
      col_mean[j] += m(i, j);
      grand += m(i, j);
    }
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_mean[i] *= inv;
    col_mean[i] *= inv;
  }
  grand *= inv * inv;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = m(i, j) - row_mean[i] - col_mean[j] + grand;
  return c;
}

bool freeness_psd(const Matrix& metric, double t, Matrix& work) {
  fill_freeness(metric, t, work);
  return is_psd(work, psd_tolerance(work));
}

}  // namespace

bool is_cnd(const MetricMatrix& m, double tol) {
  if (m.size() <= 1) return true;
  const auto ev = eigen_sym(double_center(m.matrix())).eigenvalues;
  return ev.back() <= tol;
}

constexpr std::size_t kTailProbes = 16;

StabilityResult mt_stability(const MetricMatrix& m, const StabilityOptions& opts) {
  if (opts.grid_points == 0) throw InvalidInput("grid_points must be positive");
  if (!(opts.tol > 0.0)) throw InvalidInput("bisection tolerance must be positive");
  StabilityResult result;
  if (m.size() <= 1) return result;

  const Matrix& d = m.matrix();
  Matrix work(m.size());
  const double step = 1.0 / static_cast<double>(opts.grid_points + 1);

  // Uniform grid, then a geometric tail toward t = 1 for indices above the last grid point.
  std::vector<double> probes;
  probes.reserve(opts.grid_points + kTailProbes);
  for (std::size_t k = 1; k <= opts.grid_points; ++k) probes.push_back(static_cast<double>(k) * step);
  for (std::size_t j = 1; j <= kTailProbes; ++j) probes.push_back(1.0 - std::ldexp(step, -static_cast<int>(j)));

  double lo = 0.0;
  double hi = 0.0;
  for (double t : probes) {
    if (!freeness_psd(d, t, work)) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (hi == 0.0) return result;

  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    if (freeness_psd(d, mid, work))
      lo = mid;
    else
      hi = mid;
  }

  for (std::size_t k = 1; k <= opts.verify_points; ++k) {
    const double t = lo * static_cast<double>(k) / static_cast<double>(opts.verify_points + 1);
    if (!freeness_psd(d, t, work))
      throw NonIntervalStabilityRegion(lo, t,
                                       "Phi_t fails PSD at t = " + std::to_string(t) + " below the index " +
                                           std::to_string(lo));
  }

  fill_freeness(d, hi, work);
  result.stable = false;
  result.index = lo;
  result.witness_t = hi;
  result.witness_eigenvalue = eigenvalues_sym(work).min_eigenvalue;
  return result;
}

bool mt_stable_via_schoenberg(const MetricMatrix& m) { return is_cnd(m, 1e-10); }

Embedding schoenberg_embedding(const MetricMatrix& m) {
  const std::size_t n = m.size();
  Matrix g = -0.5 * double_center(m.matrix());
  const auto eig = eigen_sym(g);
  const double lowest = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  if (lowest < -1e-10)
    throw NotNegativeType(lowest, "metric is not of negative type: centred Gram matrix has eigenvalue " +
                                      std::to_string(lowest));

  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < n; ++k)
    if (eig.eigenvalues[k] > 0.0) kept.push_back(k);

  Embedding e;
  const std::size_t dim = std::max<std::size_t>(kept.size(), 1);
  e.points.assign(n, std::vector<double>(dim, 0.0));
  // Largest eigenvalues first, so the leading coordinates carry the most spread.
  std::reverse(kept.begin(), kept.end());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const std::size_t k = kept[c];
    const double scale = std::sqrt(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) e.points[i][c] = scale * eig.eigenvectors[k][i];
  }
  return e;
}

double embedding_error(const Embedding& e, const MetricMatrix& m) {
  if (e.points.size() != m.size()) throw DimensionMismatch("embedding and metric sizes differ");
  double worst = 0.0;
  std::vector<double> diff;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      diff = e.points[i];
      kernels::axpy(-1.0, e.points[j], diff);
      worst = std::fmax(worst, std::fabs(kernels::dot(diff, diff) - m(i, j)));
    }
  return worst;
}

SpectralReport bipartite_spectrum(std::size_t n, std::size_t m, double t) {
  if (n == 0 || m == 0) throw InvalidInput("bipartite spectrum needs both blocs nonempty");
  if (!(t > 0.0 && t < 1.0)) throw TOutOfRange("t must lie in (0, 1), got " + std::to_string(t));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double t2 = t * t;
  const double centre = 1.0 + 0.5 * (dn + dm - 2.0) * t2;
  const double radius = 0.5 * std::sqrt(4.0 * dn * dm * t2 + (dn - dm) * (dn - dm) * t2 * t2);

  SpectralReport r;
  r.eigenvalues.assign(n + m - 2, 1.0 - t2);
  r.eigenvalues.push_back(centre - radius);
  r.eigenvalues.push_back(centre + radius);
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  r.min_eigenvalue = r.eigenvalues.front();
  double sq = 0.0;
  for (double x : r.eigenvalues) sq += x * x;
  r.psd = r.min_eigenvalue >= -1e-10 * std::fmax(1.0, std::sqrt(sq));
  return r;
}

BipartiteIndex bipartite_index(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InvalidInput("bipartite index needs both blocs nonempty");
  const double prod = static_cast<double>(n - 1) * static_cast<double>(m - 1);
  if (prod <= 1.0) return {1.0, true};
  return {1.0 / std::sqrt(prod), false};
}

}  // namespace tradecone
