#pragma once

// Random generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "tradecone/equilibrium.hpp"
#include "tradecone/freeness.hpp"
#include "tradecone/matrix.hpp"
#include "tradecone/metric.hpp"

namespace tctest {

using namespace tradecone;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  bool coin() { return index(0, 1) == 1; }

private:
  std::mt19937_64 gen_;
};

/// Symmetric, zero diagonal, off-diagonal in [lo, 2 lo]: always a metric.
inline Matrix random_band_matrix(Rng& rng, std::size_t n, double lo = 1.0) {
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = rng.uniform(lo, 2.0 * lo);
  return d;
}

/// Shortest-path metric of a random connected weighted graph.
inline WeightedGraph random_connected_graph(Rng& rng, std::size_t n, double extra_edge_prob = 0.4) {
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = rng.index(0, v - 1);
    edges.push_back({u, v, rng.uniform(0.2, 3.0)});
    used[u][v] = used[v][u] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!used[i][j] && rng.uniform(0.0, 1.0) < extra_edge_prob) edges.push_back({i, j, rng.uniform(0.2, 3.0)});
  return WeightedGraph(n, edges);
}

/// Mixes band metrics, graph metrics and perturbed bipartite metrics so
/// that both stable and unstable cases appear.
inline MetricMatrix random_metric(Rng& rng, std::size_t n) {
  switch (rng.index(0, 2)) {
    case 0:
      return validate_metric(random_band_matrix(rng, n));
    case 1:
      return graph_metric(random_connected_graph(rng, n));
    default: {
      const std::size_t a = rng.index(1, n - 1);
      return combine({{1.0, bipartite_metric(a, n - a)}, {rng.uniform(0.0, 0.5), validate_metric(random_band_matrix(rng, n))}});
    }
  }
}

inline Economy random_economy(Rng& rng, std::size_t n) {
  std::vector<double> labor(n);
  for (double& l : labor) l = rng.uniform(0.2, 2.0);
  const MetricMatrix m = validate_metric(random_band_matrix(rng, n, rng.uniform(0.3, 1.5)));
  return Economy(labor, rng.uniform(1.5, 12.0), freeness_from_metric(m, rng.uniform(0.1, 0.9)));
}

}  // namespace tctest
