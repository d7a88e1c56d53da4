#pragma once

// Pseudo-metrics on n points: validation, the canonical families (bipartite,
// cut, discrete, graph shortest-path) and nonnegative combinations.

#include <cstddef>
#include <utility>
#include <vector>

#include "tradecone/matrix.hpp"

namespace tradecone {

/// Absolute triangle tolerance for matrices built by this library.
inline constexpr double kConstructedTolerance = 1e-12;

/// A validated pseudo-metric. Construct through validate_metric or one of the
/// generators; the distance matrix is immutable afterwards.
class MetricMatrix {
public:
  std::size_t size() const noexcept { return d_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }
  const Matrix& matrix() const noexcept { return d_; }

  /// True iff some off-diagonal distance is exactly zero.
  bool degenerate() const noexcept { return degenerate_; }

  bool operator==(const MetricMatrix& o) const { return d_ == o.d_; }

private:
  friend MetricMatrix validate_metric(const Matrix& d, double tol);
  explicit MetricMatrix(Matrix d, bool degenerate) : d_(std::move(d)), degenerate_(degenerate) {}

  Matrix d_;
  bool degenerate_ = false;
};

/// Checks the pseudo-metric axioms within `tol` and returns the validated
/// matrix. Diagonal and symmetry are checked exactly up to `tol`; the returned
/// matrix is symmetrised and has an exact zero diagonal.
MetricMatrix validate_metric(const Matrix& d, double tol = kConstructedTolerance);

/// K_{n,m}: distance 1 across the two blocs {0..n-1} and {n..n+m-1}, 2 within.
MetricMatrix bipartite_metric(std::size_t n, std::size_t m);

/// Cut pseudo-metric: 1 between points on opposite sides of `subset`, else 0.
MetricMatrix cut_metric(std::size_t n, const std::vector<std::size_t>& subset);

/// Every pair of distinct points at distance 1.
MetricMatrix discrete_metric(std::size_t n);

struct MetricTerm {
  double coeff;
  MetricMatrix metric;
};

/// Entrywise sum of coeff * metric. Coefficients must be nonnegative and not
/// all zero; all metrics must share one size.
MetricMatrix combine(const std::vector<MetricTerm>& terms);

/// Same metric with every distance multiplied by c > 0.
MetricMatrix scaled(const MetricMatrix& m, double c);

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;
  bool operator==(const Edge&) const = default;
};

/// Undirected graph with positive distance weights. The constructor checks
/// indices, weights and duplicate pairs; connectivity is checked by the
/// operations that need it.
class WeightedGraph {
public:
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Connected components as sorted vertex lists, ordered by smallest vertex.
  std::vector<std::vector<std::size_t>> components() const;

private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

/// Unit-weight complete bipartite graph K_{n,m} on n+m vertices.
WeightedGraph complete_bipartite_graph(std::size_t n, std::size_t m);

/// All-pairs shortest-path distances (Floyd-Warshall). Throws DisconnectedGraph.
MetricMatrix graph_metric(const WeightedGraph& g);

/// Edges (i,j) for which a third vertex k has d(i,k) + d(k,j) <= w(i,j) + 1e-12.
/// Removing all of them leaves graph_metric unchanged.
std::vector<Edge> redundant_edges(const WeightedGraph& g);

}  // namespace tradecone
