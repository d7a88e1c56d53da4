#include "tradecone/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "tradecone/errors.hpp"

namespace tradecone {

namespace {

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

MetricMatrix validate_metric(const Matrix& d, double tol) {
  const std::size_t n = d.size();
  if (n == 0) throw InvalidInput("metric must have at least one point");
  if (!(tol >= 0.0)) throw InvalidInput("tolerance must be nonnegative");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j)))
        throw InvalidInput("distance " + pair_str(i, j) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(d(i, i)) > tol)
      throw NonzeroDiagonalError(i, "d" + pair_str(i, i) + " = " + std::to_string(d(i, i)) + " is not zero");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(d(i, j) - d(j, i)) > tol)
        throw AsymmetryError(i, j, "d" + pair_str(i, j) + " != d" + pair_str(j, i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) < -tol)
        throw NegativeDistanceError(i, j, "d" + pair_str(i, j) + " = " + std::to_string(d(i, j)) + " is negative");
    }
  }

  Matrix clean(n);
  bool degenerate = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::fmax(0.0, 0.5 * (d(i, j) + d(j, i)));
      clean(i, j) = clean(j, i) = v;
      if (v == 0.0) degenerate = true;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (clean(i, j) > clean(i, k) + clean(k, j) + tol) {
          throw TriangleViolation({i, j, k}, "triangle inequality fails: d" + pair_str(i, j) + " > d" +
                                                 pair_str(i, k) + " + d" + pair_str(k, j));
        }
      }
    }
  }
  return MetricMatrix(std::move(clean), degenerate);
}

MetricMatrix bipartite_metric(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InvalidInput("bipartite metric needs both blocs nonempty");
  const std::size_t total = n + m;
  Matrix d(total);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (i == j) continue;
      d(i, j) = ((i < n) != (j < n)) ? 1.0 : 2.0;
    }
  }
  return validate_metric(d);
}

MetricMatrix cut_metric(std::size_t n, const std::vector<std::size_t>& subset) {
  if (n == 0) throw InvalidInput("cut metric needs at least one point");
  std::vector<bool> in(n, false);
  for (std::size_t s : subset) {
    if (s >= n) throw InvalidInput("cut set index " + std::to_string(s) + " out of range");
    in[s] = true;
  }
  const auto count = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  if (count == 0 || count == n) throw EmptyOrFullCut("cut set must be a nonempty proper subset");
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = (in[i] != in[j]) ? 1.0 : 0.0;
  return validate_metric(d);
}

MetricMatrix discrete_metric(std::size_t n) {
  if (n == 0) throw InvalidInput("discrete metric needs at least one point");
  Matrix d(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  return validate_metric(d);
}

MetricMatrix combine(const std::vector<MetricTerm>& terms) {
  if (terms.empty()) throw AllZeroCombination("combination has no terms");
  const std::size_t n = terms.front().metric.size();
  bool any_positive = false;
  double scale = 0.0;
  for (const auto& t : terms) {
    if (t.metric.size() != n) throw DimensionMismatch("combined metrics have different sizes");
    if (!(t.coeff >= 0.0) || !std::isfinite(t.coeff)) throw InvalidInput("combination coefficients must be finite and nonnegative");
    if (t.coeff > 0.0) any_positive = true;
    scale += t.coeff * max_abs_entry(t.metric.matrix());
  }
  if (!any_positive) throw AllZeroCombination("all combination coefficients are zero");
  Matrix acc(n);
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    acc = acc + t.coeff * t.metric.matrix();
  }
  return validate_metric(acc, kConstructedTolerance * std::fmax(1.0, scale));
}

MetricMatrix scaled(const MetricMatrix& m, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("scale factor must be positive");
  return combine({{c, m}});
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw InvalidInput("graph needs at least one vertex");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges_) {
    if (e.i >= n_ || e.j >= n_) throw InvalidInput("edge " + pair_str(e.i, e.j) + " has a vertex out of range");
    if (e.i == e.j) throw InvalidInput("self-loop at vertex " + std::to_string(e.i));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw InvalidInput("edge " + pair_str(e.i, e.j) + " must have a finite positive weight");
    if (!seen.insert(std::minmax(e.i, e.j)).second) throw InvalidInput("duplicate edge " + pair_str(e.i, e.j));
  }
}

std::vector<std::vector<std::size_t>> WeightedGraph::components() const {
  std::vector<std::size_t> parent(n_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) {
    const std::size_t a = find(e.i);
    const std::size_t b = find(e.j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n_, n_);
  for (std::size_t v = 0; v < n_; ++v) {
    const std::size_t r = find(v);
    if (slot[r] == n_) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(v);
  }
  return groups;
}

WeightedGraph complete_bipartite_graph(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InvalidInput("bipartite graph needs both sides nonempty");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j < n + m; ++j) edges.push_back({i, j, 1.0});
  return WeightedGraph(n + m, std::move(edges));
}

namespace {

Matrix shortest_paths(const WeightedGraph& g) {
  const std::size_t n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  Matrix d(n, inf);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  for (const auto& e : g.edges()) {
    d(e.i, e.j) = std::fmin(d(e.i, e.j), e.weight);
    d(e.j, e.i) = d(e.i, e.j);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d(i, k);
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
    }
  return d;
}

void require_connected(const WeightedGraph& g) {
  auto comps = g.components();
  if (comps.size() > 1) {
    std::string msg = "graph is disconnected into " + std::to_string(comps.size()) + " components:";
    for (const auto& c : comps) {
      msg += " {";
      for (std::size_t k = 0; k < c.size(); ++k) msg += (k ? "," : "") + std::to_string(c[k]);
      msg += "}";
    }
    throw DisconnectedGraph(std::move(comps), msg);
  }
}

}  // namespace

MetricMatrix graph_metric(const WeightedGraph& g) {
  require_connected(g);
  Matrix d = shortest_paths(g);
  double scale = 0.0;
  for (const auto& e : g.edges()) scale += e.weight;
  return validate_metric(d, kConstructedTolerance * std::fmax(1.0, scale));
}

std::vector<Edge> redundant_edges(const WeightedGraph& g) {
  require_connected(g);
  const Matrix d = shortest_paths(g);
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k == e.i || k == e.j) continue;
      if (d(e.i, k) + d(k, e.j) <= e.weight + 1e-12) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

}  // namespace tradecone
