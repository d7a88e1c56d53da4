#pragma once

// Named scenarios and barycentric stability scans over three vertex metrics.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tradecone/equilibrium.hpp"
#include "tradecone/matrix.hpp"
#include "tradecone/metric.hpp"
#include "tradecone/spectral.hpp"

namespace tradecone {

struct BipartiteSpec {
  std::size_t n;
  std::size_t m;
};

struct CutSpec {
  std::size_t n;
  std::vector<std::size_t> set;
};

struct DiscreteSpec {
  std::size_t n;
};

struct GraphSpec {
  std::size_t n;
  std::vector<Edge> edges;
};

struct ExplicitSpec {
  Matrix matrix;
};

struct CombinationTerm;

struct CombinationSpec {
  std::vector<CombinationTerm> terms;
};

/// Constructive description of a metric, resolved on demand.
struct MetricSpec {
  std::variant<BipartiteSpec, CutSpec, DiscreteSpec, GraphSpec, ExplicitSpec, CombinationSpec> value;
};

struct CombinationTerm {
  double coeff;
  MetricSpec metric;
};

MetricMatrix resolve_metric(const MetricSpec& spec);

/// Labels, metric, labor, eps and t. The constructor resolves the metric and
/// checks label uniqueness, dimensions, eps > 1 and t in (0, 1).
class Scenario {
public:
  Scenario(std::vector<std::string> names, MetricSpec metric_spec, std::vector<double> labor, double eps, double t);

  const std::vector<std::string>& names() const noexcept { return names_; }
  const MetricSpec& metric_spec() const noexcept { return spec_; }
  const MetricMatrix& metric() const noexcept { return metric_; }
  const std::vector<double>& labor() const noexcept { return labor_; }
  double eps() const noexcept { return eps_; }
  double t() const noexcept { return t_; }

  Economy to_economy() const;

private:
  std::vector<std::string> names_;
  MetricSpec spec_;
  MetricMatrix metric_;
  std::vector<double> labor_;
  double eps_;
  double t_;
};

struct Barycentric {
  double alpha;
  double beta;
  double gamma;
  bool operator==(const Barycentric&) const = default;
};

/// (i/r, j/r, k/r) with i+j+k = r; i descending, then j descending.
std::vector<Barycentric> barycentric_grid(std::size_t r);

struct GridCell {
  double alpha;
  double beta;
  double gamma;
  bool stable;
  double index;
  bool operator==(const GridCell&) const = default;
};

struct StabilityGrid {
  std::vector<MetricMatrix> vertices;  // empty when read back from CSV
  std::size_t resolution = 0;
  std::vector<GridCell> cells;
};

StabilityGrid scan_triangle(const MetricMatrix& m1, const MetricMatrix& m2, const MetricMatrix& m3, std::size_t r,
                            const StabilityOptions& opts = {});

struct EdgePoint {
  double alpha;
  bool stable;
  double index;
};

struct EdgeProfile {
  std::vector<EdgePoint> points;       // alpha = k/(samples-1)
  std::optional<double> first_stable;  // smallest sampled alpha that is stable
};

/// Stability along (1-alpha) from + alpha to.
EdgeProfile edge_profile(const MetricMatrix& from, const MetricMatrix& to, std::size_t samples,
                         const StabilityOptions& opts = {});

}  // namespace tradecone
