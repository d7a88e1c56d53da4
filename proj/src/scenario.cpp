#include "tradecone/scenario.hpp"

#include <cmath>
#include <set>
#include <string>
#include <type_traits>

#include "parallel.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/freeness.hpp"

namespace tradecone {

MetricMatrix resolve_metric(const MetricSpec& spec) {
  return std::visit(
      [](const auto& s) -> MetricMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BipartiteSpec>) {
          return bipartite_metric(s.n, s.m);
        } else if constexpr (std::is_same_v<T, CutSpec>) {
          return cut_metric(s.n, s.set);
        } else if constexpr (std::is_same_v<T, DiscreteSpec>) {
          return discrete_metric(s.n);
        } else if constexpr (std::is_same_v<T, GraphSpec>) {
          return graph_metric(WeightedGraph(s.n, s.edges));
        } else if constexpr (std::is_same_v<T, ExplicitSpec>) {
          return validate_metric(s.matrix);
        } else {
          std::vector<MetricTerm> terms;
          terms.reserve(s.terms.size());
          for (const auto& term : s.terms) terms.push_back({term.coeff, resolve_metric(term.metric)});
          return combine(terms);
        }
      },
      spec.value);
}

Scenario::Scenario(std::vector<std::string> names, MetricSpec metric_spec, std::vector<double> labor, double eps,
                   double t)
    : names_(std::move(names)),
      spec_(std::move(metric_spec)),
      metric_(resolve_metric(spec_)),
      labor_(std::move(labor)),
      eps_(eps),
      t_(t) {
  const std::size_t n = metric_.size();
  if (names_.size() != n)
    throw DimensionMismatch(std::to_string(names_.size()) + " country labels for a metric on " + std::to_string(n) +
                            " points");
  if (labor_.size() != n)
    throw DimensionMismatch(std::to_string(labor_.size()) + " labor entries for a metric on " + std::to_string(n) +
                            " points");
  std::set<std::string> seen;
  for (const auto& name : names_)
    if (!seen.insert(name).second) throw InvalidInput("duplicate country label '" + name + "'");
  if (!(t_ > 0.0 && t_ < 1.0)) throw TOutOfRange("t must lie in (0, 1), got " + std::to_string(t_));
  if (!(eps_ > 1.0) || !std::isfinite(eps_)) throw InvalidInput("eps must exceed 1, got " + std::to_string(eps_));
}

Economy Scenario::to_economy() const { return Economy(labor_, eps_, freeness_from_metric(metric_, t_)); }

std::vector<Barycentric> barycentric_grid(std::size_t r) {
  if (r == 0) throw InvalidInput("grid resolution must be at least 1");
  const double dr = static_cast<double>(r);
  std::vector<Barycentric> out;
  out.reserve((r + 1) * (r + 2) / 2);
  for (std::size_t i = r + 1; i-- > 0;)
    for (std::size_t j = r - i + 1; j-- > 0;) {
      const std::size_t k = r - i - j;
      out.push_back({static_cast<double>(i) / dr, static_cast<double>(j) / dr, static_cast<double>(k) / dr});
    }
  return out;
}

StabilityGrid scan_triangle(const MetricMatrix& m1, const MetricMatrix& m2, const MetricMatrix& m3, std::size_t r,
                            const StabilityOptions& opts) {
  if (m1.size() != m2.size() || m1.size() != m3.size())
    throw DimensionMismatch("triangle vertices have different sizes");
  const auto points = barycentric_grid(r);
  StabilityGrid grid;
  grid.vertices = {m1, m2, m3};
  grid.resolution = r;
  grid.cells.resize(points.size());
  detail::parallel_for(points.size(), [&](std::size_t c) {
    const auto& p = points[c];
    const auto res = mt_stability(combine({{p.alpha, m1}, {p.beta, m2}, {p.gamma, m3}}), opts);
    grid.cells[c] = {p.alpha, p.beta, p.gamma, res.stable, res.index};
  });
  return grid;
}

EdgeProfile edge_profile(const MetricMatrix& from, const MetricMatrix& to, std::size_t samples,
                         const StabilityOptions& opts) {
  if (from.size() != to.size()) throw DimensionMismatch("edge endpoints have different sizes");
  if (samples < 2) throw InvalidInput("edge profile needs at least 2 samples");
  EdgeProfile out;
  out.points.resize(samples);
  const double last = static_cast<double>(samples - 1);
  detail::parallel_for(samples, [&](std::size_t k) {
    const double alpha = static_cast<double>(k) / last;
    const auto res = mt_stability(combine({{1.0 - alpha, from}, {alpha, to}}), opts);
    out.points[k] = {alpha, res.stable, res.index};
  });
  for (const auto& p : out.points)
    if (p.stable) {
      out.first_stable = p.alpha;
      break;
    }
  return out;
}

}  // namespace tradecone
