#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "support.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/scenario.hpp"
#include "tradecone/spectral.hpp"

using namespace tradecone;

namespace {

/// Euclidean distances of random points in R^3.
MetricMatrix random_euclidean_metric(tctest::Rng& rng, std::size_t n) {
  std::vector<std::array<double, 3>> p(n);
  for (auto& x : p)
    for (double& c : x) c = rng.uniform(-1, 1);
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += (p[i][c] - p[j][c]) * (p[i][c] - p[j][c]);
      d(i, j) = std::sqrt(s);
    }
  return validate_metric(d);
}

}  // namespace

TEST_CASE("barycentric grid") {
  const auto g1 = barycentric_grid(1);
  CHECK(g1 == std::vector<Barycentric>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto g2 = barycentric_grid(2);
  CHECK(g2.size() == 6);
  CHECK(std::find(g2.begin(), g2.end(), Barycentric{0.5, 0.5, 0}) != g2.end());
  const auto g100 = barycentric_grid(100);
  CHECK(g100.size() == 5151);
  for (const auto& p : g100) {
    CHECK(p.alpha >= 0);
    CHECK(p.beta >= 0);
    CHECK(p.gamma >= 0);
    CHECK(std::fabs(p.alpha + p.beta + p.gamma - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(barycentric_grid(0), InvalidInput);
}

TEST_CASE("resolve_metric") {
  CHECK(resolve_metric({BipartiteSpec{3, 2}}) == bipartite_metric(3, 2));
  CHECK(resolve_metric({DiscreteSpec{4}}) == discrete_metric(4));
  CHECK(resolve_metric({CutSpec{6, {5}}}) == cut_metric(6, {5}));
  CHECK(resolve_metric({GraphSpec{3, {{0, 1, 1}, {1, 2, 1}}}})(0, 2) == 2.0);
  CHECK(resolve_metric({ExplicitSpec{bipartite_metric(3, 3).matrix()}}) == bipartite_metric(3, 3));

  CombinationSpec mix;
  mix.terms.push_back({0.5, {CutSpec{6, {5}}}});
  mix.terms.push_back({0.5, {BipartiteSpec{4, 2}}});
  const auto m = resolve_metric({mix});
  const auto c = cut_metric(6, {5});
  const auto k = bipartite_metric(4, 2);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(m(i, j) == 0.5 * c(i, j) + 0.5 * k(i, j));

  CHECK_THROWS_AS(resolve_metric({ExplicitSpec{Matrix{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}}}), TriangleViolation);
  CHECK_THROWS_AS(resolve_metric({CutSpec{3, {}}}), EmptyOrFullCut);
}

TEST_CASE("scenario validation") {
  const std::vector<std::string> names{"A", "B", "C", "D"};
  const Scenario s(names, {BipartiteSpec{2, 2}}, {1, 1, 1, 1}, 5.0, 0.5);
  CHECK(s.metric() == bipartite_metric(2, 2));
  CHECK(s.to_economy().size() == 4);
  CHECK(s.to_economy().phi()(0, 2) == 0.5);

  CHECK_THROWS_AS(Scenario({"A", "A", "C", "D"}, {BipartiteSpec{2, 2}}, {1, 1, 1, 1}, 5.0, 0.5), InvalidInput);
  CHECK_THROWS_AS(Scenario({"A", "B"}, {BipartiteSpec{2, 2}}, {1, 1, 1, 1}, 5.0, 0.5), DimensionMismatch);
  CHECK_THROWS_AS(Scenario(names, {BipartiteSpec{2, 2}}, {1, 1}, 5.0, 0.5), DimensionMismatch);
  CHECK_THROWS_AS(Scenario(names, {BipartiteSpec{2, 2}}, {1, 1, 1, 1}, 5.0, 1.5), TOutOfRange);
  CHECK_THROWS_AS(Scenario(names, {BipartiteSpec{2, 2}}, {1, 1, 1, 1}, 0.5, 0.5), InvalidInput);
}

TEST_CASE("scan invariants") {
  const auto c51 = cut_metric(6, {5});
  const auto k42 = bipartite_metric(4, 2);
  const auto k33 = bipartite_metric(3, 3);
  const auto grid = scan_triangle(c51, k42, k33, 20);
  CHECK(grid.resolution == 20);
  CHECK(grid.vertices.size() == 3);
  REQUIRE(grid.cells.size() == 231);
  for (const auto& c : grid.cells) {
    CHECK(std::fabs(c.alpha + c.beta + c.gamma - 1.0) < 1e-12);
    CHECK(c.stable == (c.index == 1.0));
  }

  const auto& v1 = grid.cells.front();
  CHECK(v1.alpha == 1.0);
  CHECK(v1.stable == mt_stability(c51).stable);
  const auto& v3 = grid.cells.back();
  CHECK(v3.gamma == 1.0);
  CHECK(v3.index == mt_stability(k33).index);
  for (const auto& c : grid.cells)
    if (c.beta == 1.0) CHECK(c.index == mt_stability(k42).index);

  CHECK_THROWS_AS(scan_triangle(c51, k42, discrete_metric(5), 4), DimensionMismatch);
}

TEST_CASE("permuting the vertices permutes the cells") {
  const auto a = cut_metric(6, {5});
  const auto b = bipartite_metric(4, 2);
  const auto c = discrete_metric(6);
  const auto abc = scan_triangle(a, b, c, 20);
  const auto cab = scan_triangle(c, a, b, 20);
  const std::size_t r = 20;
  // cell (i, j, k) of abc is cell (k, i, j) of cab.
  auto position = [r](std::size_t i, std::size_t j) {
    std::size_t pos = 0;
    for (std::size_t ii = r; ii > i; --ii) pos += r - ii + 1;
    return pos + (r - i - j);
  };
  for (const auto& cell : abc.cells) {
    const auto i = static_cast<std::size_t>(std::lround(cell.alpha * r));
    const auto j = static_cast<std::size_t>(std::lround(cell.beta * r));
    const auto k = r - i - j;
    const auto& other = cab.cells[position(k, i)];
    CHECK(other.alpha == doctest::Approx(cell.gamma));
    CHECK(other.stable == cell.stable);
  }
}

TEST_CASE("identical stable vertices give an all-stable grid") {
  const auto d = discrete_metric(6);
  for (const auto& c : scan_triangle(d, d, d, 10).cells) CHECK(c.stable);
}

TEST_CASE("mixtures of negative-type vertices stay stable") {
  tctest::Rng rng(107);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = rng.index(4, 7);
    const auto m1 = random_euclidean_metric(rng, n);
    const auto m2 = random_euclidean_metric(rng, n);
    const auto m3 = random_euclidean_metric(rng, n);
    REQUIRE(is_cnd(m1));
    for (const auto& c : scan_triangle(m1, m2, m3, 20).cells) CHECK(c.stable);
  }
}

TEST_CASE("edge profiles") {
  const auto c51 = cut_metric(6, {5});
  const auto c15 = cut_metric(6, {0});
  const auto d6 = discrete_metric(6);
  const auto k42 = bipartite_metric(4, 2);
  const auto k33 = bipartite_metric(3, 3);
  const auto k24 = bipartite_metric(2, 4);

  const auto p = edge_profile(k42, c51, 51);
  REQUIRE(p.points.size() == 51);
  CHECK(p.points.front().alpha == 0.0);
  CHECK(p.points.back().alpha == 1.0);
  CHECK(p.points.front().stable == mt_stability(k42).stable);
  CHECK(p.points.back().stable == mt_stability(c51).stable);
  REQUIRE(p.first_stable);
  CHECK(*p.first_stable == doctest::Approx(0.68));

  auto first = [](const MetricMatrix& a, const MetricMatrix& b) { return edge_profile(a, b, 51).first_stable.value_or(-1); };
  CHECK(first(k33, c51) == 1.0);
  CHECK(first(k42, c15) == 1.0);
  CHECK(first(k33, c15) == 1.0);
  CHECK(first(k42, d6) == doctest::Approx(0.40));
  CHECK(first(k33, d6) == doctest::Approx(0.50));
  CHECK(first(k24, c15) == doctest::Approx(0.68));

  CHECK_THROWS_AS(edge_profile(k42, c51, 1), InvalidInput);
  CHECK_THROWS_AS(edge_profile(k42, discrete_metric(5), 5), DimensionMismatch);
}
