#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/freeness.hpp"

using namespace tradecone;

TEST_CASE("freeness from metric") {
  const double t = 0.3;
  const auto phi = freeness_from_metric(bipartite_metric(3, 2), t);
  CHECK(phi(0, 0) == 1.0);
  CHECK(phi(0, 3) == doctest::Approx(t));
  CHECK(phi(0, 1) == doctest::Approx(t * t));
  CHECK(phi(3, 4) == doctest::Approx(t * t));
  CHECK_FALSE(phi.degenerate());

  const auto d3 = freeness_from_metric(discrete_metric(3), 0.5);
  CHECK(d3(0, 2) == 0.5);

  const auto cut = freeness_from_metric(cut_metric(4, {0}), 0.2);
  CHECK(cut(1, 2) == 1.0);
  CHECK(cut.degenerate());

  CHECK_THROWS_AS(freeness_from_metric(discrete_metric(2), 0.0), TOutOfRange);
  CHECK_THROWS_AS(freeness_from_metric(discrete_metric(2), 1.0), TOutOfRange);
  CHECK_THROWS_AS(freeness_from_metric(discrete_metric(2), -0.5), TOutOfRange);
}

TEST_CASE("friction metric") {
  Matrix p(3, std::exp(-1.0));
  for (std::size_t i = 0; i < 3; ++i) p(i, i) = 1.0;
  const auto m = friction_metric(validate_freeness(p));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == doctest::Approx(i == j ? 0.0 : 1.0).epsilon(1e-15));

  const auto k32 = bipartite_metric(3, 2);
  const auto back = friction_metric(freeness_from_metric(k32, std::exp(-1.0)));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::fabs(back(i, j) - k32(i, j)) < 1e-12);

  const auto half = friction_metric(freeness_from_metric(k32, 0.5));
  CHECK(half(0, 3) == doctest::Approx(0.6931471805599453));
  CHECK(half(0, 1) == doctest::Approx(1.3862943611198906));

  CHECK(friction_metric(freeness_from_metric(cut_metric(3, {0}), 0.5)).degenerate());
}

TEST_CASE("validate_freeness errors") {
  CHECK_THROWS_AS(validate_freeness(Matrix::identity(3)), RangeError);
  const auto ones = validate_freeness(Matrix(3, 1.0));
  CHECK(ones.degenerate());
  try {
    validate_freeness(Matrix{{1, 0.9, 0.5}, {0.9, 1, 0.9}, {0.5, 0.9, 1}});
    FAIL("expected a multiplicative triangle violation");
  } catch (const MultiplicativeTriangleViolation& e) {
    CHECK(e.witness == std::array<std::size_t, 3>{0, 1, 2});
  }
  CHECK_THROWS_AS(validate_freeness(Matrix{{1, 0.5}, {0.4, 1}}), AsymmetryError);
  CHECK_THROWS_AS(validate_freeness(Matrix{{0.9, 0.5}, {0.5, 1}}), DiagonalError);
  CHECK_THROWS_AS(validate_freeness(Matrix{{1, 1.5}, {1.5, 1}}), RangeError);
}

TEST_CASE("round trip through the friction metric") {
  tctest::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.index(2, 7);
    const auto m = tctest::random_metric(rng, n);
    for (int k = 1; k <= 9; ++k) {
      const double t = 0.1 * k;
      const auto back = friction_metric(freeness_from_metric(m, t));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(std::fabs(back(i, j) + std::log(t) * m(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("freeness entries grow with t") {
  tctest::Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.index(2, 7);
    const auto m = tctest::random_metric(rng, n);
    const double t1 = rng.uniform(0.01, 0.98);
    const double t2 = rng.uniform(t1, 0.99);
    const auto p1 = freeness_from_metric(m, t1);
    const auto p2 = freeness_from_metric(m, t2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m(i, j) > 0) CHECK(p1(i, j) <= p2(i, j));
  }
}

TEST_CASE("limits toward identity and all-ones") {
  tctest::Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.index(2, 7);
    const auto m = validate_metric(tctest::random_band_matrix(rng, n));
    const auto lo = freeness_from_metric(m, 1e-6);
    const auto hi = freeness_from_metric(m, 1.0 - 1e-6);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::fabs(lo(i, j) - (i == j ? 1.0 : 0.0)) < 1e-4);
        CHECK(std::fabs(hi(i, j) - 1.0) < 1e-4);
      }
  }
}

TEST_CASE("freeness of a metric passes validation") {
  tctest::Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.index(2, 7);
    const auto m = tctest::random_metric(rng, n);
    CHECK_NOTHROW(validate_freeness(freeness_from_metric(m, rng.uniform(0.05, 0.95)).matrix()));
  }
  FreenessFamily fam(discrete_metric(3));
  CHECK(fam.at(0.25)(0, 1) == 0.25);
}
