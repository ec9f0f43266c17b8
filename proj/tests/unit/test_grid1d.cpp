#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "molt/grid1d.hpp"

using namespace molt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("uniform grid nodes", "[mesh1d]") {
  const Grid1D g = Grid1D::uniform(0.0, 1.0, 4);
  REQUIRE(g.num_nodes() == 5);
  const double expect[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t j = 0; j < 5; ++j) CHECK_THAT(g.x(j), WithinAbs(expect[j], 1e-15));
  CHECK(g.is_uniform());
  const Grid1D h = Grid1D::uniform(-1.0, 1.0, 40);
  CHECK(h.num_nodes() == 41);
  CHECK_THAT(h.h(7), WithinRel(0.05, 1e-14));
}

TEST_CASE("grid construction errors", "[mesh1d]") {
  CHECK_THROWS_AS(Grid1D::uniform(0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::uniform(1.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::chebyshev(0.0, 1.0, 2, ChebyshevVariant::full), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::from_nodes({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::from_nodes({0.0}), std::invalid_argument);
}

TEST_CASE("Chebyshev grids", "[mesh1d]") {
  const double pi = std::numbers::pi;
  const Grid1D f = Grid1D::chebyshev(0.0, 1.0, 4, ChebyshevVariant::full);
  REQUIRE(f.num_nodes() == 5);
  CHECK_THAT(f.x(1), WithinAbs(0.5 * (1.0 + std::cos(3 * pi / 4)), 1e-15));
  CHECK_THAT(f.x(2), WithinAbs(0.5, 1e-15));
  // full clusters symmetrically at both ends
  CHECK_THAT(f.h(0), WithinRel(f.h(3), 1e-12));

  const Grid1D h = Grid1D::chebyshev(2.0, 3.0, 10, ChebyshevVariant::half);
  CHECK(h.a() == 2.0);
  CHECK(h.b() == 3.0);
  // half clusters at the right end only
  CHECK(h.h(9) < h.h(0));
  CHECK_THAT(h.x(9), WithinAbs(2.0 + std::cos(pi / 20), 1e-14));
}

TEST_CASE("Chebyshev minimum width shrinks like 1/N^2", "[mesh1d][property]") {
  for (auto v : {ChebyshevVariant::half, ChebyshevVariant::full}) {
    const double w1 = Grid1D::chebyshev(0.0, 1.0, 50, v).min_width();
    const double w2 = Grid1D::chebyshev(0.0, 1.0, 100, v).min_width();
    CHECK_THAT(w1 / w2, WithinRel(4.0, 0.02));
  }
}

TEST_CASE("Chebyshev grids are strictly increasing", "[mesh1d][property]") {
  for (int N = 3; N <= 10000; N = N * 3 / 2 + 1) {
    for (auto v : {ChebyshevVariant::half, ChebyshevVariant::full}) {
      const Grid1D g = Grid1D::chebyshev(-1.0, 1.0, N, v);
      for (std::size_t c = 0; c < g.num_cells(); ++c) REQUIRE(g.h(c) > 0.0);
    }
  }
}

TEST_CASE("uniform stencils are the classical integer stencils", "[mesh1d]") {
  const Grid1D g = Grid1D::uniform(0.0, 1.0, 10);
  const D2Stencil mid = d2_stencil(g, 5);
  REQUIRE(mid.size == 3);
  double w[3] = {0, 0, 0};
  for (int k = 0; k < 3; ++k) w[mid.nodes[k] - 4] = mid.weights[k];
  CHECK_THAT(w[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(w[1], WithinAbs(-2.0, 1e-12));
  CHECK_THAT(w[2], WithinAbs(1.0, 1e-12));

  const D2Stencil left = d2_stencil(g, 0);
  REQUIRE(left.size == 4);
  const double expect[] = {2.0, -5.0, 4.0, -1.0};
  for (int k = 0; k < 4; ++k) CHECK_THAT(left.weights[k], WithinAbs(expect[left.nodes[k]], 1e-12));
  CHECK_THROWS_AS(d2_stencil(g, 11), std::out_of_range);
}

TEST_CASE("stencils are exact for quadratics on random grids", "[mesh1d][property]") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> cell(0.2, 1.0), coef(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x{0.0};
    const int n = 4 + trial % 12;
    for (int i = 0; i < n; ++i) x.push_back(x.back() + cell(rng));
    const Grid1D g = Grid1D::from_nodes(x);
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng);
    std::vector<double> u(x.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = c0 + c1 * x[j] + c2 * x[j] * x[j];
    for (std::size_t j = 0; j < u.size(); ++j) {
      const D2Stencil s = d2_stencil(g, j);
      const double got = s.apply(u) / (s.ref_width * s.ref_width);
      CHECK_THAT(got, WithinAbs(2.0 * c2, 1e-9 * (1.0 + std::abs(c2))));
    }
  }
}

TEST_CASE("ghost nodes give a centred stencil at the ends", "[mesh1d]") {
  const Grid1D g = Grid1D::uniform(0.0, 1.0, 10);
  const D2Stencil s = d2_stencil(g, 0, GhostNodes{-0.1, std::nullopt});
  REQUIRE(s.size == 3);
  std::vector<double> u(g.num_nodes());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(g.x(j));
  const double ghost = std::sin(-0.1);
  CHECK_THAT(s.apply(u, ghost) / (s.ref_width * s.ref_width), WithinAbs(-std::sin(0.0), 2e-3));
}

TEST_CASE("fd_weights reproduce known formulas", "[mesh1d]") {
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const auto w = fd_weights(0.0, xs, 2);
  CHECK_THAT(w[0], WithinAbs(1.0, 1e-14));
  CHECK_THAT(w[1], WithinAbs(-2.0, 1e-14));
  CHECK_THAT(w[2], WithinAbs(1.0, 1e-14));
  const auto d1 = fd_weights(0.0, xs, 1);
  CHECK_THAT(d1[0], WithinAbs(-0.5, 1e-14));
  CHECK_THAT(d1[2], WithinAbs(0.5, 1e-14));
  CHECK_THROWS_AS(fd_weights(0.0, xs, 3), std::invalid_argument);
}
