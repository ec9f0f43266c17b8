#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "molt/adi2d.hpp"

using namespace molt;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// cos(pi x) cos(pi y) cos(sqrt2 pi t) on the centred unit square, Dirichlet walls.
double cavity_error(int cells, double cfl, double T, ExecPolicy policy = ExecPolicy::parallel) {
  const double dx = 1.0 / cells;
  const auto geom = Geometry::rectangle(1.0, 1.0, BoundaryKind::dirichlet);
  ADISolver solver(build_lines(geom, dx, dx), SchemeParams(2.0, 1.0, cfl * dx), {}, policy);
  auto mode = [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); };
  auto lap = [&](double x, double y) { return -2.0 * pi * pi * mode(x, y); };
  Field2D s = solver.init(mode, [](double, double) { return 0.0; }, lap);
  const auto& nodes = solver.domain().nodes;
  double err = 0.0;
  while (s.t < T - 1e-12) {
    solver.advance(s);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].on_grid) continue;
      const double e = s.u_curr[i] - mode(nodes[i].x, nodes[i].y) * std::cos(std::sqrt(2.0) * pi * s.t);
      sum += e * e;
      ++count;
    }
    err = std::max(err, std::sqrt(sum / static_cast<double>(count)));
  }
  return err;
}

}  // namespace

TEST_CASE("line inversion", "[adi2d]") {
  const double alpha = 6.0;
  SECTION("zero right-hand side") {
    const Grid1D g = Grid1D::uniform(0.0, 1.0, 20);
    const auto w = invert_helmholtz_line(std::vector<double>(21, 0.0), g, alpha, BoundaryKind::dirichlet,
                                         BoundaryKind::dirichlet);
    CHECK(max_abs(w) == 0.0);
  }
  SECTION("constants under Neumann and periodic ends") {
    const Grid1D g = Grid1D::chebyshev(0.0, 1.0, 20, ChebyshevVariant::full);
    for (auto k : {BoundaryKind::neumann, BoundaryKind::periodic}) {
      const auto w = invert_helmholtz_line(std::vector<double>(21, -2.0), g, alpha, k, k);
      for (double v : w) CHECK_THAT(v, WithinAbs(2.0, 1e-12));
    }
  }
  SECTION("manufactured solution converges at second order") {
    double prev = 0.0;
    for (int N : {20, 40, 80}) {
      const Grid1D g = Grid1D::uniform(0.0, 1.0, N);
      std::vector<double> rhs(g.num_nodes());
      for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] = -(pi * pi / (alpha * alpha) + 1.0) * std::sin(pi * g.x(j));
      const auto w = invert_helmholtz_line(rhs, g, alpha, BoundaryKind::dirichlet, BoundaryKind::dirichlet);
      double e = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) e = std::max(e, std::abs(w[j] - std::sin(pi * g.x(j))));
      if (prev > 0.0) CHECK(std::log2(prev / e) > 1.9);
      prev = e;
    }
  }
  SECTION("outflow ends are rejected") {
    const Grid1D g = Grid1D::uniform(0.0, 1.0, 10);
    CHECK_THROWS_AS(invert_helmholtz_line(std::vector<double>(11, 0.0), g, alpha, BoundaryKind::outflow,
                                          BoundaryKind::dirichlet),
                    std::invalid_argument);
  }
}

TEST_CASE("decomposed line convolution equals the single-piece one", "[adi2d]") {
  const Grid1D g = Grid1D::uniform(-0.5, 0.5, 40);
  std::vector<double> f(g.num_nodes());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::exp(g.x(j)) * std::cos(5.0 * g.x(j));
  const LineConvolver whole(g, 9.0);
  const LineConvolver halves(g, 9.0, {20});
  std::vector<double> a(f.size()), b(f.size()), scratch(f.size());
  whole.convolve(f, a, scratch);
  halves.convolve(f, b, scratch);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK_THAT(a[j], WithinAbs(b[j], 1e-13));
}

TEST_CASE("quiescence and constant preservation", "[adi2d][property]") {
  const auto c = Geometry::circle(1.0);
  ADISolver zero(build_lines(c, 0.05, 0.05), SchemeParams(2.0, 1.0, 0.1));
  Field2D s = zero.init([](double, double) { return 0.0; }, [](double, double) { return 0.0; });
  for (int n = 0; n < 10; ++n) zero.advance(s);
  CHECK(max_abs(s.u_curr) == 0.0);

  const auto box = Geometry::rectangle(1.0, 2.0, BoundaryKind::neumann);
  ADISolver neu(build_lines(box, 0.05, 0.05), SchemeParams(2.0, 1.0, 0.2));
  Field2D one = neu.init([](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                         [](double, double) { return 0.0; });
  for (int n = 0; n < 200; ++n) neu.advance(one);
  for (double v : one.u_curr) CHECK_THAT(v, WithinAbs(1.0, 1e-10));
}

TEST_CASE("serial and parallel sweeps agree", "[adi2d]") {
  const auto dc = Geometry::double_circle(0.3, 0.2);
  const Domain2D d = build_lines(dc, 0.014, 0.0086666666666666667);
  auto bump = [](double x, double y) { return std::exp(-100.0 * ((x - 0.1) * (x - 0.1) + y * y)); };
  ADISolver a(d, SchemeParams(2.0, 1.0, 0.02), {}, ExecPolicy::serial);
  ADISolver b(d, SchemeParams(2.0, 1.0, 0.02), {}, ExecPolicy::parallel);
  Field2D sa = a.init(bump, [](double, double) { return 0.0; });
  Field2D sb = b.init(bump, [](double, double) { return 0.0; });
  for (int n = 0; n < 10; ++n) {
    a.advance(sa);
    b.advance(sb);
  }
  for (std::size_t i = 0; i < sa.u_curr.size(); ++i) CHECK(sa.u_curr[i] == sb.u_curr[i]);
}

TEST_CASE("the two sweep orders commute on a rectangle", "[adi2d]") {
  const auto box = Geometry::rectangle(1.0, 1.0, BoundaryKind::dirichlet);
  ADISolver solver(build_lines(box, 0.05, 0.05), SchemeParams(2.0, 1.0, 0.1));
  auto mode = [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y) + 0.3 * std::cos(pi * x) * std::sin(2 * pi * y); };
  Field2D s = solver.init(mode, [](double, double) { return 0.0; });
  solver.advance(s);
  const auto& zx = solver.z_xy();
  const auto& zy = solver.z_yx();
  REQUIRE(zx.size() == zy.size());
  for (std::size_t i = 0; i < zx.size(); ++i) CHECK_THAT(zx[i], WithinAbs(zy[i], 1e-12));
}

TEST_CASE("Dirichlet cavity converges at second order", "[adi2d]") {
  for (double cfl : {0.5, 2.0}) {
    const double e1 = cavity_error(20, cfl, 0.5);
    const double e2 = cavity_error(40, cfl, 0.5);
    const double e3 = cavity_error(80, cfl, 0.5);
    INFO("cfl " << cfl << ": " << e1 << " " << e2 << " " << e3);
    CHECK(std::log2(e1 / e2) > 1.85);
    CHECK(std::log2(e2 / e3) > 1.9);
  }
}

TEST_CASE("large time steps stay bounded", "[adi2d][property]") {
  const auto box = Geometry::rectangle(1.0, 1.0, BoundaryKind::dirichlet);
  ADISolver solver(build_lines(box, 0.05, 0.05), SchemeParams(2.0, 1.0, 0.5));
  auto mode = [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); };
  Field2D s = solver.init(mode, [](double, double) { return 0.0; });
  for (int n = 0; n < 2000; ++n) solver.advance(s);
  CHECK(max_abs(s.u_curr) <= 5.0);
}
