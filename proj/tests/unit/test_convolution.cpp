#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "molt/convolution.hpp"

using namespace molt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// alpha * int_a^b u(y) exp(-alpha |x - y|) dy by adaptive quadrature, split at x.
double exact_conv(const std::function<double(double)>& u, double x, double a, double b, double alpha) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double s = 0.0;
  if (x > a) s += GK::integrate([&](double y) { return u(y) * std::exp(-alpha * (x - y)); }, a, x, 15, 1e-14);
  if (x < b) s += GK::integrate([&](double y) { return u(y) * std::exp(-alpha * (y - x)); }, x, b, 15, 1e-14);
  return alpha * s;
}

std::vector<Grid1D> test_grids() {
  return {Grid1D::uniform(-1.0, 1.0, 32), Grid1D::chebyshev(-1.0, 1.0, 32, ChebyshevVariant::full),
          Grid1D::chebyshev(-1.0, 1.0, 32, ChebyshevVariant::half)};
}

}  // namespace

TEST_CASE("fast_convolve is exact for polynomials of degree <= 2", "[conv1d]") {
  const std::vector<std::function<double(double)>> polys{
      [](double) { return 1.0; }, [](double x) { return x; }, [](double x) { return x * x; },
      [](double x) { return 0.3 - 1.7 * x + 2.2 * x * x; }};
  for (const Grid1D& g : test_grids()) {
    for (double alpha : {0.5, 4.0, 40.0}) {
      for (const auto& p : polys) {
        std::vector<double> u(g.num_nodes());
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = p(g.x(j));
        const ConvResult r = fast_convolve(u, g, alpha);
        for (std::size_t j = 0; j < u.size(); ++j) {
          const double ref = exact_conv(p, g.x(j), g.a(), g.b(), alpha);
          CHECK_THAT(r.I[j], WithinRel(ref, 1e-10) || WithinAbs(ref, 1e-13));
        }
      }
    }
  }
}

TEST_CASE("characteristics split the convolution", "[conv1d]") {
  const Grid1D g = Grid1D::chebyshev(0.0, 2.0, 40, ChebyshevVariant::half);
  std::vector<double> u(g.num_nodes());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::cos(3.0 * g.x(j));
  const ConvResult r = fast_convolve(u, g, 12.0);
  CHECK(r.IL.front() == 0.0);
  CHECK(r.IR.back() == 0.0);
  for (std::size_t j = 0; j < u.size(); ++j) CHECK_THAT(r.I[j], WithinAbs(r.IL[j] + r.IR[j], 1e-14));
}

TEST_CASE("fast_convolve is second order for smooth data", "[conv1d][property]") {
  auto f = [](double x) { return std::sin(2.0 * x) + std::exp(x); };
  double prev = 0.0;
  for (int N : {40, 80, 160}) {
    const Grid1D g = Grid1D::uniform(0.0, 1.0, N);
    std::vector<double> u(g.num_nodes());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = f(g.x(j));
    const ConvResult r = fast_convolve(u, g, 30.0);
    double err = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) err = std::max(err, std::abs(r.I[j] - exact_conv(f, g.x(j), 0.0, 1.0, 30.0)));
    if (prev > 0.0) CHECK(std::log2(prev / err) > 1.8);
    prev = err;
  }
}

TEST_CASE("fast_convolve is linear", "[conv1d][property]") {
  const Grid1D g = Grid1D::chebyshev(-1.0, 1.0, 25, ChebyshevVariant::full);
  std::vector<double> u(g.num_nodes()), v(g.num_nodes()), w(g.num_nodes());
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] = std::sin(5.0 * g.x(j));
    v[j] = g.x(j) * g.x(j) * g.x(j);
    w[j] = 2.0 * u[j] - 3.0 * v[j];
  }
  const auto ru = fast_convolve(u, g, 9.0), rv = fast_convolve(v, g, 9.0), rw = fast_convolve(w, g, 9.0);
  for (std::size_t j = 0; j < u.size(); ++j) CHECK_THAT(rw.I[j], WithinAbs(2.0 * ru.I[j] - 3.0 * rv.I[j], 1e-13));
}

TEST_CASE("allocation-free form matches", "[conv1d]") {
  const Grid1D g = Grid1D::uniform(0.0, 1.0, 64);
  const LineKernel k(g, 20.0);
  std::vector<double> u(g.num_nodes()), out(g.num_nodes());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::exp(-20.0 * (g.x(j) - 0.4) * (g.x(j) - 0.4));
  fast_convolve_into(u, k, out);
  const ConvResult r = fast_convolve(u, k);
  for (std::size_t j = 0; j < u.size(); ++j) CHECK(out[j] == r.I[j]);
}

TEST_CASE("kernel decay profiles and assemble", "[conv1d]") {
  const Grid1D g = Grid1D::uniform(0.0, 2.0, 20);
  const double alpha = 1.5;
  const LineKernel k(g, alpha);
  CHECK_THAT(k.mu(), WithinRel(std::exp(-3.0), 1e-14));
  for (std::size_t j = 0; j < g.num_nodes(); ++j) {
    CHECK_THAT(k.decay_from_left()[j], WithinRel(std::exp(-alpha * g.x(j)), 1e-13));
    CHECK_THAT(k.decay_from_right()[j], WithinRel(std::exp(-alpha * (2.0 - g.x(j))), 1e-13));
  }
  const std::vector<double> I(g.num_nodes(), 0.25);
  const auto w = assemble(I, 2.0, -1.0, k);
  for (std::size_t j = 0; j < g.num_nodes(); ++j)
    CHECK_THAT(w[j], WithinAbs(0.25 + 2.0 * k.decay_from_left()[j] - k.decay_from_right()[j], 1e-14));
}

TEST_CASE("constant data: convolution of one", "[conv1d]") {
  const Grid1D g = Grid1D::chebyshev(-1.0, 1.0, 32, ChebyshevVariant::full);
  const std::vector<double> u(g.num_nodes(), 1.0);
  const ConvResult r = fast_convolve(u, g, 3.0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = g.x(j);
    CHECK_THAT(r.I[j], WithinAbs(2.0 - std::exp(-3.0 * (x + 1.0)) - std::exp(-3.0 * (1.0 - x)), 1e-14));
  }
}
