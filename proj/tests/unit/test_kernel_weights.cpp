#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>

#include "molt/kernel_weights.hpp"

using namespace molt;
using mp = boost::multiprecision::cpp_bin_float_50;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// nu * int_0^1 q(z) exp(-nu z) dz in 50-digit arithmetic.
double moment(double nu, const std::function<mp(mp)>& q) {
  const mp n = nu;
  auto f = [&](mp z) { return n * q(z) * exp(-n * z); };
  return static_cast<double>(boost::math::quadrature::gauss_kronrod<mp, 31>::integrate(f, mp(0), mp(1), 20, mp(1e-40)));
}

// Closed forms evaluated in 50 digits (reference for the series branch).
struct ClosedMP {
  double P, Q, R;
};
ClosedMP closed_mp(double nu_d) {
  const mp nu = nu_d, d = exp(-nu);
  return {static_cast<double>(1 - (1 - d) / nu), static_cast<double>(-d + (1 - d) / nu),
          static_cast<double>((1 - d) / (nu * nu) - (1 + d) / (2 * nu))};
}

}  // namespace

TEST_CASE("exp_int matches the moment integrals", "[kernelweights]") {
  for (double nu : {1e-8, 1e-4, 1e-3, 0.2, 0.999, 1.0, 2.0, 10.0, 50.0}) {
    for (int m = 0; m <= 3; ++m) {
      const double fact = m == 0 ? 1 : m == 1 ? 1 : m == 2 ? 2 : 6;
      const double ref = moment(nu, [m, fact](mp z) { return pow(z, m) / fact; });
      CHECK_THAT(exp_int(m, nu), WithinRel(ref, 1e-12));
    }
  }
}

TEST_CASE("exp_int closed values", "[kernelweights]") {
  CHECK_THAT(exp_int(0, 0.7), WithinRel(1.0 - std::exp(-0.7), 1e-14));
  CHECK_THAT(exp_int(1, 1.0), WithinRel(1.0 - 2.0 * std::exp(-1.0), 1e-14));
  CHECK_THAT(exp_int(2, 1.0), WithinRel(1.0 - 2.5 * std::exp(-1.0), 1e-14));
}

TEST_CASE("exp_int rejects bad arguments", "[kernelweights]") {
  CHECK_THROWS_AS(exp_int(4, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_int(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_int(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(exp_int(1, -2.0), std::domain_error);
}

TEST_CASE("compact Simpson weights match quadrature of the interpolant", "[kernelweights]") {
  for (double nu : {1e-8, 1e-4, 0.1, 0.2, 1.0, 2.0, 10.0, 50.0}) {
    const ConvWeights w = simpson_weights(nu);
    CHECK_THAT(w.P, WithinRel(moment(nu, [](mp z) { return 1 - z; }), 1e-12));
    CHECK_THAT(w.Q, WithinRel(moment(nu, [](mp z) { return z; }), 1e-12));
    CHECK_THAT(w.R, WithinRel(moment(nu, [](mp z) { return (z * z - z) / 2; }), 1e-12));
    CHECK_THAT(w.d, WithinRel(std::exp(-nu), 1e-15));
  }
}

TEST_CASE("Simpson weights: E-combinations", "[kernelweights]") {
  for (double nu : {1e-8, 1e-4, 0.1, 1.0, 10.0, 50.0}) {
    const ConvWeights w = simpson_weights(nu);
    const double e0 = exp_int(0, nu), e1 = exp_int(1, nu), e2 = exp_int(2, nu);
    CHECK_THAT(w.P, WithinAbs(e0 - e1, 1e-12));
    CHECK_THAT(w.Q, WithinAbs(e1, 1e-12));
    CHECK_THAT(w.R, WithinAbs(e2 - 0.5 * e1, 1e-12));
  }
}

TEST_CASE("Simpson weights at nu = 1", "[kernelweights]") {
  const ConvWeights w = simpson_weights(1.0);
  CHECK_THAT(w.d, WithinAbs(0.367879441, 1e-9));
  CHECK_THAT(w.P, WithinAbs(0.367879441, 1e-9));
  CHECK_THAT(w.Q, WithinAbs(0.264241118, 1e-9));
  CHECK_THAT(w.R, WithinAbs(-0.051819161, 1e-9));
}

TEST_CASE("Simpson weights: small and large cell limits", "[kernelweights]") {
  const ConvWeights s = simpson_weights(1e-6);
  CHECK_THAT(s.P, WithinRel(0.5e-6, 1e-6));
  CHECK_THAT(s.Q, WithinRel(0.5e-6, 1e-6));
  CHECK_THAT(s.R, WithinRel(-1e-6 / 12.0, 1e-6));
  const ConvWeights l = simpson_weights(50.0);
  CHECK_THAT(l.P, WithinRel(1.0 - 1.0 / 50, 1e-14));
  CHECK_THAT(l.Q, WithinRel(1.0 / 50, 1e-12));
  CHECK_THAT(l.R, WithinRel(1.0 / 2500 - 1.0 / 100, 1e-12));
}

TEST_CASE("series branch agrees with extended-precision closed forms", "[kernelweights]") {
  for (double nu : {1e-6, 1e-3, 0.5, 0.9}) {
    const ConvWeights w = simpson_weights(nu);
    const ClosedMP c = closed_mp(nu);
    CHECK_THAT(w.P, WithinRel(c.P, 1e-12));
    CHECK_THAT(w.Q, WithinRel(c.Q, 1e-12));
    CHECK_THAT(w.R, WithinRel(c.R, 1e-12));
  }
}

TEST_CASE("Simpson weight invariants over a sweep of widths", "[kernelweights][property]") {
  for (double nu = 1e-9; nu < 200.0; nu *= 1.37) {
    const ConvWeights w = simpson_weights(nu);
    INFO("nu = " << nu);
    CHECK(w.d > 0.0);
    CHECK(w.d <= 1.0);
    CHECK(w.P >= 0.0);
    CHECK(w.Q >= 0.0);
    CHECK(w.R <= 0.0);
    CHECK_THAT(w.P + w.Q, WithinRel(-std::expm1(-nu), 1e-12));
  }
  CHECK_THROWS_AS(simpson_weights(0.0), std::domain_error);
}

TEST_CASE("outflow weights match quadrature of the temporal interpolant", "[kernelweights]") {
  // nodes z = -1, 0, 1 carry u^{n+1}, u^n, u^{n-1}
  for (double beta : {0.2, 1.0, 2.0, 10.0, 20.0, 50.0}) {
    const OutflowWeights w = outflow_weights(beta);
    CHECK_THAT(w.gamma0, WithinRel(moment(beta, [](mp z) { return z * (z - 1) / 2; }), 1e-12));
    CHECK_THAT(w.gamma1, WithinRel(moment(beta, [](mp z) { return 1 - z * z; }), 1e-12));
    CHECK_THAT(w.gamma2, WithinRel(moment(beta, [](mp z) { return z * (z + 1) / 2; }), 1e-12));
    CHECK_THAT(w.gamma0 + w.gamma1 + w.gamma2, WithinRel(-std::expm1(-beta), 1e-13));
    CHECK(w.Gamma0 == 0.5 * beta * beta * w.gamma0);
    CHECK(w.Gamma1 == w.gamma1 - w.gamma0 * (beta * beta - 2.0));
    CHECK(w.Gamma2 == w.gamma2 - w.gamma0);
  }
  CHECK_THROWS_AS(outflow_weights(0.0), std::domain_error);
}

TEST_CASE("outflow weights for beta = 2", "[kernelweights]") {
  const OutflowWeights w = outflow_weights(2.0);
  const double e = std::exp(-2.0);
  CHECK_THAT(w.gamma0, WithinRel((1 - e) / 4 - (1 + e) / 4, 1e-14));
  CHECK_THAT(w.gamma1, WithinRel(-(1 - e) / 2 + e + 1, 1e-14));
  CHECK_THAT(w.gamma2, WithinRel((1 - e) / 4 + (1 - 3 * e) / 4 - e, 1e-14));
}
