#include "molt/kernel_weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace molt {

namespace {

// Below this width E_m is summed from its power series; the closed form
// 1 - exp(-nu) P_m(nu) cancels catastrophically as nu -> 0.
constexpr double kSeriesThreshold = 1.0;

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

// nu/m! * sum_k (-nu)^k / (k! (m+k+1)); alternating with |nu| < 1, so the
// truncation error is bounded by the first omitted term.
double exp_int_series(int m, double nu) {
  double sum = 0.0;
  double term = 1.0;  // (-nu)^k / k!
  for (int k = 0; k < 60; ++k) {
    const double contrib = term / static_cast<double>(m + k + 1);
    sum += contrib;
    if (std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
    term *= -nu / static_cast<double>(k + 1);
  }
  return nu * sum / factorial(m);
}

double exp_int_closed(int m, double nu) {
  double taylor = 0.0;
  double term = 1.0;
  for (int l = 0; l <= m; ++l) {
    taylor += term;
    term *= nu / static_cast<double>(l + 1);
  }
  const double head = (m == 0) ? -std::expm1(-nu) : 1.0 - std::exp(-nu) * taylor;
  return head / std::pow(nu, m);
}

}  // namespace

SchemeParams::SchemeParams(double beta_, double c_, double dt_) : beta(beta_), c(c_), dt(dt_) {
  if (!(beta > 0.0) || !(c > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("SchemeParams: beta, c and dt must be positive");
  }
}

double exp_int(int m, double nu) {
  if (m < 0 || m > kMaxMoment) {
    throw std::domain_error("exp_int: moment order " + std::to_string(m) + " not supported");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::domain_error("exp_int: nu must be positive and finite");
  }
  return nu < kSeriesThreshold ? exp_int_series(m, nu) : exp_int_closed(m, nu);
}

ConvWeights simpson_weights(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::domain_error("simpson_weights: nu must be positive and finite");
  }
  ConvWeights w;
  w.nu = nu;
  w.d = std::exp(-nu);
  if (nu < kSeriesThreshold) {
    const double e0 = exp_int(0, nu);
    const double e1 = exp_int(1, nu);
    const double e2 = exp_int(2, nu);
    w.P = e0 - e1;
    w.Q = e1;
    w.R = e2 - 0.5 * e1;
  } else {
    const double one_minus_d = -std::expm1(-nu);
    w.P = 1.0 - one_minus_d / nu;
    w.Q = -w.d + one_minus_d / nu;
    w.R = one_minus_d / (nu * nu) - (1.0 + w.d) / (2.0 * nu);
  }
  return w;
}

OutflowWeights outflow_weights(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("outflow_weights: beta must be positive and finite");
  }
  OutflowWeights w;
  w.beta = beta;
  if (beta < kSeriesThreshold) {
    const double e0 = exp_int(0, beta);
    const double e1 = exp_int(1, beta);
    const double e2 = exp_int(2, beta);
    w.gamma0 = e2 - 0.5 * e1;
    w.gamma1 = e0 - 2.0 * e2;
    w.gamma2 = e2 + 0.5 * e1;
  } else {
    const double eb = std::exp(-beta);
    const double one_minus = -std::expm1(-beta);
    const double b2 = beta * beta;
    w.gamma0 = one_minus / b2 - (1.0 + eb) / (2.0 * beta);
    w.gamma1 = -2.0 * one_minus / b2 + 2.0 * eb / beta + 1.0;
    w.gamma2 = one_minus / b2 + (1.0 - 3.0 * eb) / (2.0 * beta) - eb;
  }
  w.Gamma0 = 0.5 * beta * beta * w.gamma0;
  w.Gamma1 = w.gamma1 - w.gamma0 * (beta * beta - 2.0);
  w.Gamma2 = w.gamma2 - w.gamma0;
  return w;
}

}  // namespace molt
