#include "molt/harness/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace molt::harness {

using std::numbers::pi;

double bessel_j0(double z) { return std::cyl_bessel_j(0.0, z); }

double gaussian_pulse(double x, double a, double b) {
  const double s = (2.0 * x - b - a) / (b - a);
  return std::exp(-36.0 * s * s);
}

double gaussian_pulse_xx(double x, double a, double b) {
  // f = exp(-k s^2), s = (2x - a - b)/L, ds/dx = 2/L.
  const double L = b - a;
  const double s = (2.0 * x - b - a) / L;
  const double k = 36.0;
  const double q = 2.0 / L;
  return q * q * (4.0 * k * k * s * s - 2.0 * k) * std::exp(-k * s * s);
}

double dalembert_gaussian(double x, double t, double a, double b, double c) {
  return 0.5 * (gaussian_pulse(x - c * t, a, b) + gaussian_pulse(x + c * t, a, b));
}

double reference_solution(const ReferenceSpec& s, double x, double y, double t) {
  switch (s.kind) {
    case ReferenceKind::dalembert_gaussian:
      return dalembert_gaussian(x, t, s.a, s.b, s.c);
    case ReferenceKind::string_mode: {
      const double k = (s.m + 1) * pi / (s.b - s.a);
      return std::sin(k * (x - s.a)) * std::cos(k * s.c * t);
    }
    case ReferenceKind::cavity_dirichlet:
    case ReferenceKind::cavity_neumann: {
      const double kx = (2 * s.m + 1) * pi / s.lx;
      const double ky = (2 * s.n + 1) * pi / s.ly;
      const double w = s.c * std::hypot(kx, ky);
      const double space = s.kind == ReferenceKind::cavity_dirichlet ? std::cos(kx * x) * std::cos(ky * y)
                                                                      : std::sin(kx * x) * std::sin(ky * y);
      return space * std::cos(w * t);
    }
    case ReferenceKind::bessel_j0: {
      const double r = std::hypot(x, y);
      return bessel_j0(kBesselZ20 * r / s.radius) * std::cos(kBesselZ20 * s.c * t / s.radius);
    }
  }
  throw std::invalid_argument("unknown reference kind");
}

double reference_laplacian0(const ReferenceSpec& s, double x, double y) {
  switch (s.kind) {
    case ReferenceKind::dalembert_gaussian:
      return gaussian_pulse_xx(x, s.a, s.b);
    case ReferenceKind::string_mode: {
      const double k = (s.m + 1) * pi / (s.b - s.a);
      return -k * k * std::sin(k * (x - s.a));
    }
    case ReferenceKind::cavity_dirichlet:
    case ReferenceKind::cavity_neumann: {
      const double kx = (2 * s.m + 1) * pi / s.lx;
      const double ky = (2 * s.n + 1) * pi / s.ly;
      return -(kx * kx + ky * ky) * reference_solution(s, x, y, 0.0);
    }
    case ReferenceKind::bessel_j0: {
      // J0 solves u'' + u'/r + k^2 u = 0.
      const double k = kBesselZ20 / s.radius;
      return -k * k * bessel_j0(k * std::hypot(x, y));
    }
  }
  throw std::invalid_argument("unknown reference kind");
}

double double_circle_bump(double x, double y, double gamma) {
  const double w = 0.8 * gamma;
  auto lobe = [&](double cx) {
    const double r = std::hypot(x - cx, y);
    if (r >= w) return 0.0;
    const double q = std::cos(0.5 * pi * (r / w) * (r / w));
    return std::pow(q, 6);
  };
  return lobe(gamma) - lobe(-gamma);
}

}  // namespace molt::harness
