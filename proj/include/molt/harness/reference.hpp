#pragma once

#include <span>
#include <vector>

#include "molt/grid1d.hpp"

namespace molt::harness {

/// Second positive zero of J0.
inline constexpr double kBesselZ20 = 5.520078110286311;

double bessel_j0(double z);

/// exp(-36 ((2x - b - a)/(b - a))^2) and its second derivative.
double gaussian_pulse(double x, double a, double b);
double gaussian_pulse_xx(double x, double a, double b);
/// Free-space solution from the pulse at rest.
double dalembert_gaussian(double x, double t, double a, double b, double c);

enum class ReferenceKind { dalembert_gaussian, cavity_dirichlet, cavity_neumann, bessel_j0, string_mode };

/// Parameters of the closed-form solutions.
struct ReferenceSpec {
  ReferenceKind kind = ReferenceKind::dalembert_gaussian;
  double a = -1.0, b = 1.0;  // 1D pulse support / string ends
  double c = 1.0;
  int m = 0, n = 0;          // cavity mode indices
  double lx = 1.0, ly = 1.0; // cavity centred on the origin
  double radius = 1.0;       // bessel mode
};

/// Exact u(x, y, t); 1D kinds ignore y.
double reference_solution(const ReferenceSpec& spec, double x, double y, double t);
/// Laplacian of the initial data for the 2D kinds, u_xx for the 1D ones.
double reference_laplacian0(const ReferenceSpec& spec, double x, double y);

/// Initial bump of the double-circle test.
double double_circle_bump(double x, double y, double gamma);

}  // namespace molt::harness
