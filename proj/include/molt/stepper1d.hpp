#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "molt/boundary.hpp"
#include "molt/convolution.hpp"
#include "molt/grid1d.hpp"
#include "molt/kernel_weights.hpp"

namespace molt {

/// Two time levels of a 1D solution.
struct WaveState1D {
  std::vector<double> u_curr;
  std::vector<double> u_prev;
  double t = 0.0;
  long n = 0;
  std::optional<OutflowState> outflow;
};

/// sigma_i(t) delta(x - x_i).
struct PointSource {
  double x = 0.0;
  std::function<double(double)> sigma;
};

/// A soft source injects sigma(t) at x without scattering. Its equivalent
/// point source has strength (2/c) sigma'(t); `dsigma` may be left empty, in
/// which case a centred difference with step dt is used.
struct SoftSource {
  double x = 0.0;
  std::function<double(double)> sigma;
  std::function<double(double)> dsigma;
};

/// Source terms of (1/c^2) u_tt = u_xx + S.
struct SourceSpec {
  std::vector<PointSource> points;
  std::vector<SoftSource> soft;
  std::function<double(double, double)> smooth;  // S(x, t)

  bool empty() const { return points.empty() && soft.empty() && !smooth; }
  /// Throws std::invalid_argument when a source lies outside [a, b].
  void validate(double a, double b) const;
};

/// sigma'(t) of a soft source: analytic when available, else centred difference.
double soft_source_rate(const SoftSource& s, double t, double dt);

/// I[S/alpha^2] at the nodes for the point and soft sources at time t
/// (evaluated exactly, no quadrature). The smooth field is not included.
std::vector<double> source_convolution(const SourceSpec& sources, double t, const Grid1D& grid,
                                       const SchemeParams& params);
/// Accumulating form: out[j] += ...
void add_source_convolution(const SourceSpec& sources, double t, std::span<const double> x,
                            const SchemeParams& params, std::span<double> out);

/// Second-order start: u_prev = f - dt g + dt^2/2 c^2 (f'' + S(x, 0)). `f_xx`
/// may supply an analytic second derivative; otherwise d2_stencil is used.
WaveState1D init_history(std::span<const double> f, std::span<const double> g,
                         const SourceSpec& sources, const SchemeParams& params, const Grid1D& grid,
                         std::span<const double> f_xx = {});

/// u^{n+1} = -(beta^2-2) u^n - u^{n-1} + beta^2/2 w, written into `next`.
void two_level_update(std::span<const double> u_curr, std::span<const double> u_prev,
                      std::span<const double> w, double beta, std::span<double> next);

/// A solver for one line with fixed grid, time step and boundary conditions.
class Stepper1D {
 public:
  Stepper1D(Grid1D grid, SchemeParams params, BCSpec bc, SourceSpec sources = {});

  const Grid1D& grid() const { return kernel_.grid(); }
  const LineKernel& kernel() const { return kernel_; }
  const SchemeParams& params() const { return params_; }
  const BCSpec& bc() const { return bc_; }
  const SourceSpec& sources() const { return sources_; }

  /// Advances `state` by one step in place.
  void advance(WaveState1D& state);
  WaveState1D step(const WaveState1D& state);

  /// The homogeneous coefficients used by the most recent step.
  HomogeneousCoeffs last_coeffs() const { return last_; }

 private:
  LineKernel kernel_;
  SchemeParams params_;
  BCSpec bc_;
  SourceSpec sources_;
  std::vector<double> v_, I_, next_;
  HomogeneousCoeffs last_;
};

/// One step with a freshly built kernel; convenient for tests.
WaveState1D step(const WaveState1D& state, const Grid1D& grid, const SchemeParams& params,
                 const BCSpec& bc, const SourceSpec& sources = {});

/// Roots of rho^2 - (2 - (beta w dt)^2 / (beta^2 + (w dt)^2)) rho + 1 = 0.
std::array<std::complex<double>, 2> amplification_check(double omega, const SchemeParams& params);

}  // namespace molt
