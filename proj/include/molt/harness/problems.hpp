#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "molt/adi2d.hpp"
#include "molt/geometry.hpp"
#include "molt/grid1d.hpp"
#include "molt/harness/config.hpp"
#include "molt/harness/reference.hpp"
#include "molt/stepper1d.hpp"

namespace molt::harness {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Piece grids of the 1D line with N cells per unit multiplier. Without a
/// `subdomains` entry the whole line is one piece of kind `mesh`.
std::vector<Grid1D> subdomain_grids(const RunConfig& cfg, int N);
/// The same nodes as one grid (interfaces counted once).
Grid1D line_grid(const RunConfig& cfg, int N);

/// dt = cfg.dt / level when given, else cfl * width / c.
double time_step(const RunConfig& cfg, double width, int level);
/// Number of steps to reach t_final.
long step_count(double t_final, double dt);

/// The exact solution the config compares against, if any.
std::optional<ReferenceSpec> exact_reference(const RunConfig& cfg);

BCSpec line_bc(const RunConfig& cfg);
SourceSpec line_sources(const RunConfig& cfg);
Fn1 initial_1d(const RunConfig& cfg);
Fn1 initial_1d_xx(const RunConfig& cfg);

Geometry make_geometry(const RunConfig& cfg);

struct Problem2D {
  Domain2D domain;
  SchemeParams params;
  Sources2D sources;
  Fn2 f;
  Fn2 lap;  // may be empty
  std::optional<ReferenceSpec> exact;
};

/// The 2D problem at spacing (dx, dy) / level.
Problem2D make_problem_2d(const RunConfig& cfg, int level);

/// Smoothly switched-on incident signal sin(omega t) of the slit test.
struct IncidentSignal {
  double omega = 1.0;
  double sigma(double t) const;
  double dsigma(double t) const;
};

}  // namespace molt::harness
