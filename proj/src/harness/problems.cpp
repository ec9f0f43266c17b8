#include "molt/harness/problems.hpp"

#include <cmath>
#include <numbers>

namespace molt::harness {

using std::numbers::pi;

namespace {

Grid1D piece(const std::string& kind, double a, double b, int cells) {
  if (kind == "uniform") return Grid1D::uniform(a, b, cells);
  if (kind == "chebyshev_half") return Grid1D::chebyshev(a, b, cells, ChebyshevVariant::half);
  if (kind == "chebyshev_full") return Grid1D::chebyshev(a, b, cells, ChebyshevVariant::full);
  throw ConfigError("unknown mesh '" + kind + "'");
}

}  // namespace

std::vector<Grid1D> subdomain_grids(const RunConfig& cfg, int N) {
  if (cfg.subdomains.empty()) return {piece(cfg.mesh, cfg.a, cfg.b, N)};
  const std::size_t M = cfg.subdomains.size();
  const double w = (cfg.b - cfg.a) / static_cast<double>(M);
  std::vector<Grid1D> out;
  for (std::size_t m = 0; m < M; ++m) {
    const double lo = cfg.a + w * static_cast<double>(m);
    const double hi = m + 1 == M ? cfg.b : cfg.a + w * static_cast<double>(m + 1);
    out.push_back(piece(cfg.subdomains[m].kind, lo, hi, cfg.subdomains[m].multiplier * N));
  }
  return out;
}

Grid1D line_grid(const RunConfig& cfg, int N) {
  const auto grids = subdomain_grids(cfg, N);
  if (grids.size() == 1) return grids.front();
  std::vector<double> nodes;
  for (std::size_t m = 0; m < grids.size(); ++m) {
    const auto x = grids[m].nodes();
    nodes.insert(nodes.end(), x.begin() + (m == 0 ? 0 : 1), x.end());
  }
  return Grid1D::from_nodes(std::move(nodes));
}

double time_step(const RunConfig& cfg, double width, int level) {
  if (cfg.dt) return *cfg.dt / static_cast<double>(level);
  return cfg.cfl * width / cfg.c;
}

long step_count(double t_final, double dt) {
  const double r = t_final / dt;
  const double k = std::round(r);
  if (std::abs(r - k) <= 1e-6 * std::max(1.0, r)) return static_cast<long>(k);
  return static_cast<long>(std::ceil(r));
}

std::optional<ReferenceSpec> exact_reference(const RunConfig& cfg) {
  if (cfg.reference != "exact") return std::nullopt;
  ReferenceSpec r;
  r.c = cfg.c;
  r.m = cfg.mode_m;
  r.n = cfg.mode_n;
  if (cfg.dimension == 1) {
    r.a = cfg.a;
    r.b = cfg.b;
    if (cfg.initial == "gaussian") r.kind = ReferenceKind::dalembert_gaussian;
    else if (cfg.initial == "cavity_mode") r.kind = ReferenceKind::string_mode;
    else return std::nullopt;
    return r;
  }
  if (cfg.initial == "cavity_mode") {
    r.kind = cfg.bc == BoundaryKind::dirichlet ? ReferenceKind::cavity_dirichlet : ReferenceKind::cavity_neumann;
    r.lx = cfg.lx;
    r.ly = cfg.ly;
    return r;
  }
  if (cfg.initial == "bessel_mode") {
    r.kind = ReferenceKind::bessel_j0;
    r.radius = cfg.radius;
    return r;
  }
  return std::nullopt;
}

BCSpec line_bc(const RunConfig& cfg) {
  BCSpec bc;
  bc.left.kind = cfg.bc_left;
  bc.right.kind = cfg.bc_right;
  bc.validate();
  return bc;
}

SourceSpec line_sources(const RunConfig& cfg) {
  SourceSpec s;
  for (const auto& p : cfg.point_sources) {
    const double amp = p.amplitude, w = p.omega;
    s.points.push_back({p.x, [amp, w](double t) { return amp * std::sin(w * t); }});
  }
  return s;
}

Fn1 initial_1d(const RunConfig& cfg) {
  if (cfg.initial == "zero") return [](double) { return 0.0; };
  ReferenceSpec r;
  r.a = cfg.a;
  r.b = cfg.b;
  r.c = cfg.c;
  r.m = cfg.mode_m;
  r.kind = cfg.initial == "gaussian" ? ReferenceKind::dalembert_gaussian : ReferenceKind::string_mode;
  return [r](double x) { return reference_solution(r, x, 0.0, 0.0); };
}

Fn1 initial_1d_xx(const RunConfig& cfg) {
  if (cfg.initial == "zero") return [](double) { return 0.0; };
  ReferenceSpec r;
  r.a = cfg.a;
  r.b = cfg.b;
  r.m = cfg.mode_m;
  r.kind = cfg.initial == "gaussian" ? ReferenceKind::dalembert_gaussian : ReferenceKind::string_mode;
  return [r](double x) { return reference_laplacian0(r, x, 0.0); };
}

Geometry make_geometry(const RunConfig& cfg) {
  Geometry g;
  try {
    g.kind = geometry_kind_from_string(cfg.geometry);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  switch (g.kind) {
    case GeometryKind::rectangle: g = Geometry::rectangle(cfg.lx, cfg.ly, cfg.bc); break;
    case GeometryKind::circle: g = Geometry::circle(cfg.radius); break;
    case GeometryKind::double_circle: g = Geometry::double_circle(cfg.radius, cfg.gamma); break;
    case GeometryKind::quarter_circle: g = Geometry::quarter_circle(cfg.radius); break;
    case GeometryKind::slit_strip: g = Geometry::slit_strip(cfg.period, cfg.aperture, cfg.ly); break;
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return g;
}

double IncidentSignal::sigma(double t) const {
  if (t <= 0.0) return 0.0;
  const double T = 2.0 * pi / omega;
  const double ramp = t < T ? 0.5 * (1.0 - std::cos(pi * t / T)) : 1.0;
  return ramp * std::sin(omega * t);
}

double IncidentSignal::dsigma(double t) const {
  if (t <= 0.0) return 0.0;
  const double T = 2.0 * pi / omega;
  if (t >= T) return omega * std::cos(omega * t);
  const double ramp = 0.5 * (1.0 - std::cos(pi * t / T));
  const double dramp = 0.5 * pi / T * std::sin(pi * t / T);
  return dramp * std::sin(omega * t) + ramp * omega * std::cos(omega * t);
}

Problem2D make_problem_2d(const RunConfig& cfg, int level) {
  const Geometry geom = make_geometry(cfg);
  const double dx = cfg.dx / level, dy = cfg.effective_dy() / level;
  BuildOptions opts;
  opts.dd_split = cfg.dd_split;
  opts.interface = cfg.dd_interface;
  Problem2D p{[&] {
                try {
                  return build_lines(geom, dx, dy, opts);
                } catch (const std::invalid_argument& e) {
                  throw ConfigError(e.what());
                }
              }(),
              SchemeParams(cfg.beta, cfg.c, time_step(cfg, std::min(dx, dy), level)),
              {},
              {},
              {},
              exact_reference(cfg)};

  if (cfg.initial == "zero") {
    p.f = [](double, double) { return 0.0; };
    p.lap = [](double, double) { return 0.0; };
  } else if (cfg.initial == "double_circle_bump") {
    const double g = cfg.gamma;
    p.f = [g](double x, double y) { return double_circle_bump(x, y, g); };
  } else {
    ReferenceSpec r;
    r.c = cfg.c;
    r.m = cfg.mode_m;
    r.n = cfg.mode_n;
    r.lx = cfg.lx;
    r.ly = cfg.ly;
    r.radius = cfg.radius;
    if (cfg.initial == "bessel_mode") r.kind = ReferenceKind::bessel_j0;
    else r.kind = cfg.bc == BoundaryKind::neumann ? ReferenceKind::cavity_neumann : ReferenceKind::cavity_dirichlet;
    p.f = [r](double x, double y) { return reference_solution(r, x, y, 0.0); };
    p.lap = [r](double x, double y) { return reference_laplacian0(r, x, y); };
  }

  if (geom.kind == GeometryKind::slit_strip) {
    const IncidentSignal sig{cfg.c * 2.0 * pi / cfg.aperture};
    LineSource2D src;
    src.y = cfg.source_y.value_or(-cfg.ly / 4.0);
    src.sigma = [sig](double t) { return sig.sigma(t); };
    src.dsigma = [sig](double t) { return sig.dsigma(t); };
    p.sources.soft_rows.push_back(src);
  }
  return p;
}

}  // namespace molt::harness
