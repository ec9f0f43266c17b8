#include "molt/harness/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "molt/domain_decomposition.hpp"
#include "molt/harness/csv.hpp"
#include "molt/harness/norms.hpp"
#include "molt/harness/problems.hpp"

namespace molt::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_finite(std::span<const double> u, double t) {
  for (double v : u)
    if (!std::isfinite(v)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "non-finite value in the solution at t = %.6g", t);
      throw NumericalFailure(buf);
    }
}

double max_abs(std::span<const double> u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

bool in_window(const RunConfig& cfg, double t) {
  if (!cfg.error_window) return true;
  const double eps = 1e-9 * std::max(1.0, t);
  return t >= cfg.error_window->first - eps && t <= cfg.error_window->second + eps;
}

/// Pending snapshot times, consumed as the run passes them.
class SnapshotPlan {
 public:
  SnapshotPlan(const RunConfig& cfg, int level, bool enabled) : prefix_(cfg.snapshot_prefix), level_(level) {
    if (enabled && !prefix_.empty()) times_ = cfg.snapshot_times;
    std::sort(times_.begin(), times_.end());
  }
  /// Returns the file name to write at time t with step dt, if any.
  std::optional<std::string> due(double t, double dt) {
    if (next_ >= times_.size() || t < times_[next_] - 0.5 * dt) return std::nullopt;
    const double ts = times_[next_];
    while (next_ < times_.size() && t >= times_[next_] - 0.5 * dt) ++next_;
    char buf[64];
    if (level_ == 1) std::snprintf(buf, sizeof buf, "_t%.4f.csv", ts);
    else std::snprintf(buf, sizeof buf, "_L%d_t%.4f.csv", level_, ts);
    return prefix_ + buf;
  }

 private:
  std::string prefix_;
  int level_;
  std::vector<double> times_;
  std::size_t next_ = 0;
};

RunResult run_1d(const RunConfig& cfg, int level, const RunOptions& opts) {
  const auto t0 = Clock::now();
  const int N = cfg.N * level;
  const auto grids = subdomain_grids(cfg, N);
  double width = 0.0;
  for (const auto& g : grids) width = std::max(width, g.max_width());
  const SchemeParams params(cfg.beta, cfg.c, time_step(cfg, width, level));
  const BCSpec bc = line_bc(cfg);
  const SourceSpec sources = line_sources(cfg);
  const Fn1 f = initial_1d(cfg), fxx = initial_1d_xx(cfg);
  const auto exact = exact_reference(cfg);

  std::optional<DDSolver> dd;
  std::optional<Stepper1D> mono;
  WaveState1D state;
  Grid1D grid = line_grid(cfg, N);
  if (grids.size() > 1) {
    dd.emplace(grids, params, bc, sources, cfg.dd_interface, opts.policy);
    dd->init(f, {}, fxx);
    state = dd->gather();
  } else {
    mono.emplace(grid, params, bc, sources);
    std::vector<double> fv(grid.num_nodes()), gv(grid.num_nodes(), 0.0), fxxv(grid.num_nodes());
    for (std::size_t j = 0; j < fv.size(); ++j) {
      fv[j] = f(grid.x(j));
      fxxv[j] = fxx(grid.x(j));
    }
    state = init_history(fv, gv, sources, params, grid, fxxv);
  }

  RunResult r;
  r.resolution = N;
  r.dt = params.dt;
  r.num_nodes = grid.num_nodes();
  r.initial_max_abs_u = r.max_abs_u = max_abs(state.u_curr);
  SnapshotPlan snaps(cfg, level, opts.write_snapshots);
  auto maybe_snapshot = [&] {
    if (auto path = snaps.due(state.t, params.dt)) {
      write_snapshot_1d(*path, grid.nodes(), state.u_curr);
      r.snapshots.push_back(*path);
    }
  };
  maybe_snapshot();
  const auto weights = node_weights(grid);
  std::vector<double> e(grid.num_nodes());
  const long steps = step_count(cfg.t_final, params.dt);
  for (long n = 0; n < steps; ++n) {
    if (dd) {
      dd->advance();
      state = dd->gather();
    } else {
      mono->advance(state);
    }
    check_finite(state.u_curr, state.t);
    const double m = max_abs(state.u_curr);
    r.max_abs_u = std::max(r.max_abs_u, m);
    if (exact && in_window(cfg, state.t)) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = state.u_curr[j] - reference_solution(*exact, grid.x(j), 0.0, state.t);
      const double err = weighted_l2(e, weights);
      r.max_error = std::isnan(r.max_error) ? err : std::max(r.max_error, err);
    }
    maybe_snapshot();
    if (opts.observer) opts.observer(state.t, m);
  }
  r.steps = steps;
  r.t = state.t;
  r.runtime_s = seconds_since(t0);
  return r;
}

/// RMS over the Cartesian nodes of a 2D domain.
double grid_rms_error(const Domain2D& dom, std::span<const double> u, const ReferenceSpec& ref, double t) {
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < dom.nodes.size(); ++i) {
    const Node2D& nd = dom.nodes[i];
    if (!nd.on_grid) continue;
    const double d = u[i] - reference_solution(ref, nd.x, nd.y, t);
    s += d * d;
    ++count;
  }
  return count ? std::sqrt(s / static_cast<double>(count)) : 0.0;
}

/// RMS over the Cartesian nodes of `coarse` of the difference with the
/// field on `fine`, whose node (k * ratio, j * ratio) sits at the same point.
double grid_rms_difference(const Domain2D& coarse, std::span<const double> uc, const Domain2D& fine,
                           std::span<const double> uf, const std::vector<long>& map) {
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
    if (map[i] < 0) continue;
    const double d = uc[i] - uf[static_cast<std::size_t>(map[i])];
    s += d * d;
    ++count;
  }
  (void)fine;
  return count ? std::sqrt(s / static_cast<double>(count)) : 0.0;
}

std::vector<long> node_map(const Domain2D& coarse, const Domain2D& fine, long ratio) {
  std::vector<long> map(coarse.nodes.size(), -1);
  for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
    const Node2D& nd = coarse.nodes[i];
    if (!nd.on_grid) continue;
    if (auto idx = fine.find(nd.k * ratio, nd.j * ratio)) map[i] = static_cast<long>(*idx);
  }
  return map;
}

RunResult run_2d(const RunConfig& cfg, int level, const RunOptions& opts,
                 const std::function<void(long, double, const Domain2D&, std::span<const double>)>& per_step = {}) {
  const auto t0 = Clock::now();
  Problem2D p = make_problem_2d(cfg, level);
  ADISolver solver(std::move(p.domain), p.params, p.sources, opts.policy);
  Field2D s = solver.init(p.f, {}, p.lap);
  const Domain2D& dom = solver.domain();
  if (cfg.start == "exact" && p.exact) {
    for (std::size_t i = 0; i < dom.nodes.size(); ++i)
      s.u_prev[i] = reference_solution(*p.exact, dom.nodes[i].x, dom.nodes[i].y, -p.params.dt);
  }

  RunResult r;
  r.resolution = cfg.dx / level;
  r.dt = p.params.dt;
  r.num_nodes = dom.num_nodes();
  r.initial_max_abs_u = r.max_abs_u = max_abs(s.u_curr);
  SnapshotPlan snaps(cfg, level, opts.write_snapshots);
  auto maybe_snapshot = [&] {
    if (auto path = snaps.due(s.t, p.params.dt)) {
      write_snapshot_2d(*path, dom, s.u_curr);
      r.snapshots.push_back(*path);
    }
  };
  maybe_snapshot();
  const long steps = step_count(cfg.t_final, p.params.dt);
  for (long n = 0; n < steps; ++n) {
    solver.advance(s);
    check_finite(s.u_curr, s.t);
    const double m = max_abs(s.u_curr);
    r.max_abs_u = std::max(r.max_abs_u, m);
    if (p.exact && in_window(cfg, s.t)) {
      const double err = grid_rms_error(dom, s.u_curr, *p.exact, s.t);
      r.max_error = std::isnan(r.max_error) ? err : std::max(r.max_error, err);
    }
    if (per_step) per_step(s.n, s.t, dom, s.u_curr);
    maybe_snapshot();
    if (opts.observer) opts.observer(s.t, m);
  }
  r.steps = steps;
  r.t = s.t;
  r.runtime_s = seconds_since(t0);
  return r;
}

void fill_orders(std::vector<RefinementRow>& rows, const std::vector<int>& levels) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    rows[i].order = observed_order(rows[i - 1].error, rows[i].error,
                                   static_cast<double>(levels[i]) / static_cast<double>(levels[i - 1]));
}

void check_levels(const std::vector<int>& levels) {
  if (levels.empty()) throw ConfigError("no refinement levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw ConfigError("refinement levels must be positive");
    if (i > 0 && levels[i] <= levels[i - 1]) throw ConfigError("refinement levels must increase");
  }
}

RefinementReport refine_self(const RunConfig& cfg, const std::vector<int>& levels, const RunOptions& opts) {
  if (cfg.dimension != 2) throw ConfigError("reference = self is available in 2D");
  const int D = cfg.reference_divisor;
  for (int l : levels)
    if (l >= D || D % l != 0) throw ConfigError("each level must divide reference_divisor and be smaller");
  RunOptions quiet = opts;
  quiet.write_snapshots = false;

  std::map<long, std::vector<double>> ref_steps;  // step index -> field
  std::optional<Domain2D> ref_dom;
  run_2d(cfg, D, quiet, [&](long n, double t, const Domain2D& dom, std::span<const double> u) {
    if (!ref_dom) ref_dom = dom;
    if (in_window(cfg, t)) ref_steps.emplace(n, std::vector<double>(u.begin(), u.end()));
  });
  if (!ref_dom || ref_steps.empty()) throw ConfigError("the reference run never entered the error window");

  RefinementReport rep;
  std::vector<long> map;
  for (int l : levels) {
    const long ratio = D / l;
    RefinementRow row;
    row.resolution = cfg.dx / l;
    bool mapped = false;
    const RunResult rr = run_2d(cfg, l, quiet, [&](long n, double t, const Domain2D& dom, std::span<const double> u) {
      if (!in_window(cfg, t)) return;
      if (!mapped) {
        map = node_map(dom, *ref_dom, ratio);
        mapped = true;
      }
      const auto it = ref_steps.find(n * ratio);
      if (it == ref_steps.end()) return;
      const double err = grid_rms_difference(dom, u, *ref_dom, it->second, map);
      row.error = std::isnan(row.error) ? err : std::max(row.error, err);
    });
    (void)rr;
    rep.rows.push_back(row);
  }
  fill_orders(rep.rows, levels);
  return rep;
}

RefinementReport refine_full_circle(const RunConfig& cfg, const std::vector<int>& levels, const RunOptions& opts) {
  RunConfig full = cfg;
  full.geometry = "circle";
  full.reference = "none";
  RefinementReport rep;
  for (int l : levels) {
    Problem2D pq = make_problem_2d(cfg, l);
    Problem2D pf = make_problem_2d(full, l);
    ADISolver q(std::move(pq.domain), pq.params, {}, opts.policy);
    ADISolver f(std::move(pf.domain), pf.params, {}, opts.policy);
    Field2D sq = q.init(pq.f, {}, pq.lap);
    Field2D sf = f.init(pf.f, {}, pf.lap);
    const auto map = node_map(q.domain(), f.domain(), 1);
    RefinementRow row;
    row.resolution = cfg.dx / l;
    const long steps = step_count(cfg.t_final, pq.params.dt);
    for (long n = 0; n < steps; ++n) {
      q.advance(sq);
      f.advance(sf);
      check_finite(sq.u_curr, sq.t);
      check_finite(sf.u_curr, sf.t);
      if (!in_window(cfg, sq.t)) continue;
      const double d = grid_rms_difference(q.domain(), sq.u_curr, f.domain(), sf.u_curr, map);
      row.error = std::isnan(row.error) ? d : std::max(row.error, d);
    }
    rep.rows.push_back(row);
  }
  fill_orders(rep.rows, levels);
  return rep;
}

}  // namespace

RunResult run(const RunConfig& cfg, int level, const RunOptions& opts) {
  if (level < 1) throw ConfigError("level must be positive");
  return cfg.dimension == 1 ? run_1d(cfg, level, opts) : run_2d(cfg, level, opts);
}

RefinementReport refine(const RunConfig& cfg, const std::vector<int>& levels, const RunOptions& opts) {
  check_levels(levels);
  const auto t0 = Clock::now();
  RefinementReport rep;
  if (cfg.reference == "self") {
    rep = refine_self(cfg, levels, opts);
  } else if (cfg.reference == "full_circle") {
    rep = refine_full_circle(cfg, levels, opts);
  } else {
    if (cfg.reference != "exact" || !exact_reference(cfg))
      throw ConfigError("refine needs an exact reference, a self reference or the full-circle comparison");
    RunOptions quiet = opts;
    quiet.write_snapshots = false;
    for (int l : levels) {
      const RunResult r = run(cfg, l, quiet);
      rep.rows.push_back({r.resolution, r.max_error, kNaN});
    }
    fill_orders(rep.rows, levels);
  }
  rep.config_hash = cfg.hash();
  rep.runtime_s = seconds_since(t0);
  return rep;
}

std::vector<DecompRow> decomp_compare(const RunConfig& cfg, const std::vector<int>& levels, const RunOptions& opts) {
  check_levels(levels);
  if (cfg.dimension != 1) throw ConfigError("decomp is a 1D study");
  if (cfg.subdomains.size() < 2) throw ConfigError("decomp needs at least two subdomains");
  if (cfg.initial != "gaussian") throw ConfigError("decomp compares against the travelling Gaussian");

  std::vector<DecompRow> rows;
  for (int l : levels) {
    const int N = cfg.N * l;
    const auto grids = subdomain_grids(cfg, N);
    double width = 0.0;
    for (const auto& g : grids) width = std::max(width, g.max_width());
    const SchemeParams params(cfg.beta, cfg.c, time_step(cfg, width, l));
    const BCSpec bc = line_bc(cfg);
    const SourceSpec sources = line_sources(cfg);
    const Fn1 f = initial_1d(cfg), fxx = initial_1d_xx(cfg);

    // (i) decomposed
    DDSolver dd(grids, params, bc, sources, cfg.dd_interface, opts.policy);
    dd.init(f, {}, fxx);
    const Grid1D omega = dd.global_grid();
    const std::size_t n_omega = omega.num_nodes();

    auto start = [&](const Grid1D& g) {
      std::vector<double> fv(g.num_nodes()), gv(g.num_nodes(), 0.0), fxxv(g.num_nodes());
      for (std::size_t j = 0; j < fv.size(); ++j) {
        fv[j] = f(g.x(j));
        fxxv[j] = fxx(g.x(j));
      }
      return init_history(fv, gv, sources, params, g, fxxv);
    };
    // (ii) monolithic on the same nodes
    Stepper1D mono(omega, params, bc, sources);
    WaveState1D s2 = start(omega);

    // (iii) monolithic on [a - cT, b + cT], uniform cells of the first piece's width outside
    const double ext = cfg.c * cfg.t_final;
    const double h0 = grids.front().h(0);
    const long cells = std::max(1L, std::lround(ext / h0));
    const double h = ext / static_cast<double>(cells);
    std::vector<double> xs;
    for (long i = 0; i < cells; ++i) xs.push_back(cfg.a - ext + h * static_cast<double>(i));
    const std::size_t offset = xs.size();
    xs.insert(xs.end(), omega.nodes().begin(), omega.nodes().end());
    for (long i = 1; i <= cells; ++i) xs.push_back(i == cells ? cfg.b + ext : cfg.b + h * static_cast<double>(i));
    const Grid1D wide = Grid1D::from_nodes(xs);
    Stepper1D far(wide, params, BCSpec::homogeneous(BoundaryKind::dirichlet), sources);
    WaveState1D s3 = start(wide);

    ReferenceSpec exact;
    exact.kind = ReferenceKind::dalembert_gaussian;
    exact.a = cfg.a;
    exact.b = cfg.b;
    exact.c = cfg.c;

    const auto w = node_weights(omega);
    std::vector<double> e(n_omega);
    DecompRow row;
    row.N = N;
    double dd_err = 0.0, out_err = 0.0, tot_err = 0.0;
    const long steps = step_count(cfg.t_final, params.dt);
    for (long n = 0; n < steps; ++n) {
      dd.advance();
      mono.advance(s2);
      far.advance(s3);
      const WaveState1D s1 = dd.gather();
      check_finite(s1.u_curr, s1.t);
      check_finite(s2.u_curr, s2.t);
      check_finite(s3.u_curr, s3.t);
      if (!in_window(cfg, s1.t)) continue;
      for (std::size_t j = 0; j < n_omega; ++j) e[j] = s1.u_curr[j] - s2.u_curr[j];
      dd_err = std::max(dd_err, weighted_l2(e, w));
      for (std::size_t j = 0; j < n_omega; ++j) e[j] = s2.u_curr[j] - s3.u_curr[offset + j];
      out_err = std::max(out_err, weighted_l2(e, w));
      for (std::size_t j = 0; j < n_omega; ++j) e[j] = s1.u_curr[j] - reference_solution(exact, omega.x(j), 0.0, s1.t);
      tot_err = std::max(tot_err, weighted_l2(e, w));
    }
    row.dd_error = dd_err;
    row.outflow_error = out_err;
    row.total_error = tot_err;
    if (!rows.empty()) {
      const double ratio = static_cast<double>(N) / rows.back().N;
      row.dd_order = observed_order(rows.back().dd_error, dd_err, ratio);
      row.outflow_order = observed_order(rows.back().outflow_error, out_err, ratio);
      row.total_order = observed_order(rows.back().total_error, tot_err, ratio);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace molt::harness
