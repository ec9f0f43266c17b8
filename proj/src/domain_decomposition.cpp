#include "molt/domain_decomposition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace molt {

const char* to_string(InterfaceStencil s) {
  return s == InterfaceStencil::halo ? "halo" : "one_sided";
}

InterfaceStencil interface_stencil_from_string(const std::string& name) {
  if (name == "one_sided") return InterfaceStencil::one_sided;
  if (name == "halo") return InterfaceStencil::halo;
  throw std::invalid_argument("unknown interface stencil '" + name + "'");
}

Subdomain::Subdomain(int m, LineKernel k) : index(m), kernel(std::move(k)) {
  const std::size_t n = kernel.size();
  v.resize(n);
  I.resize(n);
  next.resize(n);
}

CoarseMesh::CoarseMesh(std::vector<double> interfaces, double alpha) : X(std::move(interfaces)) {
  if (X.size() < 2) throw std::invalid_argument("CoarseMesh: need at least one coarse cell");
  const std::size_t M = X.size() - 1;
  nu.resize(M);
  decay.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    if (!(X[m + 1] > X[m])) throw std::invalid_argument("CoarseMesh: interfaces must increase");
    nu[m] = alpha * (X[m + 1] - X[m]);
    decay[m] = std::exp(-nu[m]);
  }
  IL.assign(M + 1, 0.0);
  IR.assign(M + 1, 0.0);
}

double CoarseMesh::mu() const {
  double s = 0.0;
  for (double v : nu) s += v;
  return std::exp(-s);
}

LocalSweep local_sweep(std::span<const double> u, const LineKernel& kernel, const HaloValues& halo) {
  LocalSweep r;
  r.conv = fast_convolve(u, kernel, halo);
  r.JL_out = r.conv.I.back();
  r.JR_out = r.conv.I.front();
  return r;
}

std::vector<HomogeneousCoeffs> coarse_assemble(CoarseMesh& coarse, std::span<const double> right_vals,
                                               std::span<const double> left_vals,
                                               const GlobalClosure& closure) {
  const std::size_t M = coarse.size();
  if (right_vals.size() != M || left_vals.size() != M)
    throw std::invalid_argument("coarse_assemble: expected one scalar pair per subdomain");
  for (std::size_t m = 0; m < M; ++m) {
    if (!std::isfinite(right_vals[m]) || !std::isfinite(left_vals[m]))
      throw std::invalid_argument("coarse_assemble: missing or non-finite interface scalar");
  }
  // Coarse cell m is piece m; a hop across it decays by exp(-nu_m).
  coarse.IL[0] = 0.0;
  for (std::size_t m = 0; m < M; ++m) coarse.IL[m + 1] = coarse.decay[m] * coarse.IL[m] + right_vals[m];
  coarse.IR[M] = 0.0;
  for (std::size_t m = M; m-- > 0;) coarse.IR[m] = coarse.decay[m] * coarse.IR[m + 1] + left_vals[m];

  const HomogeneousCoeffs global = closure(ClosureInputs{coarse.IR[0], coarse.IL[M], coarse.mu()});

  std::vector<HomogeneousCoeffs> out(M);
  out[0].A = global.A;
  for (std::size_t m = 1; m < M; ++m) out[m].A = out[m - 1].A * coarse.decay[m - 1] + right_vals[m - 1];
  out[M - 1].B = global.B;
  for (std::size_t m = M - 1; m-- > 0;) out[m].B = out[m + 1].B * coarse.decay[m + 1] + left_vals[m + 1];
  return out;
}

namespace {

Grid1D union_grid(const std::vector<Grid1D>& grids) {
  std::vector<double> nodes;
  for (std::size_t m = 0; m < grids.size(); ++m) {
    const auto x = grids[m].nodes();
    nodes.insert(nodes.end(), x.begin() + (m == 0 ? 0 : 1), x.end());
  }
  return Grid1D::from_nodes(std::move(nodes));
}

}  // namespace

DDSolver::DDSolver(std::vector<Grid1D> grids, SchemeParams params, BCSpec bc, SourceSpec sources,
                   InterfaceStencil mode, ExecPolicy policy)
    : global_(union_grid(grids)),
      params_(params),
      bc_(std::move(bc)),
      mode_(mode),
      policy_(policy) {
  if (grids.empty()) throw std::invalid_argument("DDSolver: no subdomains");
  bc_.validate();
  if (bc_.left.kind == BoundaryKind::periodic && grids.size() > 1)
    throw std::invalid_argument("DDSolver: periodic lines are not decomposed");
  const std::size_t M = grids.size();
  for (std::size_t m = 0; m + 1 < M; ++m) {
    if (std::abs(grids[m].b() - grids[m + 1].a()) > 1e-12 * (1.0 + std::abs(grids[m].b())))
      throw std::invalid_argument("DDSolver: subdomains must share their interfaces");
  }
  sources.validate(grids.front().a(), grids.back().b());
  const double alpha = params_.alpha();

  std::vector<double> X;
  subs_.reserve(M);
  for (std::size_t m = 0; m < M; ++m) {
    GhostNodes ghosts;
    if (mode_ == InterfaceStencil::halo) {
      if (m > 0) ghosts.left = grids[m - 1].x(grids[m - 1].num_nodes() - 2);
      if (m + 1 < M) ghosts.right = grids[m + 1].x(1);
    }
    X.push_back(grids[m].a());
    subs_.emplace_back(static_cast<int>(m), LineKernel(grids[m], alpha, ghosts));
    Subdomain& s = subs_.back();
    const double a = grids[m].a(), b = grids[m].b();
    auto owns = [&](double x) { return x >= a && (x < b || m + 1 == M); };
    for (const auto& p : sources.points)
      if (owns(p.x)) s.sources.points.push_back(p);
    for (const auto& q : sources.soft)
      if (owns(q.x)) s.sources.soft.push_back(q);
  }
  X.push_back(grids.back().b());
  coarse_ = CoarseMesh(std::move(X), alpha);
  smooth_only_.smooth = std::move(sources.smooth);
  right_vals_.resize(M);
  left_vals_.resize(M);
}

void DDSolver::set_state(const WaveState1D& g) {
  const std::size_t total = global_.num_nodes();
  if (g.u_curr.size() != total || g.u_prev.size() != total)
    throw std::invalid_argument("DDSolver: global state does not match the node set");
  std::size_t offset = 0;
  for (auto& s : subs_) {
    const std::size_t n = s.kernel.size();
    s.state.u_curr.assign(g.u_curr.begin() + offset, g.u_curr.begin() + offset + n);
    s.state.u_prev.assign(g.u_prev.begin() + offset, g.u_prev.begin() + offset + n);
    s.state.t = g.t;
    s.state.n = g.n;
    offset += n - 1;
  }
  outflow_ = g.outflow;
}

void DDSolver::init(const std::function<double(double)>& f, const std::function<double(double)>& g,
                    const std::function<double(double)>& f_xx) {
  for (auto& s : subs_) {
    const Grid1D& grid = s.grid();
    const std::size_t n = grid.num_nodes();
    std::vector<double> fv(n), gv(n), fxx;
    for (std::size_t j = 0; j < n; ++j) {
      fv[j] = f(grid.x(j));
      gv[j] = g ? g(grid.x(j)) : 0.0;
    }
    if (f_xx) {
      fxx.resize(n);
      for (std::size_t j = 0; j < n; ++j) fxx[j] = f_xx(grid.x(j));
    }
    s.state = init_history(fv, gv, smooth_only_, params_, grid, fxx);
  }
  outflow_.reset();
}

WaveState1D DDSolver::gather() const {
  WaveState1D g;
  for (std::size_t m = 0; m < subs_.size(); ++m) {
    const auto& st = subs_[m].state;
    const std::size_t skip = m == 0 ? 0 : 1;
    g.u_curr.insert(g.u_curr.end(), st.u_curr.begin() + skip, st.u_curr.end());
    g.u_prev.insert(g.u_prev.end(), st.u_prev.begin() + skip, st.u_prev.end());
  }
  g.t = t();
  g.n = n();
  g.outflow = outflow_;
  return g;
}

void DDSolver::load_halos() {
  const std::size_t M = subs_.size();
  for (std::size_t m = 0; m < M; ++m) {
    HaloValues h;
    if (mode_ == InterfaceStencil::halo) {
      if (m > 0) {
        const auto& v = subs_[m - 1].v;
        h.left = v[v.size() - 2];
      }
      if (m + 1 < M) h.right = subs_[m + 1].v[1];
    }
    subs_[m].halo = h;
  }
}

void DDSolver::sweep(Subdomain& s) {
  fast_convolve_into(s.v, s.kernel, s.I, s.halo);
  add_source_convolution(s.sources, s.state.t, s.grid().nodes(), params_, s.I);
  s.JL_out = s.I.back();
  s.JR_out = s.I.front();
}

void DDSolver::update(Subdomain& s) {
  const auto dl = s.kernel.decay_from_left();
  const auto dr = s.kernel.decay_from_right();
  for (std::size_t j = 0; j < s.I.size(); ++j) s.I[j] += s.A * dl[j] + s.B * dr[j];
  two_level_update(s.state.u_curr, s.state.u_prev, s.I, params_.beta, s.next);
}

void DDSolver::advance() {
  const std::size_t M = subs_.size();
  const int Mi = static_cast<int>(M);
  const double alpha = params_.alpha();
  const double inv_a2 = 1.0 / (alpha * alpha);
  const bool par = policy_ == ExecPolicy::parallel;

  // Phase 0: load the convolved field (u plus the smooth source).
  for (auto& s : subs_) {
    const Grid1D& g = s.grid();
    for (std::size_t j = 0; j < s.v.size(); ++j)
      s.v[j] = s.state.u_curr[j] + (smooth_only_.smooth ? inv_a2 * smooth_only_.smooth(g.x(j), s.state.t) : 0.0);
  }
  load_halos();

  // Phase 1: local sweeps.
#pragma omp parallel for schedule(dynamic) if (par)
  for (int m = 0; m < Mi; ++m) sweep(subs_[static_cast<std::size_t>(m)]);

  // Phase 2: coarse solve, one coordinator, fixed index order.
  for (std::size_t m = 0; m < M; ++m) {
    right_vals_[m] = subs_[m].JL_out;
    left_vals_[m] = subs_[m].JR_out;
  }
  const auto& first = subs_.front().state;
  const auto& last = subs_.back().state;
  const ClosureContext ctx{params_.beta, alpha, first.t, params_.dt};
  const OutflowEndValues ends{first.u_curr.front(), first.u_prev.front(), last.u_curr.back(),
                              last.u_prev.back()};
  OutflowState ostate = outflow_.value_or(OutflowState{});
  const auto coeffs = coarse_assemble(coarse_, right_vals_, left_vals_, [&](const ClosureInputs& in) {
    return apply_closure(bc_, in, ctx, ends, ostate);
  });
  if (bc_.left.kind == BoundaryKind::outflow || bc_.right.kind == BoundaryKind::outflow) outflow_ = ostate;
  for (std::size_t m = 0; m < M; ++m) {
    subs_[m].A = coeffs[m].A;
    subs_[m].B = coeffs[m].B;
  }

  // Phase 3: local updates.
#pragma omp parallel for schedule(dynamic) if (par)
  for (int m = 0; m < Mi; ++m) update(subs_[static_cast<std::size_t>(m)]);

  const double t_next = first.t + params_.dt;
  if (bc_.left.kind == BoundaryKind::dirichlet)
    subs_.front().next.front() = bc_.left.data ? bc_.left.data(t_next) : 0.0;
  if (bc_.right.kind == BoundaryKind::dirichlet)
    subs_.back().next.back() = bc_.right.data ? bc_.right.data(t_next) : 0.0;
  // Both neighbours hold the interface node; keep the copies identical.
  for (std::size_t m = 0; m + 1 < M; ++m) {
    double& r = subs_[m].next.back();
    double& l = subs_[m + 1].next.front();
    const double avg = 0.5 * (r + l);
    r = avg;
    l = avg;
  }
  for (auto& s : subs_) {
    std::swap(s.state.u_prev, s.state.u_curr);
    std::swap(s.state.u_curr, s.next);
    s.state.n += 1;
    s.state.t = static_cast<double>(s.state.n) * params_.dt;
  }
}

}  // namespace molt
