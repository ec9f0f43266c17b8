#include "molt/stepper1d.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace molt {

void SourceSpec::validate(double a, double b) const {
  auto check = [&](double x) {
    if (!(x >= a && x <= b)) throw std::invalid_argument("source lies outside the line");
  };
  for (const auto& p : points) {
    check(p.x);
    if (!p.sigma) throw std::invalid_argument("point source without a signal");
  }
  for (const auto& s : soft) {
    check(s.x);
    if (!s.sigma && !s.dsigma) throw std::invalid_argument("soft source without a signal");
  }
}

double soft_source_rate(const SoftSource& s, double t, double dt) {
  if (s.dsigma) return s.dsigma(t);
  return (s.sigma(t + dt) - s.sigma(t - dt)) / (2.0 * dt);
}

void add_source_convolution(const SourceSpec& sources, double t, std::span<const double> x,
                            const SchemeParams& params, std::span<double> out) {
  const double alpha = params.alpha();
  const double scale = params.c * params.dt / params.beta;
  auto add = [&](double xs, double strength) {
    if (strength == 0.0) return;
    for (std::size_t j = 0; j < x.size(); ++j) out[j] += strength * std::exp(-alpha * std::abs(x[j] - xs));
  };
  for (const auto& p : sources.points) add(p.x, scale * p.sigma(t));
  for (const auto& s : sources.soft) add(s.x, scale * (2.0 / params.c) * soft_source_rate(s, t, params.dt));
}

std::vector<double> source_convolution(const SourceSpec& sources, double t, const Grid1D& grid,
                                       const SchemeParams& params) {
  sources.validate(grid.a(), grid.b());
  std::vector<double> out(grid.num_nodes(), 0.0);
  add_source_convolution(sources, t, grid.nodes(), params, out);
  return out;
}

WaveState1D init_history(std::span<const double> f, std::span<const double> g,
                         const SourceSpec& sources, const SchemeParams& params, const Grid1D& grid,
                         std::span<const double> f_xx) {
  const std::size_t n = grid.num_nodes();
  if (f.size() != n || g.size() != n || (!f_xx.empty() && f_xx.size() != n))
    throw std::invalid_argument("init_history: array length does not match the grid");
  WaveState1D s;
  s.u_curr.assign(f.begin(), f.end());
  s.u_prev.resize(n);
  const double dt = params.dt;
  const double c2 = params.c * params.c;
  for (std::size_t j = 0; j < n; ++j) {
    double fxx;
    if (!f_xx.empty()) {
      fxx = f_xx[j];
    } else {
      const D2Stencil st = d2_stencil(grid, j);
      fxx = st.apply(f) / (st.ref_width * st.ref_width);
    }
    const double S = sources.smooth ? sources.smooth(grid.x(j), 0.0) : 0.0;
    s.u_prev[j] = f[j] - dt * g[j] + 0.5 * dt * dt * c2 * (fxx + S);
  }
  return s;
}

void two_level_update(std::span<const double> u_curr, std::span<const double> u_prev,
                      std::span<const double> w, double beta, std::span<double> next) {
  const double b2 = beta * beta;
  const double half = 0.5 * b2;
  for (std::size_t j = 0; j < next.size(); ++j)
    next[j] = -(b2 - 2.0) * u_curr[j] - u_prev[j] + half * w[j];
}

Stepper1D::Stepper1D(Grid1D grid, SchemeParams params, BCSpec bc, SourceSpec sources)
    : kernel_(std::move(grid), params.alpha()),
      params_(params),
      bc_(std::move(bc)),
      sources_(std::move(sources)) {
  bc_.validate();
  sources_.validate(kernel_.grid().a(), kernel_.grid().b());
  const std::size_t n = kernel_.size();
  v_.resize(n);
  I_.resize(n);
  next_.resize(n);
}

void Stepper1D::advance(WaveState1D& s) {
  const Grid1D& g = kernel_.grid();
  const std::size_t n = kernel_.size();
  if (s.u_curr.size() != n || s.u_prev.size() != n)
    throw std::invalid_argument("Stepper1D: state does not match the grid");
  const double alpha = kernel_.alpha();
  const double inv_a2 = 1.0 / (alpha * alpha);

  std::span<const double> v = s.u_curr;
  if (sources_.smooth) {
    for (std::size_t j = 0; j < n; ++j) v_[j] = s.u_curr[j] + inv_a2 * sources_.smooth(g.x(j), s.t);
    v = v_;
  }
  fast_convolve_into(v, kernel_, I_);
  add_source_convolution(sources_, s.t, g.nodes(), params_, I_);

  const ClosureInputs in{I_.front(), I_.back(), kernel_.mu()};
  const ClosureContext ctx{params_.beta, alpha, s.t, params_.dt};
  const OutflowEndValues ends{s.u_curr.front(), s.u_prev.front(), s.u_curr.back(), s.u_prev.back()};
  OutflowState ostate = s.outflow.value_or(OutflowState{});
  last_ = apply_closure(bc_, in, ctx, ends, ostate);
  if (bc_.left.kind == BoundaryKind::outflow || bc_.right.kind == BoundaryKind::outflow)
    s.outflow = ostate;

  const auto dl = kernel_.decay_from_left();
  const auto dr = kernel_.decay_from_right();
  for (std::size_t j = 0; j < n; ++j) I_[j] += last_.A * dl[j] + last_.B * dr[j];
  two_level_update(s.u_curr, s.u_prev, I_, params_.beta, next_);

  const double t_next = s.t + params_.dt;
  if (bc_.left.kind == BoundaryKind::dirichlet)
    next_.front() = bc_.left.data ? bc_.left.data(t_next) : 0.0;
  if (bc_.right.kind == BoundaryKind::dirichlet)
    next_.back() = bc_.right.data ? bc_.right.data(t_next) : 0.0;

  std::swap(s.u_prev, s.u_curr);
  std::swap(s.u_curr, next_);
  s.n += 1;
  s.t = static_cast<double>(s.n) * params_.dt;
}

WaveState1D Stepper1D::step(const WaveState1D& state) {
  WaveState1D s = state;
  advance(s);
  return s;
}

WaveState1D step(const WaveState1D& state, const Grid1D& grid, const SchemeParams& params,
                 const BCSpec& bc, const SourceSpec& sources) {
  Stepper1D st(grid, params, bc, sources);
  return st.step(state);
}

std::array<std::complex<double>, 2> amplification_check(double omega, const SchemeParams& params) {
  const double b = params.beta;
  const double z = omega * params.dt;
  const double mid = 2.0 - (b * z) * (b * z) / (b * b + z * z);
  // rho^2 - mid rho + 1 = 0
  const std::complex<double> disc = std::sqrt(std::complex<double>(mid * mid - 4.0, 0.0));
  return {(mid + disc) / 2.0, (mid - disc) / 2.0};
}

}  // namespace molt
