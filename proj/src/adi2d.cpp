#include "molt/adi2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "molt/stepper1d.hpp"

namespace molt {

std::vector<double> invert_helmholtz_line(std::span<const double> rhs, const Grid1D& grid, double alpha,
                                          BoundaryKind left, BoundaryKind right) {
  if (left == BoundaryKind::outflow || right == BoundaryKind::outflow ||
      left == BoundaryKind::transmission || right == BoundaryKind::transmission)
    throw std::invalid_argument("invert_helmholtz_line: ends must be dirichlet, neumann or periodic");
  BCSpec bc;
  bc.left.kind = left;
  bc.right.kind = right;
  bc.validate();
  const LineKernel kernel(grid, alpha);
  std::vector<double> I(grid.num_nodes());
  fast_convolve_into(rhs, kernel, I);
  OutflowState unused;
  const HomogeneousCoeffs h =
      apply_closure(bc, {I.front(), I.back(), kernel.mu()}, ClosureContext{2.0, alpha, 0.0, 0.0}, {}, unused);
  const auto dl = kernel.decay_from_left();
  const auto dr = kernel.decay_from_right();
  for (std::size_t j = 0; j < I.size(); ++j) I[j] = -0.5 * (I[j] + h.A * dl[j] + h.B * dr[j]);
  return I;
}

LineConvolver::LineConvolver(const Grid1D& grid, double alpha, const std::vector<std::size_t>& split,
                             InterfaceStencil mode)
    : n_(grid.num_nodes()), alpha_(alpha) {
  mu_ = std::exp(-alpha * grid.length());
  dl_.resize(n_);
  dr_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    dl_[j] = std::exp(-alpha * (grid.x(j) - grid.a()));
    dr_[j] = std::exp(-alpha * (grid.b() - grid.x(j)));
  }
  std::vector<std::size_t> cuts{0};
  for (std::size_t c : split) cuts.push_back(c);
  cuts.push_back(n_ - 1);
  const auto x = grid.nodes();
  for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
    const std::size_t lo = cuts[m], hi = cuts[m + 1];
    std::vector<double> nodes(x.begin() + static_cast<long>(lo), x.begin() + static_cast<long>(hi) + 1);
    Grid1D g = nodes.size() >= 4 && grid.is_uniform()
                   ? Grid1D::uniform(nodes.front(), nodes.back(), static_cast<int>(nodes.size() - 1))
                   : Grid1D::from_nodes(std::move(nodes));
    if (cuts.size() == 2) g = grid;
    GhostNodes ghosts;
    if (mode == InterfaceStencil::halo) {
      if (lo > 0) ghosts.left = x[lo - 1];
      if (hi + 1 < n_) ghosts.right = x[hi + 1];
    }
    pieces_.emplace_back(std::move(g), alpha, ghosts);
    offset_.push_back(lo);
  }
}

void LineConvolver::convolve(std::span<const double> f, std::span<double> out, std::span<double> scratch) const {
  if (pieces_.size() == 1) {
    fast_convolve_into(f, pieces_.front(), out);
    return;
  }
  const std::size_t M = pieces_.size();
  std::vector<double> right_vals(M), left_vals(M);
  for (std::size_t m = 0; m < M; ++m) {
    const std::size_t lo = offset_[m], len = pieces_[m].size();
    HaloValues halo;
    if (lo > 0) halo.left = f[lo - 1];
    if (lo + len < n_) halo.right = f[lo + len];
    auto dst = scratch.subspan(lo, len);
    fast_convolve_into(f.subspan(lo, len), pieces_[m], dst, halo);
    left_vals[m] = dst.front();
    right_vals[m] = dst.back();
  }
  std::vector<double> X;
  for (std::size_t m = 0; m < M; ++m) X.push_back(pieces_[m].grid().a());
  X.push_back(pieces_.back().grid().b());
  CoarseMesh coarse(std::move(X), alpha_);
  const auto coeffs = coarse_assemble(coarse, right_vals, left_vals,
                                      [](const ClosureInputs&) { return HomogeneousCoeffs{}; });
  for (std::size_t m = 0; m < M; ++m) {
    const std::size_t lo = offset_[m], len = pieces_[m].size();
    const std::size_t end = m + 1 == M ? len : len - 1;
    const auto pl = pieces_[m].decay_from_left();
    const auto pr = pieces_[m].decay_from_right();
    for (std::size_t p = 0; p < end; ++p)
      out[lo + p] = scratch[lo + p] + coeffs[m].A * pl[p] + coeffs[m].B * pr[p];
  }
}

ADISolver::ADISolver(Domain2D domain, SchemeParams params, Sources2D sources, ExecPolicy policy)
    : dom_(std::move(domain)), params_(params), sources_(std::move(sources)), policy_(policy) {
  const double alpha = params_.alpha();
  auto build = [&](const std::vector<Line2D>& lines, std::vector<LineData>& data, bool is_y) {
    data.reserve(lines.size());
    for (const Line2D& l : lines) {
      LineData d{LineConvolver(l.grid, alpha, l.split, dom_.options.interface), bc_for_line(l), {}};
      if (is_y) {
        for (std::size_t i = 0; i < sources_.soft_rows.size(); ++i) {
          const double ys = sources_.soft_rows[i].y;
          if (ys >= l.grid.a() && ys <= l.grid.b()) d.soft.push_back(i);
        }
      }
      max_line_ = std::max(max_line_, l.node.size());
      data.push_back(std::move(d));
    }
  };
  build(dom_.x_lines, xdata_, false);
  build(dom_.y_lines, ydata_, true);

  // Nodes on only one family get the first-sweep value from their neighbour
  // along that line when the end is Neumann; other kinds cannot be closed.
  auto plan_fill = [&](bool y_family, std::vector<std::pair<std::size_t, std::size_t>>& fill) {
    for (std::size_t i = 0; i < dom_.nodes.size(); ++i) {
      const Node2D& nd = dom_.nodes[i];
      const int own = y_family ? nd.y_line : nd.x_line;
      const int other = y_family ? nd.x_line : nd.y_line;
      if (own < 0 || other >= 0 || nd.pinned) continue;
      const Line2D& l = y_family ? dom_.y_lines[static_cast<std::size_t>(own)]
                                 : dom_.x_lines[static_cast<std::size_t>(own)];
      const std::size_t pos = y_family ? nd.y_pos : nd.x_pos;
      const std::size_t last = l.node.size() - 1;
      const BoundaryKind kind = pos == 0 ? l.lo_kind : (pos == last ? l.hi_kind : BoundaryKind::transmission);
      if (kind != BoundaryKind::neumann)
        throw std::invalid_argument("ADISolver: boundary node at (" + std::to_string(nd.x) + ", " +
                                    std::to_string(nd.y) + ") is reached by one sweep direction only");
      fill.push_back({i, l.node[pos == 0 ? 1 : last - 1]});
    }
  };
  plan_fill(true, fill_for_y_);
  plan_fill(false, fill_for_x_);

  const std::size_t N = dom_.nodes.size();
  zcount_.assign(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    zcount_[i] = static_cast<std::uint8_t>((dom_.nodes[i].x_line >= 0) + (dom_.nodes[i].y_line >= 0));
  rhs_.assign(N, 0.0);
  wA_.assign(N, 0.0);
  wB_.assign(N, 0.0);
  zA_.assign(N, 0.0);
  zB_.assign(N, 0.0);
  xoA_.resize(dom_.x_lines.size());
  xoB_.resize(dom_.x_lines.size());
  yoA_.resize(dom_.y_lines.size());
  yoB_.resize(dom_.y_lines.size());
}

Field2D ADISolver::init(const std::function<double(double, double)>& f,
                        const std::function<double(double, double)>& g,
                        const std::function<double(double, double)>& lap) const {
  const std::size_t N = dom_.nodes.size();
  Field2D s;
  s.u_curr.assign(N, 0.0);
  s.u_prev.assign(N, 0.0);
  s.x_outflow.assign(dom_.x_lines.size(), OutflowState{});
  s.y_outflow.assign(dom_.y_lines.size(), OutflowState{});
  const double dt = params_.dt, c2 = params_.c * params_.c;
  const double h = 1e-2 * std::min(dom_.dx, dom_.dy);
  for (std::size_t i = 0; i < N; ++i) {
    const Node2D& nd = dom_.nodes[i];
    if (nd.pinned) continue;
    const double f0 = f(nd.x, nd.y);
    double L;
    if (lap) {
      L = lap(nd.x, nd.y);
    } else {
      L = (f(nd.x + h, nd.y) + f(nd.x - h, nd.y) + f(nd.x, nd.y + h) + f(nd.x, nd.y - h) - 4.0 * f0) / (h * h);
    }
    const double S = sources_.smooth ? sources_.smooth(nd.x, nd.y, 0.0) : 0.0;
    s.u_curr[i] = f0;
    s.u_prev[i] = f0 - dt * (g ? g(nd.x, nd.y) : 0.0) + 0.5 * dt * dt * c2 * (L + S);
  }
  return s;
}

void ADISolver::solve_line(const Line2D& line, const LineData& ld, Stage stage, std::span<const double> in,
                           std::vector<double>& out, const Field2D& s, const OutflowState& ostate,
                           OutflowState& onext, std::vector<double>& f, std::vector<double>& I,
                           std::vector<double>& scratch) const {
  const std::size_t n = line.node.size();
  for (std::size_t p = 0; p < n; ++p) f[p] = in[line.node[p]];
  const std::span<double> Is(I.data(), n);
  ld.conv.convolve(std::span<const double>(f.data(), n), Is, std::span<double>(scratch.data(), n));

  const double b2 = params_.beta * params_.beta;
  const double kappa = stage == Stage::first ? b2 : -b2;  // I[f] = kappa I[u] in the 1D analogy
  const double alpha = params_.alpha();
  for (std::size_t i : ld.soft) {
    const LineSource2D& src = sources_.soft_rows[i];
    const SoftSource ss{src.y, src.sigma, src.dsigma};
    const double amp = kappa * 2.0 * params_.dt / params_.beta * soft_source_rate(ss, s.t, params_.dt);
    if (amp == 0.0) continue;
    for (std::size_t p = 0; p < n; ++p) Is[p] += amp * std::exp(-alpha * std::abs(line.grid.x(p) - src.y));
  }

  const ClosureContext ctx{params_.beta, alpha, s.t, params_.dt};
  HomogeneousCoeffs h;
  if (line.has_outflow()) {
    const std::size_t a = line.node.front(), b = line.node.back();
    const OutflowEndValues ends{s.u_curr[a], s.u_prev[a], s.u_curr[b], s.u_prev[b]};
    onext = ostate;
    const HomogeneousCoeffs hu =
        apply_closure(ld.bc, {Is[0] / kappa, Is[n - 1] / kappa, ld.conv.mu()}, ctx, ends, onext);
    h = {kappa * hu.A, kappa * hu.B};
  } else {
    OutflowState unused;
    h = apply_closure(ld.bc, {Is[0], Is[n - 1], ld.conv.mu()}, ctx, {}, unused);
  }
  const auto dl = ld.conv.decay_from_left();
  const auto dr = ld.conv.decay_from_right();
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t node = line.node[p];
    if (dom_.nodes[node].pinned) continue;
    out[node] = -0.5 * (Is[p] + h.A * dl[p] + h.B * dr[p]);
  }
}

void ADISolver::sweep(const std::vector<Line2D>& lines, const std::vector<LineData>& data, Stage stage,
                      std::span<const double> in, std::vector<double>& out, const Field2D& s,
                      const std::vector<OutflowState>& outflow_in, std::vector<OutflowState>& outflow_out) {
  const int L = static_cast<int>(lines.size());
  const bool par = policy_ == ExecPolicy::parallel;
#pragma omp parallel if (par)
  {
    std::vector<double> f(max_line_), I(max_line_), scratch(max_line_);
#pragma omp for schedule(dynamic, 8)
    for (int li = 0; li < L; ++li) {
      const auto l = static_cast<std::size_t>(li);
      solve_line(lines[l], data[l], stage, in, out, s, outflow_in[l], outflow_out[l], f, I, scratch);
    }
  }
}

void ADISolver::fill_missing(std::vector<double>& w,
                             const std::vector<std::pair<std::size_t, std::size_t>>& fill) const {
  for (const auto& [node, from] : fill) w[node] = w[from];
}

void ADISolver::advance(Field2D& s) {
  const std::size_t N = dom_.nodes.size();
  if (s.u_curr.size() != N || s.u_prev.size() != N)
    throw std::invalid_argument("ADISolver: field does not match the domain");
  if (s.x_outflow.size() != dom_.x_lines.size()) s.x_outflow.assign(dom_.x_lines.size(), OutflowState{});
  if (s.y_outflow.size() != dom_.y_lines.size()) s.y_outflow.assign(dom_.y_lines.size(), OutflowState{});
  const double b2 = params_.beta * params_.beta;
  const double cdt2 = (params_.c * params_.dt) * (params_.c * params_.dt);

  for (std::size_t i = 0; i < N; ++i) {
    const Node2D& nd = dom_.nodes[i];
    rhs_[i] = b2 * s.u_curr[i] + (sources_.smooth ? cdt2 * sources_.smooth(nd.x, nd.y, s.t) : 0.0);
  }
  std::fill(wA_.begin(), wA_.end(), 0.0);
  std::fill(wB_.begin(), wB_.end(), 0.0);
  std::fill(zA_.begin(), zA_.end(), 0.0);
  std::fill(zB_.begin(), zB_.end(), 0.0);

  // x-y ordering.
  sweep(dom_.x_lines, xdata_, Stage::first, rhs_, wA_, s, s.x_outflow, xoA_);
  fill_missing(wA_, fill_for_y_);
  sweep(dom_.y_lines, ydata_, Stage::second, wA_, zA_, s, s.y_outflow, yoA_);
  // y-x ordering.
  sweep(dom_.y_lines, ydata_, Stage::first, rhs_, wB_, s, s.y_outflow, yoB_);
  fill_missing(wB_, fill_for_x_);
  sweep(dom_.x_lines, xdata_, Stage::second, wB_, zB_, s, s.x_outflow, xoB_);

  const double c0 = b2 - 2.0;
  for (std::size_t i = 0; i < N; ++i) {
    const Node2D& nd = dom_.nodes[i];
    double next = 0.0;
    if (!nd.pinned && zcount_[i] > 0) {
      const double z = (zA_[i] + zB_[i]) / static_cast<double>(zcount_[i]);
      next = z - s.u_prev[i] - c0 * s.u_curr[i];
    }
    s.u_prev[i] = s.u_curr[i];
    s.u_curr[i] = next;
  }
  for (std::size_t l = 0; l < dom_.x_lines.size(); ++l)
    if (dom_.x_lines[l].has_outflow())
      s.x_outflow[l] = {0.5 * (xoA_[l].A_prev + xoB_[l].A_prev), 0.5 * (xoA_[l].B_prev + xoB_[l].B_prev)};
  for (std::size_t l = 0; l < dom_.y_lines.size(); ++l)
    if (dom_.y_lines[l].has_outflow())
      s.y_outflow[l] = {0.5 * (yoA_[l].A_prev + yoB_[l].A_prev), 0.5 * (yoA_[l].B_prev + yoB_[l].B_prev)};
  s.n += 1;
  s.t = static_cast<double>(s.n) * params_.dt;
}

}  // namespace molt
