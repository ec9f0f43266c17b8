#include "molt/convolution.hpp"

#include <cmath>
#include <stdexcept>

namespace molt {

namespace {

void check_sizes(std::span<const double> u, const LineKernel& kernel) {
  if (u.size() != kernel.size()) {
    throw std::invalid_argument("convolution: field length does not match grid");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("convolution: alpha must be positive and finite");
  }
}

}  // namespace

LineKernel::LineKernel(Grid1D grid, double alpha, const GhostNodes& ghosts)
    : grid_(std::move(grid)), alpha_(alpha) {
  check_alpha(alpha);
  const std::size_t n = grid_.num_nodes();
  if (n < 3) throw std::invalid_argument("LineKernel: line needs at least three nodes");

  mu_ = std::exp(-alpha * grid_.length());
  cells_.resize(grid_.num_cells());
  if (grid_.is_uniform()) {
    const ConvWeights w = simpson_weights(alpha * grid_.h(0));
    std::fill(cells_.begin(), cells_.end(), w);
  } else {
    for (std::size_t c = 0; c < cells_.size(); ++c) cells_[c] = simpson_weights(alpha * grid_.h(c));
  }

  stencils_.reserve(n);
  r_left_.assign(n, 0.0);
  r_right_.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    stencils_.push_back(d2_stencil(grid_, j, ghosts));
    const double ref = stencils_.back().ref_width;
    if (j > 0) {
      const double s = grid_.h(j - 1) / ref;
      r_left_[j] = cells_[j - 1].R * s * s;
    }
    if (j + 1 < n) {
      const double s = grid_.h(j) / ref;
      r_right_[j] = cells_[j].R * s * s;
    }
  }

  decay_left_.resize(n);
  decay_right_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    decay_left_[j] = std::exp(-alpha * (grid_.x(j) - grid_.a()));
    decay_right_[j] = std::exp(-alpha * (grid_.b() - grid_.x(j)));
  }
}

LocalIntegrals local_integrals(std::span<const double> u, const LineKernel& kernel,
                               const HaloValues& halo) {
  check_sizes(u, kernel);
  const std::size_t n = kernel.size();
  const auto cells = kernel.cells();
  LocalIntegrals out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    const double d2 = kernel.stencil(j).apply(u, halo.left, halo.right);
    if (j > 0) {
      const ConvWeights& w = cells[j - 1];
      out.JL[j] = w.P * u[j] + w.Q * u[j - 1] + kernel.r_left(j) * d2;
    }
    if (j + 1 < n) {
      const ConvWeights& w = cells[j];
      out.JR[j] = w.P * u[j] + w.Q * u[j + 1] + kernel.r_right(j) * d2;
    }
  }
  return out;
}

LocalIntegrals local_integrals(std::span<const double> u, const Grid1D& grid, double alpha) {
  return local_integrals(u, LineKernel(grid, alpha));
}

ConvResult fast_convolve(std::span<const double> u, const LineKernel& kernel, const HaloValues& halo) {
  const LocalIntegrals J = local_integrals(u, kernel, halo);
  const std::size_t n = kernel.size();
  const auto cells = kernel.cells();
  ConvResult r{std::vector<double>(n), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t j = 1; j < n; ++j) r.IL[j] = cells[j - 1].d * r.IL[j - 1] + J.JL[j];
  for (std::size_t j = n - 1; j-- > 0;) r.IR[j] = cells[j].d * r.IR[j + 1] + J.JR[j];
  for (std::size_t j = 0; j < n; ++j) r.I[j] = r.IL[j] + r.IR[j];
  return r;
}

ConvResult fast_convolve(std::span<const double> u, const Grid1D& grid, double alpha) {
  return fast_convolve(u, LineKernel(grid, alpha));
}

void fast_convolve_into(std::span<const double> u, const LineKernel& kernel, std::span<double> out,
                        const HaloValues& halo) {
  check_sizes(u, kernel);
  const std::size_t n = kernel.size();
  if (out.size() != n) throw std::invalid_argument("convolution: output length does not match grid");
  const auto cells = kernel.cells();

  // Left characteristic, ascending; out holds IL afterwards.
  double il = 0.0;
  out[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const ConvWeights& w = cells[j - 1];
    const double d2 = kernel.stencil(j).apply(u, halo.left, halo.right);
    il = w.d * il + (w.P * u[j] + w.Q * u[j - 1] + kernel.r_left(j) * d2);
    out[j] = il;
  }
  // Right characteristic, descending, accumulated in place.
  double ir = 0.0;
  for (std::size_t j = n - 1; j-- > 0;) {
    const ConvWeights& w = cells[j];
    const double d2 = kernel.stencil(j).apply(u, halo.left, halo.right);
    ir = w.d * ir + (w.P * u[j] + w.Q * u[j + 1] + kernel.r_right(j) * d2);
    out[j] += ir;
  }
}

std::vector<double> assemble(std::span<const double> I, double A, double B, const LineKernel& kernel) {
  if (I.size() != kernel.size()) throw std::invalid_argument("assemble: length mismatch");
  const auto dl = kernel.decay_from_left();
  const auto dr = kernel.decay_from_right();
  std::vector<double> w(I.size());
  for (std::size_t j = 0; j < I.size(); ++j) w[j] = I[j] + A * dl[j] + B * dr[j];
  return w;
}

std::vector<double> assemble(const ConvResult& conv, double A, double B, const Grid1D& grid,
                             double alpha) {
  return assemble(conv.I, A, B, LineKernel(grid, alpha));
}

}  // namespace molt
