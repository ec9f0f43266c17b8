#pragma once

#include <span>
#include <vector>

#include "molt/grid1d.hpp"
#include "molt/kernel_weights.hpp"

namespace molt {

/// Particular solution I[u] = alpha * int_a^b u(y) exp(-alpha|x-y|) dy at the
/// nodes, split into its left- and right-travelling characteristics.
struct ConvResult {
  std::vector<double> I;
  std::vector<double> IL;  // IL[0] == 0
  std::vector<double> IR;  // IR[N] == 0
};

struct LocalIntegrals {
  std::vector<double> JL;  // JL[0] == 0
  std::vector<double> JR;  // JR[N] == 0
};

/// Values of the ghost nodes named in the kernel's GhostNodes.
struct HaloValues {
  double left = 0.0;
  double right = 0.0;
};

/// Everything the O(N) convolution needs for one (grid, alpha) pair: per-cell
/// compact-Simpson weights, per-node second-derivative stencils with their
/// cell-width scalings, and the two homogeneous decay profiles.
class LineKernel {
 public:
  LineKernel(Grid1D grid, double alpha, const GhostNodes& ghosts = {});

  const Grid1D& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  std::size_t size() const { return grid_.num_nodes(); }
  /// exp(-alpha (b - a)).
  double mu() const { return mu_; }
  std::span<const ConvWeights> cells() const { return cells_; }
  const D2Stencil& stencil(std::size_t j) const { return stencils_[j]; }
  /// exp(-alpha (x_j - a)) and exp(-alpha (b - x_j)).
  std::span<const double> decay_from_left() const { return decay_left_; }
  std::span<const double> decay_from_right() const { return decay_right_; }

  /// h^2 u'' at node j scaled to the cell on its left (rL) and right (rR),
  /// premultiplied by that cell's R weight.
  double r_left(std::size_t j) const { return r_left_[j]; }
  double r_right(std::size_t j) const { return r_right_[j]; }

 private:
  Grid1D grid_;
  double alpha_;
  double mu_;
  std::vector<ConvWeights> cells_;
  std::vector<D2Stencil> stencils_;
  std::vector<double> r_left_;
  std::vector<double> r_right_;
  std::vector<double> decay_left_;
  std::vector<double> decay_right_;
};

LocalIntegrals local_integrals(std::span<const double> u, const LineKernel& kernel,
                               const HaloValues& halo = {});
LocalIntegrals local_integrals(std::span<const double> u, const Grid1D& grid, double alpha);

ConvResult fast_convolve(std::span<const double> u, const LineKernel& kernel,
                         const HaloValues& halo = {});
ConvResult fast_convolve(std::span<const double> u, const Grid1D& grid, double alpha);

/// Allocation-free form used by the sweep kernels: writes I into `out`.
void fast_convolve_into(std::span<const double> u, const LineKernel& kernel,
                        std::span<double> out, const HaloValues& halo = {});

/// w_j = I_j + A exp(-alpha(x_j - a)) + B exp(-alpha(b - x_j)).
std::vector<double> assemble(std::span<const double> I, double A, double B, const LineKernel& kernel);
std::vector<double> assemble(const ConvResult& conv, double A, double B, const Grid1D& grid,
                             double alpha);

}  // namespace molt
