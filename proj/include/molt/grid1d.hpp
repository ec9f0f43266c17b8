#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace molt {

enum class ChebyshevVariant {
  half,  // x_j = a + (b-a) cos(j pi / (2N)), quarter-wave clustering at b
  full   // x_j = a + (b-a)(1 + cos(j pi / N))/2, clustering at both ends
};

/// An ordered partition a = x_0 < x_1 < ... < x_N = b.
///
/// Cell c spans [x_c, x_{c+1}] and has width h(c). Grids built by
/// `uniform()` remember that fact so that the classical integer stencils are
/// used verbatim.
class Grid1D {
 public:
  Grid1D() = default;  // empty placeholder; assign before use
  static Grid1D uniform(double a, double b, int cells);
  static Grid1D chebyshev(double a, double b, int cells, ChebyshevVariant variant);
  /// Arbitrary strictly increasing node set with at least two nodes.
  static Grid1D from_nodes(std::vector<double> nodes);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_cells() const { return widths_.size(); }
  double a() const { return nodes_.front(); }
  double b() const { return nodes_.back(); }
  double length() const { return nodes_.back() - nodes_.front(); }
  bool is_uniform() const { return uniform_; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> widths() const { return widths_; }
  double x(std::size_t j) const { return nodes_[j]; }
  double h(std::size_t cell) const { return widths_[cell]; }
  double max_width() const;
  double min_width() const;

 private:
  Grid1D(std::vector<double> nodes, std::vector<double> widths, bool uniform);

  std::vector<double> nodes_;
  std::vector<double> widths_;
  bool uniform_ = false;
};

/// Second-derivative stencil at one node.
///
/// `sum(weights[k] * u[nodes[k]])` approximates ref_width^2 * u''(x_j). Node
/// index -1 denotes a left ghost node and num_nodes() a right ghost node
/// (supplied by a neighbouring subdomain).
struct D2Stencil {
  std::array<int, 4> nodes{};
  std::array<double, 4> weights{};
  int size = 0;
  double ref_width = 0.0;

  /// Contracts the stencil with nodal values; ghost entries read the
  /// supplied neighbour values.
  double apply(std::span<const double> u, double left_ghost = 0.0, double right_ghost = 0.0) const {
    const int n = static_cast<int>(u.size());
    double s = 0.0;
    for (int k = 0; k < size; ++k) {
      const int i = nodes[k];
      const double v = i < 0 ? left_ghost : (i >= n ? right_ghost : u[static_cast<std::size_t>(i)]);
      s += weights[k] * v;
    }
    return s;
  }
};

/// Optional neighbour positions beyond the ends of a grid.
struct GhostNodes {
  std::optional<double> left;
  std::optional<double> right;
};

/// Stencil for node j. Exact for polynomials of degree <= 2.
/// Throws std::out_of_range for a bad index and std::invalid_argument for
/// grids with fewer than three nodes.
D2Stencil d2_stencil(const Grid1D& grid, std::size_t j, const GhostNodes& ghosts = {});

/// Finite-difference weights for the `order`-th derivative at `z` of the
/// interpolating polynomial through `xs` (Fornberg's recursion).
std::vector<double> fd_weights(double z, std::span<const double> xs, int order);

}  // namespace molt
