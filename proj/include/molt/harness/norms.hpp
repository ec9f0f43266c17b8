#pragma once

#include <span>
#include <vector>

#include "molt/grid1d.hpp"

namespace molt::harness {

/// sqrt(sum e_j^2 w_j / sum w_j).
double weighted_l2(std::span<const double> e, std::span<const double> w);
/// Root mean square.
double rms(std::span<const double> e);
/// Local cell measure (h_{j-1} + h_j)/2 of each node.
std::vector<double> node_weights(const Grid1D& grid);
/// Discrete L2 of u - ref on a 1D grid.
double l2_error(std::span<const double> u, std::span<const double> ref, const Grid1D& grid);
/// log(e_prev/e)/log(ratio).
double observed_order(double e_prev, double e, double ratio);

}  // namespace molt::harness
