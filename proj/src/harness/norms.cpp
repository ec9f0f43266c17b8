#include "molt/harness/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace molt::harness {

double weighted_l2(std::span<const double> e, std::span<const double> w) {
  if (e.size() != w.size()) throw std::invalid_argument("weighted_l2: length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    num += e[i] * e[i] * w[i];
    den += w[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

double rms(std::span<const double> e) {
  if (e.empty()) return 0.0;
  double s = 0.0;
  for (double v : e) s += v * v;
  return std::sqrt(s / static_cast<double>(e.size()));
}

std::vector<double> node_weights(const Grid1D& grid) {
  const std::size_t n = grid.num_nodes();
  std::vector<double> w(n, 0.0);
  for (std::size_t c = 0; c < grid.num_cells(); ++c) {
    w[c] += 0.5 * grid.h(c);
    w[c + 1] += 0.5 * grid.h(c);
  }
  return w;
}

double l2_error(std::span<const double> u, std::span<const double> ref, const Grid1D& grid) {
  if (u.size() != ref.size() || u.size() != grid.num_nodes()) throw std::invalid_argument("l2_error: length mismatch");
  std::vector<double> e(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) e[i] = u[i] - ref[i];
  return weighted_l2(e, node_weights(grid));
}

double observed_order(double e_prev, double e, double ratio) {
  if (!(e_prev > 0.0) || !(e > 0.0) || !(ratio > 0.0) || ratio == 1.0)
    return std::numeric_limits<double>::quiet_NaN();
  return std::log(e_prev / e) / std::log(ratio);
}

}  // namespace molt::harness
