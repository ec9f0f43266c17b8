#include "molt/grid1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace molt {

namespace {

// A cell shorter than this fraction of its neighbour is skipped by the
// interior stencil; the divided difference across it amplifies noise by the
// inverse ratio.
constexpr double kShortCellRatio = 0.05;

void check_interval(double a, double b, int cells) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("grid: require finite a < b");
  }
  if (cells < 3) {
    throw std::invalid_argument("grid: need at least 3 cells, got " + std::to_string(cells));
  }
}

std::vector<double> widths_of(const std::vector<double>& nodes) {
  std::vector<double> w(nodes.size() - 1);
  for (std::size_t c = 0; c + 1 < nodes.size(); ++c) w[c] = nodes[c + 1] - nodes[c];
  return w;
}

}  // namespace

Grid1D::Grid1D(std::vector<double> nodes, std::vector<double> widths, bool uniform)
    : nodes_(std::move(nodes)), widths_(std::move(widths)), uniform_(uniform) {}

Grid1D Grid1D::uniform(double a, double b, int cells) {
  check_interval(a, b, cells);
  const double dx = (b - a) / cells;
  std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
  for (int j = 0; j <= cells; ++j) nodes[j] = a + j * dx;
  nodes.back() = b;
  return Grid1D(std::move(nodes), std::vector<double>(static_cast<std::size_t>(cells), dx), true);
}

Grid1D Grid1D::chebyshev(double a, double b, int cells, ChebyshevVariant variant) {
  check_interval(a, b, cells);
  const double L = b - a;
  std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
  for (int j = 0; j <= cells; ++j) {
    const double theta = (variant == ChebyshevVariant::half)
                             ? j * std::numbers::pi / (2.0 * cells)
                             : j * std::numbers::pi / cells;
    nodes[j] = (variant == ChebyshevVariant::half) ? a + L * std::cos(theta)
                                                   : a + 0.5 * L * (1.0 + std::cos(theta));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.front() = a;
  nodes.back() = b;
  return from_nodes(std::move(nodes));
}

Grid1D Grid1D::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) throw std::invalid_argument("grid: need at least two nodes");
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1])) {
      throw std::invalid_argument("grid: nodes must be strictly increasing");
    }
  }
  auto widths = widths_of(nodes);
  return Grid1D(std::move(nodes), std::move(widths), false);
}

double Grid1D::max_width() const { return *std::max_element(widths_.begin(), widths_.end()); }
double Grid1D::min_width() const { return *std::min_element(widths_.begin(), widths_.end()); }

std::vector<double> fd_weights(double z, std::span<const double> xs, int order) {
  const int n = static_cast<int>(xs.size());
  if (order < 0 || n <= order) throw std::invalid_argument("fd_weights: not enough nodes");
  // c[i][k]: weight of node i for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

D2Stencil d2_stencil(const Grid1D& grid, std::size_t j, const GhostNodes& ghosts) {
  const std::size_t n = grid.num_nodes();
  if (n < 3) throw std::invalid_argument("d2_stencil: grid needs at least three nodes");
  if (j >= n) throw std::out_of_range("d2_stencil: node index out of range");
  const int N = static_cast<int>(n) - 1;
  const int jj = static_cast<int>(j);

  auto pos = [&](int k) {
    if (k < 0) return *ghosts.left;
    if (k > N) return *ghosts.right;
    return grid.x(static_cast<std::size_t>(k));
  };
  const bool has_left = jj > 0 || ghosts.left.has_value();
  const bool has_right = jj < N || ghosts.right.has_value();

  D2Stencil s;
  s.ref_width = jj > 0 ? grid.h(j - 1) : grid.h(0);

  if (grid.is_uniform()) {
    const double dx = grid.h(0);
    const bool ghost_uniform_left = jj > 0 || (ghosts.left && std::abs((grid.x(0) - *ghosts.left) - dx) <= 1e-12 * dx);
    const bool ghost_uniform_right = jj < N || (ghosts.right && std::abs((*ghosts.right - grid.b()) - dx) <= 1e-12 * dx);
    if (has_left && has_right && ghost_uniform_left && ghost_uniform_right) {
      s.size = 3;
      s.nodes = {jj - 1, jj, jj + 1, 0};
      s.weights = {1.0, -2.0, 1.0, 0.0};
      return s;
    }
    if (!has_left && n >= 4) {
      s.size = 4;
      s.nodes = {0, 1, 2, 3};
      s.weights = {2.0, -5.0, 4.0, -1.0};
      return s;
    }
    if (!has_right && n >= 4) {
      s.size = 4;
      s.nodes = {N, N - 1, N - 2, N - 3};
      s.weights = {2.0, -5.0, 4.0, -1.0};
      return s;
    }
  }

  std::vector<int> idx;
  if (has_left && has_right) {
    const double hl = pos(jj) - pos(jj - 1);
    const double hr = pos(jj + 1) - pos(jj);
    if (hl < kShortCellRatio * hr && jj + 2 <= N) {
      idx = {jj - 1, jj + 1, jj + 2};
    } else if (hr < kShortCellRatio * hl && jj - 2 >= 0) {
      idx = {jj - 2, jj - 1, jj + 1};
    } else {
      idx = {jj - 1, jj, jj + 1};
    }
  } else if (!has_left) {
    if (n >= 4) {
      const bool short_first = grid.h(0) < kShortCellRatio * grid.h(1);
      idx = (short_first && n >= 5) ? std::vector<int>{0, 2, 3, 4} : std::vector<int>{0, 1, 2, 3};
    } else {
      idx = {0, 1, 2};
    }
  } else {
    if (n >= 4) {
      const bool short_last = grid.h(n - 2) < kShortCellRatio * grid.h(n - 3);
      idx = (short_last && n >= 5) ? std::vector<int>{N, N - 2, N - 3, N - 4}
                                   : std::vector<int>{N, N - 1, N - 2, N - 3};
    } else {
      idx = {N, N - 1, N - 2};
    }
  }

  std::vector<double> xs;
  xs.reserve(idx.size());
  for (int k : idx) xs.push_back(pos(k));
  const auto w = fd_weights(pos(jj), xs, 2);
  const double ref2 = s.ref_width * s.ref_width;
  s.size = static_cast<int>(idx.size());
  for (int k = 0; k < s.size; ++k) {
    s.nodes[k] = idx[k];
    s.weights[k] = w[k] * ref2;
  }
  return s;
}

}  // namespace molt
