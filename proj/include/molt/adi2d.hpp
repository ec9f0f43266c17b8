#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "molt/boundary.hpp"
#include "molt/domain_decomposition.hpp"
#include "molt/geometry.hpp"
#include "molt/kernel_weights.hpp"
#include "molt/parallel.hpp"

namespace molt {

/// Two time levels on every Domain2D node.
struct Field2D {
  std::vector<double> u_curr;
  std::vector<double> u_prev;
  double t = 0.0;
  long n = 0;
  std::vector<OutflowState> x_outflow;  // per x-line, in units of u
  std::vector<OutflowState> y_outflow;
};

/// A soft source spread uniformly along the row y = const; it injects
/// sigma(t) travelling in +-y. `dsigma` may be empty (centred difference).
struct LineSource2D {
  double y = 0.0;
  std::function<double(double)> sigma;
  std::function<double(double)> dsigma;
};

struct Sources2D {
  std::function<double(double, double, double)> smooth;  // S(x, y, t)
  std::vector<LineSource2D> soft_rows;
};

/// Solves (1/alpha^2) w'' - w = rhs on one line with homogeneous Dirichlet,
/// Neumann or periodic ends: w = -(I[rhs] + A e^{-alpha(x-a)} + B e^{-alpha(b-x)})/2.
std::vector<double> invert_helmholtz_line(std::span<const double> rhs, const Grid1D& grid, double alpha,
                                          BoundaryKind left, BoundaryKind right);

/// The particular solution on a line, optionally decomposed into pieces
/// joined by the coarse recurrences.
class LineConvolver {
 public:
  LineConvolver(const Grid1D& grid, double alpha, const std::vector<std::size_t>& split = {},
                InterfaceStencil mode = InterfaceStencil::halo);

  std::size_t size() const { return n_; }
  double mu() const { return mu_; }
  std::span<const double> decay_from_left() const { return dl_; }
  std::span<const double> decay_from_right() const { return dr_; }
  /// Writes I[f] over the whole line into `out`; `scratch` needs size() entries.
  void convolve(std::span<const double> f, std::span<double> out, std::span<double> scratch) const;

 private:
  std::size_t n_ = 0;
  double alpha_ = 0.0;
  double mu_ = 0.0;
  std::vector<double> dl_, dr_;
  std::vector<LineKernel> pieces_;
  std::vector<std::size_t> offset_;  // first line index of each piece
};

/// ADI stepper: an x-y and a y-x sweep per step, averaged.
class ADISolver {
 public:
  ADISolver(Domain2D domain, SchemeParams params, Sources2D sources = {},
            ExecPolicy policy = ExecPolicy::parallel);

  const Domain2D& domain() const { return dom_; }
  const SchemeParams& params() const { return params_; }
  void set_policy(ExecPolicy p) { policy_ = p; }

  /// Taylor start. `lap` gives the Laplacian of f; when empty a centred
  /// difference of f with a small step is used.
  Field2D init(const std::function<double(double, double)>& f, const std::function<double(double, double)>& g,
               const std::function<double(double, double)>& lap = {}) const;

  void advance(Field2D& s);

  /// The two orderings' Z from the most recent step (for tests).
  const std::vector<double>& z_xy() const { return zA_; }
  const std::vector<double>& z_yx() const { return zB_; }

 private:
  struct LineData {
    LineConvolver conv;
    BCSpec bc;
    std::vector<std::size_t> soft;  // soft_rows crossing this (y-)line
  };
  enum class Stage { first, second };

  void sweep(const std::vector<Line2D>& lines, const std::vector<LineData>& data, Stage stage,
             std::span<const double> in, std::vector<double>& out, const Field2D& s,
             const std::vector<OutflowState>& outflow_in, std::vector<OutflowState>& outflow_out);
  void solve_line(const Line2D& line, const LineData& ld, Stage stage, std::span<const double> in,
                  std::vector<double>& out, const Field2D& s, const OutflowState& ostate,
                  OutflowState& onext, std::vector<double>& f, std::vector<double>& I,
                  std::vector<double>& scratch) const;
  void fill_missing(std::vector<double>& w, const std::vector<std::pair<std::size_t, std::size_t>>& fill) const;

  Domain2D dom_;
  SchemeParams params_;
  Sources2D sources_;
  ExecPolicy policy_;
  std::vector<LineData> xdata_, ydata_;
  std::vector<std::pair<std::size_t, std::size_t>> fill_for_y_, fill_for_x_;  // (node, copy-from)
  std::vector<std::uint8_t> zcount_;
  std::vector<double> rhs_, wA_, wB_, zA_, zB_;
  std::vector<OutflowState> xoA_, yoA_, xoB_, yoB_;
  std::size_t max_line_ = 0;
};

}  // namespace molt
