#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "molt/harness/config.hpp"
#include "molt/parallel.hpp"

namespace molt::harness {

/// NaN or infinity in the solution (CLI exit code 3).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunOptions {
  ExecPolicy policy = ExecPolicy::parallel;
  bool write_snapshots = true;
  /// Called after every step with (t, max |u|).
  std::function<void(double, double)> observer;
};

struct RunResult {
  double resolution = 0.0;  // N (1D) or dx (2D)
  double dt = 0.0;
  long steps = 0;
  double t = 0.0;
  std::size_t num_nodes = 0;
  double max_error = kNaN;  // vs the exact reference, over the error window
  double max_abs_u = 0.0;
  double initial_max_abs_u = 0.0;
  double runtime_s = 0.0;
  std::vector<std::string> snapshots;
};

/// Runs one configuration at refinement `level` (N * level cells in 1D,
/// spacing / level in 2D).
RunResult run(const RunConfig& cfg, int level = 1, const RunOptions& opts = {});

struct RefinementRow {
  double resolution = 0.0;
  double error = kNaN;
  double order = kNaN;
};

struct RefinementReport {
  std::vector<RefinementRow> rows;
  std::string config_hash;
  double runtime_s = 0.0;
};

/// Error against the configured reference at each level; orders use the
/// ratio of consecutive levels.
RefinementReport refine(const RunConfig& cfg, const std::vector<int>& levels, const RunOptions& opts = {});

struct DecompRow {
  int N = 0;
  double dd_error = kNaN, dd_order = kNaN;
  double outflow_error = kNaN, outflow_order = kNaN;
  double total_error = kNaN, total_order = kNaN;
};

/// Three runs per level: decomposed with outflow, monolithic with outflow,
/// monolithic on the line extended by c T on each side.
std::vector<DecompRow> decomp_compare(const RunConfig& cfg, const std::vector<int>& levels,
                                      const RunOptions& opts = {});

}  // namespace molt::harness
