#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "molt/boundary.hpp"
#include "molt/domain_decomposition.hpp"

namespace molt::harness {

/// Bad or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One piece of a decomposed 1D mesh: `kind` in {uniform, chebyshev_half,
/// chebyshev_full}, with multiplier * N cells.
struct SubdomainMesh {
  std::string kind = "uniform";
  int multiplier = 1;
};

/// sigma(t) = amplitude sin(omega t) at x.
struct PointSourceConfig {
  double x = 0.0;
  double amplitude = 1.0;
  double omega = 0.0;
};

/// A complete experiment. Keys in the config file match the member names.
struct RunConfig {
  int dimension = 1;

  // 1D line
  double a = -1.0, b = 1.0;
  std::string mesh = "uniform";
  int N = 20;
  std::vector<SubdomainMesh> subdomains;  // empty: single domain
  BoundaryKind bc_left = BoundaryKind::outflow;
  BoundaryKind bc_right = BoundaryKind::outflow;
  InterfaceStencil dd_interface = InterfaceStencil::one_sided;
  std::vector<PointSourceConfig> point_sources;

  // time stepping
  double beta = 2.0;
  double c = 1.0;
  double cfl = 1.0;
  std::optional<double> dt;  // overrides cfl
  double t_final = 2.0;

  // initial condition: gaussian | zero | cavity_mode | bessel_mode | double_circle_bump
  std::string initial = "gaussian";
  // second time level: taylor (from f, g) | exact (2D, from the exact solution at -dt)
  std::string start = "taylor";

  // 2D
  std::string geometry = "rectangle";
  double lx = 1.0, ly = 1.0;
  double radius = 1.0;
  double gamma = 0.2;
  double aperture = 0.1;
  double period = 1.0;
  BoundaryKind bc = BoundaryKind::dirichlet;  // rectangle, all sides
  double dx = 0.025;
  std::optional<double> dy;
  int mode_m = 0, mode_n = 0;
  bool dd_split = false;
  std::optional<double> source_y;  // slit incident wave row, default -ly/4

  // errors and output
  std::string reference = "exact";  // exact | self | full_circle | none
  int reference_divisor = 8;
  std::optional<std::pair<double, double>> error_window;
  std::vector<double> snapshot_times;
  std::string snapshot_prefix;
  std::string report_path;

  /// Parses `key = value` lines with `#` comments. Unknown keys and
  /// malformed values throw ConfigError.
  static RunConfig parse(std::istream& in);
  static RunConfig parse_string(const std::string& text);
  static RunConfig load(const std::string& path);

  void validate() const;
  /// Short stable hash of the normalized key/value pairs.
  std::string hash() const;
  double effective_dy() const { return dy.value_or(dx); }

  std::map<std::string, std::string> raw;
};

}  // namespace molt::harness
