#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "molt/boundary.hpp"
#include "molt/domain_decomposition.hpp"
#include "molt/grid1d.hpp"

namespace molt {

enum class GeometryKind { rectangle, circle, double_circle, quarter_circle, slit_strip };

const char* to_string(GeometryKind k);
GeometryKind geometry_kind_from_string(const std::string& name);

/// A piece of a grid line inside the domain, with the boundary condition of
/// the segment each end lies on.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  BoundaryKind lo_kind = BoundaryKind::dirichlet;
  BoundaryKind hi_kind = BoundaryKind::dirichlet;
};

/// Analytic description of the 2D domains.
///
/// rectangle:      [-lx/2, lx/2] x [-ly/2, ly/2], one condition per side
/// circle:         radius `radius` about the origin, Dirichlet
/// double_circle:  union of two disks of radius `radius` centred at (+-gamma, 0), Dirichlet
/// quarter_circle: the part of the circle with x <= 0, y >= 0; Neumann on the axes
/// slit_strip:     [-period/2, period/2] x [-ly/2, ly/2], periodic in x, outflow at
///                 y = +-ly/2, screen at y = 0 except |x| < aperture/2
struct Geometry {
  GeometryKind kind = GeometryKind::rectangle;
  double lx = 1.0, ly = 1.0;
  double radius = 1.0;
  double gamma = 0.2;
  double aperture = 0.1;
  double period = 1.0;
  BoundaryKind left = BoundaryKind::dirichlet;
  BoundaryKind right = BoundaryKind::dirichlet;
  BoundaryKind bottom = BoundaryKind::dirichlet;
  BoundaryKind top = BoundaryKind::dirichlet;

  static Geometry rectangle(double lx, double ly, BoundaryKind all);
  static Geometry circle(double radius);
  static Geometry double_circle(double radius, double gamma);
  static Geometry quarter_circle(double radius);
  static Geometry slit_strip(double period, double aperture, double ly);

  /// Throws std::invalid_argument for inconsistent parameters.
  void validate() const;
  bool inside(double x, double y) const;
  bool periodic_x() const;
  /// Bounding box [x0, x1] x [y0, y1].
  double x_min() const;
  double x_max() const;
  double y_min() const;
  double y_max() const;
  /// The Cartesian mesh is x = anchor_x + k dx, y = anchor_y + j dy.
  double anchor_x() const;
  double anchor_y() const;

  /// Intervals of the line y = const inside the closed domain. `tol` decides
  /// whether the line lies on an edge.
  std::vector<Interval> row(double y, double tol) const;
  /// Intervals of the line x = const.
  std::vector<Interval> column(double x, double tol) const;
};

enum class Axis { x, y };

/// One ADI line: a Grid1D along x (y fixed) or along y (x fixed).
struct Line2D {
  Axis axis = Axis::x;
  double fixed = 0.0;
  Grid1D grid;
  std::vector<std::size_t> node;  // field index of each line node
  BoundaryKind lo_kind = BoundaryKind::dirichlet;
  BoundaryKind hi_kind = BoundaryKind::dirichlet;
  std::vector<std::size_t> split;  // interior line indices where the line is decomposed

  bool has_outflow() const {
    return lo_kind == BoundaryKind::outflow || hi_kind == BoundaryKind::outflow;
  }
};

/// A field node: Cartesian or a line endpoint on the boundary.
struct Node2D {
  double x = 0.0, y = 0.0;
  bool on_grid = false;
  long k = 0, j = 0;     // Cartesian indices when on_grid
  bool pinned = false;   // homogeneous Dirichlet node, u = 0
  int x_line = -1;       // owning lines, -1 if none
  int y_line = -1;
  std::size_t x_pos = 0, y_pos = 0;  // position along those lines
};

struct BuildOptions {
  bool dd_split = false;  // rectangle only: decompose lines at x = 0 and y = 0
  InterfaceStencil interface = InterfaceStencil::halo;
};

struct Domain2D {
  Geometry geometry;
  double dx = 0.0, dy = 0.0;
  std::vector<Node2D> nodes;
  std::vector<Line2D> x_lines;
  std::vector<Line2D> y_lines;
  std::vector<std::string> warnings;
  BuildOptions options;

  std::size_t num_nodes() const { return nodes.size(); }
  /// Index of Cartesian node (k, j), if registered.
  std::optional<std::size_t> find(long k, long j) const;

 private:
  friend Domain2D build_lines(const Geometry&, double, double, const BuildOptions&);
  std::vector<std::pair<std::pair<long, long>, std::size_t>> grid_index_;  // sorted
};

/// Embeds the geometry in a Cartesian mesh and builds the x- and y-lines.
/// Lines without an interior node are dropped with a warning.
Domain2D build_lines(const Geometry& geom, double dx, double dy, const BuildOptions& opts = {});

/// Boundary conditions of a line's two ends (homogeneous data).
BCSpec bc_for_line(const Line2D& line);

}  // namespace molt
