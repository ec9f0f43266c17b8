#include "molt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace molt {

const char* to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::rectangle: return "rectangle";
    case GeometryKind::circle: return "circle";
    case GeometryKind::double_circle: return "double_circle";
    case GeometryKind::quarter_circle: return "quarter_circle";
    case GeometryKind::slit_strip: return "slit_strip";
  }
  return "?";
}

GeometryKind geometry_kind_from_string(const std::string& name) {
  for (GeometryKind k : {GeometryKind::rectangle, GeometryKind::circle, GeometryKind::double_circle,
                         GeometryKind::quarter_circle, GeometryKind::slit_strip}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown geometry '" + name + "'");
}

Geometry Geometry::rectangle(double lx, double ly, BoundaryKind all) {
  Geometry g;
  g.kind = GeometryKind::rectangle;
  g.lx = lx;
  g.ly = ly;
  g.left = g.right = g.bottom = g.top = all;
  return g;
}

Geometry Geometry::circle(double radius) {
  Geometry g;
  g.kind = GeometryKind::circle;
  g.radius = radius;
  return g;
}

Geometry Geometry::double_circle(double radius, double gamma) {
  Geometry g;
  g.kind = GeometryKind::double_circle;
  g.radius = radius;
  g.gamma = gamma;
  return g;
}

Geometry Geometry::quarter_circle(double radius) {
  Geometry g;
  g.kind = GeometryKind::quarter_circle;
  g.radius = radius;
  return g;
}

Geometry Geometry::slit_strip(double period, double aperture, double ly) {
  Geometry g;
  g.kind = GeometryKind::slit_strip;
  g.period = period;
  g.aperture = aperture;
  g.ly = ly;
  return g;
}

void Geometry::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
  };
  switch (kind) {
    case GeometryKind::rectangle: {
      positive(lx, "lx");
      positive(ly, "ly");
      const bool px = left == BoundaryKind::periodic || right == BoundaryKind::periodic;
      if (px && left != right) throw std::invalid_argument("rectangle: periodic must be set on both x sides");
      if (bottom == BoundaryKind::periodic || top == BoundaryKind::periodic)
        throw std::invalid_argument("rectangle: periodic conditions are supported in x only");
      for (BoundaryKind k : {left, right, bottom, top})
        if (k == BoundaryKind::transmission) throw std::invalid_argument("rectangle: transmission is not a side condition");
      break;
    }
    case GeometryKind::circle:
    case GeometryKind::quarter_circle:
      positive(radius, "radius");
      break;
    case GeometryKind::double_circle:
      positive(radius, "radius");
      positive(gamma, "gamma");
      if (!(gamma < radius)) throw std::invalid_argument("double_circle: gamma must be smaller than radius");
      break;
    case GeometryKind::slit_strip:
      positive(period, "period");
      positive(aperture, "aperture");
      positive(ly, "ly");
      if (!(aperture < period)) throw std::invalid_argument("slit_strip: aperture must be smaller than period");
      break;
  }
}

bool Geometry::inside(double x, double y) const {
  switch (kind) {
    case GeometryKind::rectangle:
      return std::abs(x) <= lx / 2 && std::abs(y) <= ly / 2;
    case GeometryKind::circle:
      return x * x + y * y <= radius * radius;
    case GeometryKind::double_circle: {
      const double r2 = radius * radius;
      return (x + gamma) * (x + gamma) + y * y <= r2 || (x - gamma) * (x - gamma) + y * y <= r2;
    }
    case GeometryKind::quarter_circle:
      return x <= 0.0 && y >= 0.0 && x * x + y * y <= radius * radius;
    case GeometryKind::slit_strip:
      return std::abs(x) <= period / 2 && std::abs(y) <= ly / 2 && (y != 0.0 || std::abs(x) < aperture / 2);
  }
  return false;
}

bool Geometry::periodic_x() const {
  return kind == GeometryKind::slit_strip ||
         (kind == GeometryKind::rectangle && left == BoundaryKind::periodic);
}

double Geometry::x_min() const {
  switch (kind) {
    case GeometryKind::rectangle: return -lx / 2;
    case GeometryKind::circle: return -radius;
    case GeometryKind::double_circle: return -gamma - radius;
    case GeometryKind::quarter_circle: return -radius;
    case GeometryKind::slit_strip: return -period / 2;
  }
  return 0.0;
}

double Geometry::x_max() const {
  switch (kind) {
    case GeometryKind::rectangle: return lx / 2;
    case GeometryKind::circle: return radius;
    case GeometryKind::double_circle: return gamma + radius;
    case GeometryKind::quarter_circle: return 0.0;
    case GeometryKind::slit_strip: return period / 2;
  }
  return 0.0;
}

double Geometry::y_min() const {
  switch (kind) {
    case GeometryKind::rectangle:
    case GeometryKind::slit_strip: return -ly / 2;
    case GeometryKind::circle:
    case GeometryKind::double_circle: return -radius;
    case GeometryKind::quarter_circle: return 0.0;
  }
  return 0.0;
}

double Geometry::y_max() const {
  switch (kind) {
    case GeometryKind::rectangle:
    case GeometryKind::slit_strip: return ly / 2;
    default: return radius;
  }
}

double Geometry::anchor_x() const {
  return kind == GeometryKind::rectangle || kind == GeometryKind::slit_strip ? x_min() : 0.0;
}

double Geometry::anchor_y() const { return kind == GeometryKind::rectangle ? y_min() : 0.0; }

namespace {

constexpr BoundaryKind D = BoundaryKind::dirichlet;
constexpr BoundaryKind Nm = BoundaryKind::neumann;
constexpr BoundaryKind P = BoundaryKind::periodic;
constexpr BoundaryKind O = BoundaryKind::outflow;

double chord(double r, double s) { return std::sqrt(std::max(0.0, r * r - s * s)); }

}  // namespace

std::vector<Interval> Geometry::row(double y, double tol) const {
  std::vector<Interval> out;
  switch (kind) {
    case GeometryKind::rectangle: {
      const double h = ly / 2;
      if (y < -h - tol || y > h + tol) break;
      const bool edge_b = std::abs(y + h) <= tol, edge_t = std::abs(y - h) <= tol;
      if ((edge_b && bottom == D) || (edge_t && top == D)) break;
      out.push_back({-lx / 2, lx / 2, left, right});
      break;
    }
    case GeometryKind::circle:
      if (std::abs(y) < radius - tol) {
        const double s = chord(radius, y);
        out.push_back({-s, s, D, D});
      }
      break;
    case GeometryKind::double_circle:
      if (std::abs(y) < radius - tol) {
        const double s = chord(radius, y);
        if (s >= gamma) {
          out.push_back({-gamma - s, gamma + s, D, D});
        } else {
          out.push_back({-gamma - s, -gamma + s, D, D});
          out.push_back({gamma - s, gamma + s, D, D});
        }
      }
      break;
    case GeometryKind::quarter_circle:
      if (y >= -tol && y < radius - tol) out.push_back({-chord(radius, y), 0.0, D, Nm});
      break;
    case GeometryKind::slit_strip:
      if (y < -ly / 2 - tol || y > ly / 2 + tol) break;
      if (std::abs(y) <= tol)
        out.push_back({-aperture / 2, aperture / 2, D, D});
      else
        out.push_back({-period / 2, period / 2, P, P});
      break;
  }
  return out;
}

std::vector<Interval> Geometry::column(double x, double tol) const {
  std::vector<Interval> out;
  switch (kind) {
    case GeometryKind::rectangle: {
      const double h = lx / 2;
      if (x < -h - tol || x > h + tol) break;
      const bool edge_l = std::abs(x + h) <= tol, edge_r = std::abs(x - h) <= tol;
      if (edge_r && left == P) break;  // identified with the left edge
      if ((edge_l && left == D) || (edge_r && right == D)) break;
      out.push_back({-ly / 2, ly / 2, bottom, top});
      break;
    }
    case GeometryKind::circle:
      if (std::abs(x) < radius - tol) {
        const double s = chord(radius, x);
        out.push_back({-s, s, D, D});
      }
      break;
    case GeometryKind::double_circle: {
      double s = 0.0;
      if (std::abs(x + gamma) < radius - tol) s = std::max(s, chord(radius, x + gamma));
      if (std::abs(x - gamma) < radius - tol) s = std::max(s, chord(radius, x - gamma));
      if (s > 0.0) out.push_back({-s, s, D, D});
      break;
    }
    case GeometryKind::quarter_circle:
      if (x <= tol && x > -radius + tol) out.push_back({0.0, chord(radius, x), Nm, D});
      break;
    case GeometryKind::slit_strip: {
      const double h = period / 2;
      if (x < -h - tol || x > h - tol) break;
      if (std::abs(x) < aperture / 2 - tol) {
        out.push_back({-ly / 2, ly / 2, O, O});
      } else {
        out.push_back({-ly / 2, 0.0, O, D});
        out.push_back({0.0, ly / 2, D, O});
      }
      break;
    }
  }
  return out;
}

std::optional<std::size_t> Domain2D::find(long k, long j) const {
  const auto key = std::make_pair(k, j);
  auto it = std::lower_bound(grid_index_.begin(), grid_index_.end(), key,
                             [](const auto& e, const auto& kk) { return e.first < kk; });
  if (it != grid_index_.end() && it->first == key) return it->second;
  return std::nullopt;
}

namespace {

constexpr double kSnap = 1e-9;

struct Builder {
  Domain2D& dom;
  double x0, y0;
  bool periodic;
  long period_cells = 0;
  long kmin = 0;
  std::unordered_map<long long, std::size_t> index;

  static long long key(long k, long j) { return (static_cast<long long>(k) << 32) ^ (j & 0xffffffffLL); }

  long wrap(long k) const {
    if (!periodic) return k;
    long r = (k - kmin) % period_cells;
    if (r < 0) r += period_cells;
    return kmin + r;
  }

  std::size_t grid_node(long k, long j) {
    k = wrap(k);
    const auto [it, fresh] = index.try_emplace(key(k, j), dom.nodes.size());
    if (!fresh) return it->second;
    Node2D n;
    n.x = x0 + static_cast<double>(k) * dom.dx;
    n.y = y0 + static_cast<double>(j) * dom.dy;
    n.on_grid = true;
    n.k = k;
    n.j = j;
    dom.nodes.push_back(n);
    return it->second;
  }

  std::size_t off_grid(double x, double y) {
    Node2D n;
    n.x = x;
    n.y = y;
    dom.nodes.push_back(n);
    return dom.nodes.size() - 1;
  }
};

}  // namespace

Domain2D build_lines(const Geometry& geom, double dx, double dy, const BuildOptions& opts) {
  geom.validate();
  if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("build_lines: dx and dy must be positive");
  Domain2D dom;
  dom.geometry = geom;
  dom.dx = dx;
  dom.dy = dy;
  dom.options = opts;
  if (opts.dd_split && geom.kind != GeometryKind::rectangle)
    throw std::invalid_argument("build_lines: dd_split is only available for the rectangle");

  Builder b{dom, geom.anchor_x(), geom.anchor_y(), geom.periodic_x(), 0, 0, {}};
  auto cells_of = [](double len, double h) {
    const double r = len / h;
    const long n = std::lround(r);
    return std::abs(r - static_cast<double>(n)) <= 1e-9 * std::max(1.0, r) ? n : -1L;
  };
  if (geom.kind == GeometryKind::rectangle || geom.kind == GeometryKind::slit_strip) {
    const double wx = geom.x_max() - geom.x_min();
    const double wy = geom.y_max() - geom.y_min();
    if (cells_of(wx, dx) < 2) throw std::invalid_argument("build_lines: dx must divide the domain width");
    if (geom.kind == GeometryKind::rectangle && cells_of(wy, dy) < 2)
      throw std::invalid_argument("build_lines: dy must divide the domain height");
    if (geom.kind == GeometryKind::slit_strip && cells_of(wy / 2, dy) < 1)
      throw std::invalid_argument("build_lines: dy must divide ly/2");
  }
  const long kmin = static_cast<long>(std::ceil((geom.x_min() - b.x0) / dx - kSnap));
  const long kmax = static_cast<long>(std::floor((geom.x_max() - b.x0) / dx + kSnap));
  const long jmin = static_cast<long>(std::ceil((geom.y_min() - b.y0) / dy - kSnap));
  const long jmax = static_cast<long>(std::floor((geom.y_max() - b.y0) / dy + kSnap));
  b.kmin = kmin;
  if (b.periodic) b.period_cells = cells_of(geom.x_max() - geom.x_min(), dx);

  // Builds one line through `fixed_index` along the given axis.
  auto make_line = [&](Axis axis, long fixed_index, const Interval& iv) -> std::optional<Line2D> {
    const double h = axis == Axis::x ? dx : dy;
    const double origin = axis == Axis::x ? b.x0 : b.y0;
    const double snap = kSnap * h;
    auto coord = [&](long i) { return origin + static_cast<double>(i) * h; };
    auto snapped = [&](double v) -> std::optional<long> {
      const long i = std::lround((v - origin) / h);
      if (std::abs(v - coord(i)) <= snap) return i;
      return std::nullopt;
    };
    auto node_at = [&](long i) {
      return axis == Axis::x ? b.grid_node(i, fixed_index) : b.grid_node(fixed_index, i);
    };
    const double other = axis == Axis::x ? b.y0 + static_cast<double>(fixed_index) * dy
                                         : b.x0 + static_cast<double>(fixed_index) * dx;

    std::vector<long> interior;
    for (long i = static_cast<long>(std::floor((iv.lo - origin) / h)); coord(i) < iv.hi - snap; ++i)
      if (coord(i) > iv.lo + snap) interior.push_back(i);
    if (interior.empty()) {
      dom.warnings.push_back(std::string(axis == Axis::x ? "x" : "y") + "-line at " +
                             std::to_string(other) + " has no interior node and was dropped");
      return std::nullopt;
    }

    Line2D line;
    line.axis = axis;
    line.fixed = other;
    line.lo_kind = iv.lo_kind;
    line.hi_kind = iv.hi_kind;
    std::vector<double> pos;
    const auto lo_i = snapped(iv.lo), hi_i = snapped(iv.hi);
    auto endpoint = [&](double v, const std::optional<long>& gi) {
      if (gi) {
        pos.push_back(coord(*gi));
        line.node.push_back(node_at(*gi));
      } else {
        pos.push_back(v);
        line.node.push_back(axis == Axis::x ? b.off_grid(v, other) : b.off_grid(other, v));
      }
    };
    endpoint(iv.lo, lo_i);
    for (long i : interior) {
      pos.push_back(coord(i));
      line.node.push_back(node_at(i));
    }
    endpoint(iv.hi, hi_i);

    const std::size_t cells = pos.size() - 1;
    if (lo_i && hi_i && cells >= 3)
      line.grid = Grid1D::uniform(pos.front(), pos.back(), static_cast<int>(cells));
    else
      line.grid = Grid1D::from_nodes(pos);

    if (opts.dd_split) {
      for (std::size_t p = 1; p + 1 < pos.size(); ++p)
        if (std::abs(pos[p]) <= snap) line.split.push_back(p);
    }
    return line;
  };

  auto register_line = [&](Line2D&& line, std::vector<Line2D>& lines, bool is_x) {
    const int id = static_cast<int>(lines.size());
    const std::size_t n = line.node.size();
    for (std::size_t p = 0; p < n; ++p) {
      Node2D& nd = dom.nodes[line.node[p]];
      const bool end = p == 0 || p + 1 == n;
      const BoundaryKind ek = p == 0 ? line.lo_kind : line.hi_kind;
      if (end && ek == BoundaryKind::dirichlet) nd.pinned = true;
      if (is_x) {
        if (nd.x_line < 0) {
          nd.x_line = id;
          nd.x_pos = p;
        }
      } else if (nd.y_line < 0) {
        nd.y_line = id;
        nd.y_pos = p;
      }
    }
    lines.push_back(std::move(line));
  };

  for (long j = jmin; j <= jmax; ++j) {
    const double y = b.y0 + static_cast<double>(j) * dy;
    for (const Interval& iv : geom.row(y, kSnap * dy))
      if (auto line = make_line(Axis::x, j, iv)) register_line(std::move(*line), dom.x_lines, true);
  }
  for (long k = kmin; k <= kmax; ++k) {
    const double x = b.x0 + static_cast<double>(k) * dx;
    for (const Interval& iv : geom.column(x, kSnap * dx))
      if (auto line = make_line(Axis::y, k, iv)) register_line(std::move(*line), dom.y_lines, false);
  }

  for (const auto& n : dom.nodes)
    if (n.on_grid) dom.grid_index_.push_back({{n.k, n.j}, static_cast<std::size_t>(&n - dom.nodes.data())});
  std::sort(dom.grid_index_.begin(), dom.grid_index_.end());
  return dom;
}

BCSpec bc_for_line(const Line2D& line) {
  BCSpec bc;
  bc.left.kind = line.lo_kind;
  bc.right.kind = line.hi_kind;
  bc.validate();
  return bc;
}

}  // namespace molt
