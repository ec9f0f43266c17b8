#include "molt/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace molt::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double d = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, d);
  if (r.ec != std::errc{} || r.ptr != end || !std::isfinite(d))
    throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  int i = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, i);
  if (r.ec != std::errc{} || r.ptr != end) throw ConfigError("'" + key + "': expected an integer, got '" + v + "'");
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + v + "'");
}

BoundaryKind to_kind(const std::string& key, const std::string& v) {
  try {
    return boundary_kind_from_string(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("'" + key + "': unknown boundary condition '" + v + "'");
  }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(to_double(key, item));
  return out;
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (cfg.raw.count(key)) throw ConfigError("duplicate key '" + key + "'");
    cfg.raw[key] = val;
  }

  for (const auto& [key, v] : cfg.raw) {
    if (key == "dimension") cfg.dimension = to_int(key, v);
    else if (key == "a") cfg.a = to_double(key, v);
    else if (key == "b") cfg.b = to_double(key, v);
    else if (key == "mesh") cfg.mesh = v;
    else if (key == "N") cfg.N = to_int(key, v);
    else if (key == "subdomains") {
      for (const auto& item : split(v, ',')) {
        const auto colon = item.find(':');
        SubdomainMesh m;
        m.kind = trim(item.substr(0, colon));
        if (colon != std::string::npos) m.multiplier = to_int(key, trim(item.substr(colon + 1)));
        cfg.subdomains.push_back(m);
      }
    } else if (key == "bc_left") cfg.bc_left = to_kind(key, v);
    else if (key == "bc_right") cfg.bc_right = to_kind(key, v);
    else if (key == "dd_interface") {
      try {
        cfg.dd_interface = interface_stencil_from_string(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("'dd_interface': ") + e.what());
      }
    } else if (key == "point_sources") {
      for (const auto& item : split(v, ',')) {
        const auto parts = split(item, '@');
        if (parts.size() != 3) throw ConfigError("'point_sources': expected x@amplitude@omega entries");
        cfg.point_sources.push_back({to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])});
      }
    } else if (key == "beta") cfg.beta = to_double(key, v);
    else if (key == "c") cfg.c = to_double(key, v);
    else if (key == "cfl") cfg.cfl = to_double(key, v);
    else if (key == "dt") cfg.dt = to_double(key, v);
    else if (key == "t_final") cfg.t_final = to_double(key, v);
    else if (key == "initial") cfg.initial = v;
    else if (key == "start") cfg.start = v;
    else if (key == "geometry") cfg.geometry = v;
    else if (key == "lx") cfg.lx = to_double(key, v);
    else if (key == "ly") cfg.ly = to_double(key, v);
    else if (key == "radius") cfg.radius = to_double(key, v);
    else if (key == "gamma") cfg.gamma = to_double(key, v);
    else if (key == "aperture") cfg.aperture = to_double(key, v);
    else if (key == "period") cfg.period = to_double(key, v);
    else if (key == "bc") cfg.bc = to_kind(key, v);
    else if (key == "dx") cfg.dx = to_double(key, v);
    else if (key == "dy") cfg.dy = to_double(key, v);
    else if (key == "mode_m") cfg.mode_m = to_int(key, v);
    else if (key == "mode_n") cfg.mode_n = to_int(key, v);
    else if (key == "dd_split") cfg.dd_split = to_bool(key, v);
    else if (key == "source_y") cfg.source_y = to_double(key, v);
    else if (key == "reference") cfg.reference = v;
    else if (key == "reference_divisor") cfg.reference_divisor = to_int(key, v);
    else if (key == "error_window") {
      const auto w = to_list(key, v);
      if (w.size() != 2) throw ConfigError("'error_window': expected two times");
      cfg.error_window = std::make_pair(w[0], w[1]);
    } else if (key == "snapshot_times") cfg.snapshot_times = to_list(key, v);
    else if (key == "snapshot_prefix") cfg.snapshot_prefix = v;
    else if (key == "report_path") cfg.report_path = v;
    else throw ConfigError("unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in);
}

void RunConfig::validate() const {
  if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
  if (!(beta > 0.0 && beta <= 2.0)) throw ConfigError("beta must lie in (0, 2]");
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (dt && !(*dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
  for (double t : snapshot_times)
    if (t < 0.0) throw ConfigError("snapshot times must be non-negative");
  if (error_window && !(error_window->first <= error_window->second))
    throw ConfigError("error_window must be increasing");
  if (reference != "exact" && reference != "self" && reference != "full_circle" && reference != "none")
    throw ConfigError("reference must be exact, self, full_circle or none");
  if (start != "taylor" && start != "exact") throw ConfigError("start must be taylor or exact");
  if (start == "exact" && (dimension != 2 || reference != "exact"))
    throw ConfigError("start = exact needs a 2D run with reference = exact");
  if (reference == "self" && reference_divisor < 2) throw ConfigError("reference_divisor must be at least 2");

  if (dimension == 1) {
    if (!(b > a)) throw ConfigError("need a < b");
    if (N < 3) throw ConfigError("N must be at least 3");
    for (const auto& m : subdomains) {
      if (m.kind != "uniform" && m.kind != "chebyshev_half" && m.kind != "chebyshev_full")
        throw ConfigError("unknown subdomain mesh '" + m.kind + "'");
      if (m.multiplier < 1) throw ConfigError("subdomain multiplier must be positive");
    }
    if (mesh != "uniform" && mesh != "chebyshev_half" && mesh != "chebyshev_full")
      throw ConfigError("unknown mesh '" + mesh + "'");
    if ((bc_left == BoundaryKind::periodic) != (bc_right == BoundaryKind::periodic))
      throw ConfigError("periodic must be set on both ends");
    if (bc_left == BoundaryKind::transmission || bc_right == BoundaryKind::transmission)
      throw ConfigError("transmission is internal to domain decomposition");
    if (initial != "gaussian" && initial != "zero" && initial != "cavity_mode")
      throw ConfigError("1D initial must be gaussian, zero or cavity_mode");
    for (const auto& p : point_sources)
      if (p.x < a || p.x > b) throw ConfigError("point source outside [a, b]");
  } else {
    if (!(dx > 0.0) || (dy && !(*dy > 0.0))) throw ConfigError("dx and dy must be positive");
    if (geometry != "rectangle" && geometry != "circle" && geometry != "double_circle" &&
        geometry != "quarter_circle" && geometry != "slit_strip")
      throw ConfigError("unknown geometry '" + geometry + "'");
    if (initial != "zero" && initial != "cavity_mode" && initial != "bessel_mode" && initial != "double_circle_bump")
      throw ConfigError("2D initial must be zero, cavity_mode, bessel_mode or double_circle_bump");
    if (initial == "cavity_mode" && geometry != "rectangle") throw ConfigError("cavity_mode needs the rectangle");
    if (initial == "cavity_mode" && bc != BoundaryKind::dirichlet && bc != BoundaryKind::neumann)
      throw ConfigError("cavity_mode needs bc = dirichlet or neumann");
    if (dd_split && geometry != "rectangle") throw ConfigError("dd_split needs the rectangle");
    if (reference == "full_circle" && geometry != "quarter_circle")
      throw ConfigError("reference = full_circle needs geometry = quarter_circle");
  }
}

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& [k, v] : raw) {
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace molt::harness
