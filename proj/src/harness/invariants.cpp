#include "molt/harness/invariants.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>

#include "molt/adi2d.hpp"
#include "molt/convolution.hpp"
#include "molt/domain_decomposition.hpp"
#include "molt/harness/csv.hpp"
#include "molt/harness/norms.hpp"
#include "molt/stepper1d.hpp"

namespace molt::harness {

namespace {

std::string fmt(const char* label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s = %.3e", label, v);
  return buf;
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

// P + Q = 1 - d for every cell width (the weights integrate constants).
CheckResult weights_partition() {
  double worst = 0.0;
  for (double nu : {1e-4, 1e-3, 0.2, 1.0, 2.0, 10.0, 50.0}) {
    const ConvWeights w = simpson_weights(nu);
    worst = std::max(worst, std::abs(w.P + w.Q - (1.0 - w.d)) / (1.0 - w.d));
  }
  return {"", worst <= 1e-12, fmt("max relative gap", worst)};
}

// I[1](x) = 2 - exp(-alpha(x-a)) - exp(-alpha(b-x)) on a clustered grid.
CheckResult convolve_constant() {
  const Grid1D g = Grid1D::chebyshev(-1.0, 1.0, 32, ChebyshevVariant::full);
  const double alpha = 7.0;
  const std::vector<double> u(g.num_nodes(), 1.0);
  const ConvResult r = fast_convolve(u, g, alpha);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.num_nodes(); ++j) {
    const double x = g.x(j);
    const double exact = 2.0 - std::exp(-alpha * (x + 1.0)) - std::exp(-alpha * (1.0 - x));
    worst = std::max(worst, std::abs(r.I[j] - exact));
  }
  return {"", worst <= 1e-12, fmt("max error", worst)};
}

// Homogeneous Neumann line keeps u = 1 fixed.
CheckResult constants_preserved() {
  const Grid1D g = Grid1D::uniform(0.0, 1.0, 40);
  const SchemeParams p(2.0, 1.0, 0.5 / 40.0);
  Stepper1D st(g, p, BCSpec::homogeneous(BoundaryKind::neumann), {});
  WaveState1D s;
  s.u_curr.assign(g.num_nodes(), 1.0);
  s.u_prev = s.u_curr;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    st.advance(s);
    for (double v : s.u_curr) worst = std::max(worst, std::abs(v - 1.0));
  }
  return {"", worst <= 1e-12, fmt("max drift", worst)};
}

// Halo-coupled pieces of a uniform mesh reproduce the single-line run.
CheckResult decomposition_exact() {
  const double a = 0.0, b = 1.0;
  const int N = 60;
  const Grid1D whole = Grid1D::uniform(a, b, N);
  std::vector<Grid1D> parts{Grid1D::uniform(0.0, 0.5, N / 2), Grid1D::uniform(0.5, 1.0, N / 2)};
  const SchemeParams p(2.0, 1.0, 2.0 / N);
  const BCSpec bc = BCSpec::homogeneous(BoundaryKind::outflow);
  auto f = [](double x) { return std::exp(-100.0 * (x - 0.4) * (x - 0.4)); };
  auto fxx = [](double x) {
    const double d = x - 0.4;
    return (40000.0 * d * d - 200.0) * std::exp(-100.0 * d * d);
  };
  DDSolver dd(parts, p, bc, {}, InterfaceStencil::halo, ExecPolicy::serial);
  dd.init(f, {}, fxx);
  Stepper1D mono(whole, p, bc, {});
  std::vector<double> fv(whole.num_nodes()), gv(whole.num_nodes(), 0.0), fxxv(whole.num_nodes());
  for (std::size_t j = 0; j < fv.size(); ++j) {
    fv[j] = f(whole.x(j));
    fxxv[j] = fxx(whole.x(j));
  }
  WaveState1D s = init_history(fv, gv, {}, p, whole, fxxv);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    dd.advance();
    mono.advance(s);
    const WaveState1D g = dd.gather();
    for (std::size_t j = 0; j < fv.size(); ++j) worst = std::max(worst, std::abs(g.u_curr[j] - s.u_curr[j]));
  }
  return {"", worst <= 1e-11, fmt("max node difference", worst)};
}

// beta = 2: both amplification roots on the unit circle.
CheckResult unit_modulus() {
  const SchemeParams p(2.0, 1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double w = 0.1 * i;
    for (const auto& r : amplification_check(w, p)) worst = std::max(worst, std::abs(std::abs(r) - 1.0));
  }
  return {"", worst <= 1e-12, fmt("max ||rho| - 1|", worst)};
}

// Dirichlet box at CFL 10 stays bounded.
CheckResult large_step_bounded() {
  Domain2D dom = build_lines(Geometry::rectangle(1.0, 1.0, BoundaryKind::dirichlet), 1.0 / 20, 1.0 / 20, {});
  const SchemeParams p(2.0, 1.0, 10.0 / 20);
  ADISolver solver(std::move(dom), p, {}, ExecPolicy::serial);
  const double k = std::numbers::pi;
  Field2D s = solver.init([k](double x, double y) { return std::cos(k * x) * std::cos(k * y); }, {},
                          [k](double x, double y) { return -2.0 * k * k * std::cos(k * x) * std::cos(k * y); });
  double peak = 0.0;
  for (int n = 0; n < 500; ++n) {
    solver.advance(s);
    for (double v : s.u_curr) {
      if (!std::isfinite(v)) return {"", false, "non-finite value"};
      peak = std::max(peak, std::abs(v));
    }
  }
  return {"", peak <= 5.0, fmt("max |u|", peak)};
}

// Snapshot CSV round trip preserves the discrete norm.
CheckResult snapshot_roundtrip() {
  const Grid1D g = Grid1D::chebyshev(0.0, 1.0, 25, ChebyshevVariant::full);
  std::vector<double> u(g.num_nodes());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(3.0 * g.x(j)) / 3.0;
  const auto path = std::filesystem::temp_directory_path() / "molt_check_snapshot.csv";
  write_snapshot_1d(path.string(), g.nodes(), u);
  const CsvTable t = read_csv(path.string());
  std::filesystem::remove(path);
  const auto back = t.column("u");
  const double n0 = l2_error(u, std::vector<double>(u.size(), 0.0), g);
  const double n1 = l2_error(back, std::vector<double>(u.size(), 0.0), g);
  const double gap = std::abs(n0 - n1);
  return {"", gap <= 1e-12, fmt("norm gap", gap)};
}

}  // namespace

std::vector<CheckResult> run_checks() {
  return {
      guarded("weights_integrate_constants", weights_partition),
      guarded("convolution_of_constant", convolve_constant),
      guarded("neumann_preserves_constants", constants_preserved),
      guarded("halo_decomposition_matches_monolithic", decomposition_exact),
      guarded("amplification_unit_modulus", unit_modulus),
      guarded("cfl10_cavity_bounded", large_step_bounded),
      guarded("snapshot_roundtrip", snapshot_roundtrip),
  };
}

}  // namespace molt::harness
