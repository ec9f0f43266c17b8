#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "molt/harness/config.hpp"
#include "molt/harness/csv.hpp"
#include "molt/harness/norms.hpp"
#include "molt/harness/reference.hpp"
#include "molt/harness/studies.hpp"

using namespace molt;
using namespace molt::harness;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "molt_test_harness";
  std::filesystem::create_directories(p);
  return p;
}

const char* kPulse = R"(
dimension = 1
a = -1
b = 1
N = 20
mesh = uniform
bc_left = outflow
bc_right = outflow
initial = gaussian
cfl = 0.5
t_final = 0.5
)";

}  // namespace

TEST_CASE("config parsing", "[harness]") {
  const RunConfig cfg = RunConfig::parse_string(std::string(kPulse) + "subdomains = uniform:1, chebyshev_half:2\n");
  CHECK(cfg.N == 20);
  CHECK(cfg.cfl == 0.5);
  CHECK(cfg.bc_left == BoundaryKind::outflow);
  REQUIRE(cfg.subdomains.size() == 2);
  CHECK(cfg.subdomains[1].kind == "chebyshev_half");
  CHECK(cfg.subdomains[1].multiplier == 2);
  CHECK_FALSE(cfg.dt.has_value());

  const RunConfig commented = RunConfig::parse_string("# comment\n\ndimension = 1  # trailing\nN = 8\n");
  CHECK(commented.N == 8);

  const char* bad[] = {
      "wavespeed = 2\n",                     // unknown key
      "N = 20\nN = 40\n",                    // duplicate
      "N = twenty\n",                        // not an integer
      "cfl = -1\n",                          // out of range
      "beta = 3\n",                          // outside (0, 2]
      "bc_left = sticky\n",                  // unknown condition
      "N\n",                                 // no '='
      "dimension = 1\nstart = exact\n",      // exact start is 2D only
      "dimension = 2\ngeometry = circle\ndd_split = true\n",
      "dimension = 2\ngeometry = circle\nreference = full_circle\n",
      "error_window = 0.3, 0.2\n",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(RunConfig::parse_string(text), ConfigError);
  }
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/molt.conf"), ConfigError);
}

TEST_CASE("config hash", "[harness]") {
  const RunConfig a = RunConfig::parse_string("N = 20\ncfl = 0.5\n");
  const RunConfig b = RunConfig::parse_string("cfl   =   0.5 # same\nN = 20\n");
  const RunConfig c = RunConfig::parse_string("N = 40\ncfl = 0.5\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("reference solutions", "[harness]") {
  CHECK_THAT(bessel_j0(kBesselZ20), WithinAbs(0.0, 1e-14));
  CHECK_THAT(kBesselZ20, WithinRel(boost::math::cyl_bessel_j_zero(0.0, 2), 1e-15));
  for (double z : {0.0, 0.3, 2.0, 7.5, 20.0}) CHECK_THAT(bessel_j0(z), WithinAbs(boost::math::cyl_bessel_j(0, z), 1e-14));

  ReferenceSpec bes;
  bes.kind = ReferenceKind::bessel_j0;
  bes.radius = 1.0;
  CHECK_THAT(reference_solution(bes, 0.6, 0.8, 0.37), WithinAbs(0.0, 1e-14));
  CHECK_THAT(reference_solution(bes, 0.0, 0.0, 0.0), WithinAbs(1.0, 1e-15));

  ReferenceSpec cav;
  cav.kind = ReferenceKind::cavity_dirichlet;
  CHECK_THAT(reference_solution(cav, 0.0, 0.0, 0.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(reference_solution(cav, 0.5, 0.1, 0.3), WithinAbs(0.0, 1e-15));
  CHECK_THAT(reference_solution(cav, 0.2, 0.1, 1.0 / std::sqrt(2.0)), WithinAbs(-reference_solution(cav, 0.2, 0.1, 0.0), 1e-14));
  cav.kind = ReferenceKind::cavity_neumann;
  // zero normal derivative at the wall x = 1/2
  const double h = 1e-6;
  CHECK_THAT((reference_solution(cav, 0.5 + h, 0.2, 0.0) - reference_solution(cav, 0.5 - h, 0.2, 0.0)) / (2 * h),
             WithinAbs(0.0, 1e-8));

  // Laplacians against a centred difference
  for (auto kind : {ReferenceKind::cavity_dirichlet, ReferenceKind::cavity_neumann, ReferenceKind::bessel_j0}) {
    ReferenceSpec s;
    s.kind = kind;
    const double x = 0.21, y = -0.13, d = 1e-4;
    const double fd = (reference_solution(s, x + d, y, 0) + reference_solution(s, x - d, y, 0) +
                       reference_solution(s, x, y + d, 0) + reference_solution(s, x, y - d, 0) -
                       4 * reference_solution(s, x, y, 0)) / (d * d);
    CHECK_THAT(reference_laplacian0(s, x, y), WithinAbs(fd, 1e-5));
  }

  CHECK_THAT(dalembert_gaussian(0.0, 0.0, -1.0, 1.0, 1.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(dalembert_gaussian(0.5, 0.5, -1.0, 1.0, 1.0), WithinAbs(0.5 + 0.5 * std::exp(-36.0), 1e-15));
}

TEST_CASE("norms and orders", "[harness]") {
  const std::vector<double> zero(5, 0.0), one(5, 1.0), w{0.5, 1.0, 1.0, 1.0, 0.5};
  CHECK(weighted_l2(zero, w) == 0.0);
  CHECK_THAT(weighted_l2(one, w), WithinAbs(1.0, 1e-15));
  CHECK_THAT(rms(one), WithinAbs(1.0, 1e-15));
  CHECK(rms({}) == 0.0);
  CHECK_THROWS_AS(weighted_l2(one, std::vector<double>(4, 1.0)), std::invalid_argument);

  const Grid1D g = Grid1D::chebyshev(0.0, 3.0, 12, ChebyshevVariant::full);
  const auto nw = node_weights(g);
  double total = 0.0;
  for (double v : nw) total += v;
  CHECK_THAT(total, WithinAbs(3.0, 1e-14));
  CHECK_THAT(l2_error(std::vector<double>(13, 2.0), std::vector<double>(13, 0.5), g), WithinAbs(1.5, 1e-14));

  CHECK_THAT(observed_order(4e-3, 1e-3, 2.0), WithinAbs(2.0, 1e-14));
  CHECK_THAT(observed_order(9e-3, 1e-3, 3.0), WithinAbs(2.0, 1e-14));
  CHECK(std::isnan(observed_order(0.0, 1e-3, 2.0)));
  CHECK(std::isnan(observed_order(1e-3, 1e-3, 1.0)));
}

TEST_CASE("refinement study and CSV round trip", "[harness]") {
  const RunConfig cfg = RunConfig::parse_string(kPulse);
  RunOptions opts;
  opts.write_snapshots = false;
  const RefinementReport r = refine(cfg, {1, 2, 4}, opts);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.config_hash == cfg.hash());
  CHECK(std::isnan(r.rows[0].order));
  for (std::size_t i = 1; i < 3; ++i) CHECK(r.rows[i].order > 1.8);

  const auto path = scratch_dir() / "refine.csv";
  {
    std::ofstream os(path);
    write_refinement(os, r);
  }
  const CsvTable t = read_csv(path.string());
  CHECK(t.header == std::vector<std::string>{"resolution", "error", "order"});
  const auto res = t.column("resolution"), err = t.column("error"), ord = t.column("order");
  REQUIRE(err.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(err[i] == r.rows[i].error);
    CHECK(res[i] == r.rows[i].resolution);
  }
  CHECK(std::isnan(ord[0]));
  // orders are recomputable from the table
  for (std::size_t i = 1; i < 3; ++i)
    CHECK_THAT(observed_order(err[i - 1], err[i], res[i] / res[i - 1]), WithinAbs(ord[i], 1e-12));
  CHECK_THROWS(t.column("missing"));
}

TEST_CASE("single run results and snapshots", "[harness]") {
  RunConfig cfg = RunConfig::parse_string(std::string(kPulse) + "snapshot_times = 0.25\n");
  cfg.snapshot_prefix = (scratch_dir() / "pulse").string();
  const RunResult r = run(cfg);
  CHECK(r.steps == 10);  // dt = cfl h = 0.05
  CHECK_THAT(r.t, WithinAbs(0.5, 1e-12));
  CHECK(r.num_nodes == 21);
  CHECK(r.max_error < 0.05);
  CHECK_THAT(r.initial_max_abs_u, WithinAbs(1.0, 1e-15));
  REQUIRE(r.snapshots.size() == 1);
  const CsvTable snap = read_csv(r.snapshots[0]);
  CHECK(snap.header == std::vector<std::string>{"x", "u"});
  CHECK(snap.rows.size() == 21);
  CHECK_THAT(snap.column("x").front(), WithinAbs(-1.0, 1e-15));

  cfg.dt = 0.025;
  cfg.snapshot_times.clear();
  CHECK(run(cfg).steps == 20);
}

TEST_CASE("serial and parallel runs agree", "[harness]") {
  const RunConfig cfg = RunConfig::parse_string(std::string(kPulse) + "subdomains = uniform:1, uniform:1, uniform:2\n");
  RunOptions s, p;
  s.policy = ExecPolicy::serial;
  s.write_snapshots = p.write_snapshots = false;
  CHECK(run(cfg, 2, s).max_error == run(cfg, 2, p).max_error);
}

TEST_CASE("decomposition study", "[harness]") {
  RunConfig cfg = RunConfig::parse_string(std::string(kPulse) + "subdomains = uniform:1, uniform:1\ndt = 0.05\n");
  cfg.t_final = 2.0;
  RunOptions opts;
  opts.write_snapshots = false;
  const auto rows = decomp_compare(cfg, {1, 2}, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].N == 20);
  CHECK(rows[1].N == 40);
  for (const auto& row : rows) {
    CHECK(row.dd_error >= 0.0);
    CHECK(row.outflow_error > 0.0);
    CHECK(row.total_error > 0.0);
  }
  CHECK(rows[1].total_error < rows[0].total_error);
  std::ostringstream os;
  write_decomp(os, rows);
  CHECK(os.str().rfind("N,dd_error,dd_order,outflow_error,outflow_order,total_error,total_order\n", 0) == 0);

  RunConfig single = RunConfig::parse_string(kPulse);
  CHECK_THROWS_AS(decomp_compare(single, {1}, opts), ConfigError);
}

TEST_CASE("non-finite solutions raise NumericalFailure", "[harness]") {
  const RunConfig cfg = RunConfig::parse_string(R"(
dimension = 1
N = 20
initial = zero
point_sources = -0.5@1e308@1, 0.5@1e308@1
t_final = 4
)");
  RunOptions opts;
  opts.write_snapshots = false;
  CHECK_THROWS_AS(run(cfg, 1, opts), NumericalFailure);
}
