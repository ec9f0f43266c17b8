#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "molt/harness/config.hpp"
#include "molt/harness/csv.hpp"
#include "molt/harness/invariants.hpp"
#include "molt/harness/studies.hpp"
#include "molt/parallel.hpp"

namespace {

using namespace molt::harness;

int with_report(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(std::cout);
    return 0;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  emit(out);
  std::cerr << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicit wave solver: runs, refinement studies and self-checks"};
  app.require_subcommand(1);
  int threads = 0;
  bool serial = false;
  app.add_option("--threads", threads, "Cap on OpenMP threads");
  app.add_flag("--serial", serial, "Use the serial reference kernels");

  std::string config_path, out_path;
  int level = 1;
  bool no_snapshots = false;
  std::vector<int> levels{1, 2, 4};

  auto* run_cmd = app.add_subcommand("run", "Run one configuration");
  run_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--level", level, "Refinement level")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--no-snapshots", no_snapshots, "Skip snapshot CSVs");

  auto* refine_cmd = app.add_subcommand("refine", "Refinement study (resolution,error,order)");
  refine_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  refine_cmd->add_option("--levels", levels, "Refinement levels, increasing")->expected(1, -1);
  refine_cmd->add_option("-o,--output", out_path, "Report path (default: report_path or stdout)");

  auto* decomp_cmd = app.add_subcommand("decomp", "Decomposed / monolithic / extended-line comparison");
  decomp_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  decomp_cmd->add_option("--levels", levels, "Multipliers of N, increasing")->expected(1, -1);
  decomp_cmd->add_option("-o,--output", out_path, "Report path (default: report_path or stdout)");

  auto* check_cmd = app.add_subcommand("check", "Run the built-in invariant suite");

  CLI11_PARSE(app, argc, argv);
  molt::set_num_threads(threads);
  RunOptions opts;
  opts.policy = serial ? molt::ExecPolicy::serial : molt::ExecPolicy::parallel;

  try {
    if (*check_cmd) {
      bool ok = true;
      for (const auto& r : run_checks()) {
        std::printf("%-40s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }
    const RunConfig cfg = RunConfig::load(config_path);
    const std::string report = out_path.empty() ? cfg.report_path : out_path;
    if (*run_cmd) {
      opts.write_snapshots = !no_snapshots;
      const RunResult r = run(cfg, level, opts);
      std::printf("config %s\n", cfg.hash().c_str());
      std::printf("resolution %.6g  dt %.6g  steps %ld  nodes %zu  t %.6g\n", r.resolution, r.dt, r.steps,
                  r.num_nodes, r.t);
      std::printf("max|u| %.6e (initial %.6e)\n", r.max_abs_u, r.initial_max_abs_u);
      if (!std::isnan(r.max_error)) std::printf("max L2 error %.6e\n", r.max_error);
      for (const auto& s : r.snapshots) std::printf("snapshot %s\n", s.c_str());
      std::printf("runtime %.3f s\n", r.runtime_s);
      return 0;
    }
    if (*refine_cmd) {
      const RefinementReport rep = refine(cfg, levels, opts);
      with_report(report, [&](std::ostream& os) { write_refinement(os, rep); });
      std::cerr << "config " << rep.config_hash << "  runtime " << rep.runtime_s << " s\n";
      return 0;
    }
    if (*decomp_cmd) {
      const auto rows = decomp_compare(cfg, levels, opts);
      with_report(report, [&](std::ostream& os) { write_decomp(os, rows); });
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
