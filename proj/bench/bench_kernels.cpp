#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "molt/adi2d.hpp"
#include "molt/convolution.hpp"
#include "molt/domain_decomposition.hpp"
#include "molt/parallel.hpp"

namespace {

using namespace molt;

void BM_FastConvolve(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Grid1D g = Grid1D::uniform(0.0, 1.0, N);
  const LineKernel k(g, 0.5 * N);
  std::vector<double> u(g.num_nodes()), out(g.num_nodes());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(7.0 * g.x(j));
  for (auto _ : state) {
    fast_convolve_into(u, k, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_FastConvolve)->RangeMultiplier(2)->Range(1 << 14, 1 << 18)->Complexity(benchmark::oN);

void BM_ADIStep(benchmark::State& state) {
  const auto policy = state.range(0) ? ExecPolicy::parallel : ExecPolicy::serial;
  const double h = 1.0 / static_cast<double>(state.range(1));
  ADISolver solver(build_lines(Geometry::rectangle(1.0, 1.0, BoundaryKind::dirichlet), h, h), SchemeParams(2.0, 1.0, h),
                   {}, policy);
  const double k = std::numbers::pi;
  Field2D s = solver.init([k](double x, double y) { return std::cos(k * x) * std::cos(k * y); }, {},
                          [k](double x, double y) { return -2.0 * k * k * std::cos(k * x) * std::cos(k * y); });
  for (auto _ : state) solver.advance(s);
  state.SetLabel(policy == ExecPolicy::parallel ? "parallel" : "serial");
}
BENCHMARK(BM_ADIStep)->ArgsProduct({{0, 1}, {160, 320}})->Unit(benchmark::kMillisecond);

void BM_DDStep(benchmark::State& state) {
  const auto policy = state.range(0) ? ExecPolicy::parallel : ExecPolicy::serial;
  const int M = static_cast<int>(state.range(1));
  const int cells = 1 << 16;
  std::vector<Grid1D> grids;
  for (int m = 0; m < M; ++m)
    grids.push_back(Grid1D::uniform(static_cast<double>(m) / M, static_cast<double>(m + 1) / M, cells / M));
  DDSolver dd(grids, SchemeParams(2.0, 1.0, 1.0 / cells), BCSpec::homogeneous(BoundaryKind::outflow), {},
              InterfaceStencil::halo, policy);
  dd.init([](double x) { return std::exp(-200.0 * (x - 0.5) * (x - 0.5)); }, {});
  for (auto _ : state) dd.advance();
  state.SetLabel(policy == ExecPolicy::parallel ? "parallel" : "serial");
}
BENCHMARK(BM_DDStep)->ArgsProduct({{0, 1}, {4, 16}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
