#include <benchmark/benchmark.h>

#include <array>

#include "elastomap/fem_solver.hpp"
#include "elastomap/green.hpp"
#include "elastomap/microstructure.hpp"
#include "elastomap/reconstruction.hpp"
#include "elastomap/spectral_solver.hpp"

namespace em = elastomap;

namespace {

void BM_GreenHat3D(benchmark::State& state) {
  const em::ReferenceMedium ref{3, 1.0, 1.0};
  std::array<int, 3> xi{3, -1, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(em::green_hat(std::span<const int>(xi), ref));
    xi[0] = xi[0] % 7 + 1;
  }
}
BENCHMARK(BM_GreenHat3D);

void BM_ApplyGreen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const em::Grid g = em::Grid::periodic({n, n});
  const em::ModulusMaps m = em::gen_voronoi(g, 64, 0.1, 7);
  const em::ReferenceMedium ref = em::mean_reference(m.kappa, m.mu);
  const em::TensorField eps(g, em::SymTensor2::identity(2));
  const em::TensorField tau = em::polarization(m.kappa, m.mu, eps, ref);
  em::GreenOperator op(g, ref);
  em::TensorField out(g);
  for (auto _ : state) {
    op.apply(tau, out);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_ApplyGreen)->Arg(64)->Arg(128)->Arg(256);

void BM_SolveLs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const em::Grid g = em::Grid::periodic({n, n});
  const em::ModulusMaps m = em::gen_voronoi(g, 64, 0.1, 7);
  const em::ReferenceMedium ref = em::mean_reference(m.kappa, m.mu);
  const em::SymTensor2 bar = em::make_load_basis(em::Projector::K, 2).strains.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(em::solve_ls(m.kappa, m.mu, bar, ref, 1e-10));
  }
}
BENCHMARK(BM_SolveLs)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FemSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const em::Grid g = em::Grid::bounded({n, n});
  const em::ModulusMaps m = em::gen_voronoi(g, 64, 0.1, 7, false);
  const em::SymTensor2 bar = em::SymTensor2::identity(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(em::solve_dirichlet(m.kappa, m.mu, bar, 1e-10));
  }
}
BENCHMARK(BM_FemSolve)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
