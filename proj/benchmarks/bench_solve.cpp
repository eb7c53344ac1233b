#include "wg/problem.hpp"
#include "wg/system.hpp"
#include "wg/twogrid.hpp"

#include <benchmark/benchmark.h>

#include <memory>

namespace {

void BM_SpaceSetup(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wg::WgSpace(wg::build_rectangular(n), 1));
}
BENCHMARK(BM_SpaceSetup)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_AssembleJacobian(benchmark::State& state) {
  const wg::ProblemSpec p = wg::builtin_problem("ex1");
  const wg::WgSpace s(wg::build_rectangular(static_cast<int>(state.range(0))), 1);
  const wg::WGFunction u = wg::project_Qh(p.u_exact, s);
  for (auto _ : state) benchmark::DoNotOptimize(wg::assemble_jacobian(u, p, s));
}
BENCHMARK(BM_AssembleJacobian)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_NewtonSolve(benchmark::State& state) {
  const wg::ProblemSpec p = wg::builtin_problem("ex1");
  const wg::WgSpace s(wg::build_rectangular(static_cast<int>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(wg::newton_solve(p, s));
}
BENCHMARK(BM_NewtonSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_TwoGridSolve(benchmark::State& state) {
  const wg::ProblemSpec p = wg::builtin_problem("ex1");
  const int n = static_cast<int>(state.range(0));
  const wg::GridPair grids(std::make_shared<const wg::Mesh>(wg::build_rectangular(wg::sqrt_pairing(n))),
                           std::make_shared<const wg::Mesh>(wg::build_rectangular(n)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(wg::two_grid_solve(p, grids));
}
BENCHMARK(BM_TwoGridSolve)->Arg(16)->Arg(36)->Unit(benchmark::kMillisecond);

}  // namespace
