#include "wg/element.hpp"
#include "wg/poly.hpp"
#include "wg/space.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_CellQuadrature(benchmark::State& state) {
  const wg::Mesh m = wg::build_perturbed_quad(4, 0.2, 1);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wg::cell_quadrature(m, 5, degree));
}
BENCHMARK(BM_CellQuadrature)->Arg(6)->Arg(10)->Arg(20);

void BM_LocalOperators(benchmark::State& state) {
  const wg::Mesh m = wg::build_perturbed_quad(4, 0.2, 1);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wg::build_local_operators(m, 5, k));
}
BENCHMARK(BM_LocalOperators)->DenseRange(1, 3);

void BM_LocalFormD(benchmark::State& state) {
  const wg::Mesh m = wg::build_rectangular(4);
  const wg::LocalOperators ops = wg::build_local_operators(m, 5, static_cast<int>(state.range(0)));
  const auto n = static_cast<Eigen::Index>(ops.rule.size());
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(n, 1.5);
  const Eigen::VectorXd au = Eigen::VectorXd::Ones(n);
  const Eigen::MatrixX2d grad = Eigen::MatrixX2d::Constant(n, 2, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(wg::local_form_D(ops, a, au, grad));
}
BENCHMARK(BM_LocalFormD)->DenseRange(1, 3);

}  // namespace
