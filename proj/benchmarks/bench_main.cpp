#include <benchmark/benchmark.h>

#include <random>

#include "phasekit/bv.hpp"
#include "phasekit/gauge_fp.hpp"
#include "phasekit/graph.hpp"
#include "phasekit/lie.hpp"
#include "phasekit/linalg.hpp"
#include "phasekit/models.hpp"
#include "phasekit/oracle.hpp"
#include "phasekit/stationary_phase.hpp"
#include "phasekit/wick.hpp"

using namespace phasekit;

static void BM_EnumerateTrivalent(benchmark::State& state) {
  EnumerateOptions opt;
  opt.max_excess = static_cast<int>(state.range(0));
  opt.degrees = {3};
  opt.allow_tadpoles = false;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_graphs(opt));
}
BENCHMARK(BM_EnumerateTrivalent)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_AutTheta(benchmark::State& state) {
  Graph g = theta_graph();
  for (auto _ : state) benchmark::DoNotOptimize(aut_order(g));
}
BENCHMARK(BM_AutTheta);

static void BM_WickMoment(benchmark::State& state) {
  Matrix K = Matrix::identity(3);
  K(0, 1) = K(1, 0) = Scalar(Rational(1, 2));
  std::vector<int> idx(static_cast<size_t>(state.range(0)));
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i % 3);
  for (auto _ : state) benchmark::DoNotOptimize(wick_moment(K, idx));
}
BENCHMARK(BM_WickMoment)->Arg(4)->Arg(6)->Arg(8);

static void BM_QuarticExpand(benchmark::State& state) {
  ActionModel m = models::quartic(Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(expand(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_QuarticExpand)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FPExpandHat(benchmark::State& state) {
  FPModel fp = build_fp(models::deformed_hat());
  for (auto _ : state) benchmark::DoNotOptimize(fp_expand(fp, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FPExpandHat)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BerezinDet(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-4, 4);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Scalar(d(rng));
  for (auto _ : state) benchmark::DoNotOptimize(berezin_det(m));
}
BENCHMARK(BM_BerezinDet)->DenseRange(2, 5);

static void BM_MasterEquationSO3(benchmark::State& state) {
  BVModel m = bv_from_gauge(models::so3_rotations());
  for (auto _ : state) benchmark::DoNotOptimize(master_residuals(m.bv, m.action));
}
BENCHMARK(BM_MasterEquationSO3)->Unit(benchmark::kMillisecond);

static void BM_IHXDefect(benchmark::State& state) {
  LieData ld = LieData::levi_civita();
  for (auto _ : state) benchmark::DoNotOptimize(ihx_defect(ld));
}
BENCHMARK(BM_IHXDefect);

static void BM_FresnelQuadrature(benchmark::State& state) {
  QuadratureSpec spec;
  spec.S = Scalar(Rational(1, 2)) * Poly::variable(1, 0) * Poly::variable(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(oscillatory_integral(spec));
}
BENCHMARK(BM_FresnelQuadrature)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
