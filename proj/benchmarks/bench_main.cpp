#include <benchmark/benchmark.h>

#include "klab/criteria.hpp"
#include "klab/curve.hpp"

namespace {

klab::XiVector fig1_xi() { return klab::xi_from_csv(7, "1,4,1,1,2,3"); }

void bm_kippenhahn_poly_exact(benchmark::State& state) {
  auto xi = fig1_xi();
  for (auto _ : state) {
    auto kp = klab::kippenhahn_poly(xi);
    benchmark::DoNotOptimize(kp);
  }
}
BENCHMARK(bm_kippenhahn_poly_exact);

void bm_origin_check(benchmark::State& state) {
  auto xi = fig1_xi();
  for (auto _ : state) {
    auto r = klab::origin_ellipse_check(xi, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_origin_check);

void bm_concentric_check(benchmark::State& state) {
  auto xi = klab::xi_from_csv(7, "1,1,2,0,1,1");
  for (auto _ : state) {
    auto r = klab::concentric_check(xi);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_concentric_check);

void bm_classify(benchmark::State& state) {
  auto xi = fig1_xi();
  for (auto _ : state) {
    auto c = klab::classify(xi);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(bm_classify);

void bm_eigs_single_angle(benchmark::State& state) {
  auto a = klab::matrix_from_xi(fig1_xi());
  for (auto _ : state) {
    auto es = klab::hermitian_part_eigs(a, 0.7);
    benchmark::DoNotOptimize(es);
  }
}
BENCHMARK(bm_eigs_single_angle);

void bm_sample_curve(benchmark::State& state) {
  auto a = klab::matrix_from_xi(fig1_xi());
  auto grid = klab::default_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto samples = klab::sample_curve(a, grid);
    benchmark::DoNotOptimize(samples);
  }
}
BENCHMARK(bm_sample_curve)->Arg(256)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
