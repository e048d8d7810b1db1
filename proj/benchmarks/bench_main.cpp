#include <benchmark/benchmark.h>

#include "loopint/bismut.hpp"

using namespace loopint;

namespace {

CliffordC rand_element(int n, RngStream& rng) {
  CliffordC a(n);
  for (auto& x : a.c) x = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
  return a;
}

void bm_clifford_mul(benchmark::State& state) {
  int n = int(state.range(0));
  RngStream rng = RngStream::make(1, 0);
  CliffordC a = rand_element(n, rng), b = rand_element(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cl_mul(a, b));
}
BENCHMARK(bm_clifford_mul)->Arg(2)->Arg(4)->Arg(6);

void bm_heat_kernel(benchmark::State& state) {
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 0).finished());
  Vec x(2), y(2);
  x << 0.2, 0.7;
  y << 0.9, 0.1;
  double T = std::pow(2.0, -double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel(X, T, x, y));
}
BENCHMARK(bm_heat_kernel)->Arg(0)->Arg(2)->Arg(4);

void bm_loop_sample(benchmark::State& state) {
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 1).finished());
  LoopSampler s(X, 0.5, int(state.range(0)));
  RngStream rng = RngStream::make(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(rng));
}
BENCHMARK(bm_loop_sample)->Arg(16)->Arg(64)->Arg(256);

void bm_q_eval(benchmark::State& state) {
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 1).finished());
  FormField f1 = FormField::mode(2, 0b01, (IVec(2) << 1, 0).finished(), 1.0);
  FormField f2 = FormField::mode(2, 0b10, (IVec(2) << -1, 0).finished(), 1.0);
  IntegralForm theta = wedge(insert_at(2, 0.625, f2),
                             lift_form(2, TrigPoly{1.0, {{0.3, 0.0}}}, f1));
  LoopSampler s(X, 0.5, int(state.range(0)));
  RngStream rng = RngStream::make(3, 0);
  DiscreteLoop l = s.sample(rng);
  for (auto _ : state) benchmark::DoNotOptimize(q_loop(X, l, theta));
}
BENCHMARK(bm_q_eval)->Arg(16)->Arg(64)->Arg(256);

void bm_flux_holonomy_current(benchmark::State& state) {
  FlatTorus X = unit_torus(2);
  TwistBundle V = TwistBundle::flux_line(1);
  LoopSampler s(X, 0.5, int(state.range(0)));
  RngStream rng = RngStream::make(4, 0);
  DiscreteLoop l = s.sample(rng);
  for (auto _ : state) benchmark::DoNotOptimize(bch_even_q(X, V, l, 0.5));
}
BENCHMARK(bm_flux_holonomy_current)->Arg(16)->Arg(64);

void bm_insertion_supertrace(benchmark::State& state) {
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 1).finished());
  FormField f1 = FormField::mode(2, 0b01, (IVec(2) << 1, 0).finished(), 1.0);
  FormField f2 = FormField::mode(2, 0b10, (IVec(2) << -1, 0).finished(), 1.0);
  std::vector<Insertion> ins = {{0.25, &f1}, {0.625, &f2}};
  int cutoff = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(heat_insertion_supertrace(X, 0.25, ins, cutoff));
}
BENCHMARK(bm_insertion_supertrace)->Arg(12)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
