// Serial reference vs OpenMP kernels, plus the per-packet hot paths.

#include <benchmark/benchmark.h>

#include <random>

#include "lrsc/decoder.hpp"
#include "lrsc/encoder.hpp"
#include "lrsc/oracle.hpp"
#include "lrsc/sim.hpp"

using namespace lrsc;

namespace {

const Code& big_code() {
  static const Code c = Code::lrsc(derive_params(4, 15, 3));
  return c;
}

const Code& small_code() {
  static const Code c = Code::lrsc(derive_params(2, 5, 2));
  return c;
}

void BM_VerifyStreamSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_stream_serial(big_code(), StreamCheck{4, 15}));
}

void BM_VerifyStreamParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_stream(big_code(), StreamCheck{4, 15, 0, {1, 2, 3}, threads}));
}

const std::vector<double> kEps{0.01, 0.05, 0.1, 0.2};

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(small_code(), kEps, 100000, 7));
}

void BM_SweepParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(small_code(), kEps, 100000, 7, threads));
}

void BM_FieldMul(benchmark::State& state) {
  const auto f = TowerField::make(3, 4);
  std::mt19937_64 rng(1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = Elem{static_cast<std::uint32_t>(rng() % f->order())};
  const bool reference = state.range(0) != 0;
  for (auto _ : state) {
    Elem acc = TowerField::one();
    for (Elem x : xs) acc = reference ? f->mul_reference(acc, f->add(x, TowerField::one())) : f->mul(acc, f->add(x, TowerField::one()));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}

void BM_EncodeDecode(benchmark::State& state) {
  const Code& c = small_code();
  const Channel ch = Channel::pec(0.05, 3);
  for (auto _ : state) benchmark::DoNotOptimize(run_sim(c, ch, 20000, 5));
  state.SetItemsProcessed(state.iterations() * 20000);
}

}  // namespace

BENCHMARK(BM_VerifyStreamSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyStreamParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldMul)->Arg(0)->Arg(1);
BENCHMARK(BM_EncodeDecode)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
