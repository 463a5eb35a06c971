#include <benchmark/benchmark.h>

#include <vector>

#include "fons/harness/stream.h"
#include "fons/predictors.h"
#include "fons/rotations.h"

namespace {

const std::vector<double>& stream() {
  static const std::vector<double> s = fons::harness::default_synthetic_stream(1 << 16, 42).samples;
  return s;
}

template <typename Learner>
void BM_Step(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto& s = stream();
  Learner learner(fons::HyperParams{dim, 0.003, 1.0, 1e-8});
  learner.prime(s[0]);
  std::size_t t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(learner.step(s[t]));
    if (++t == s.size()) t = 1;
  }
  state.SetItemsProcessed(state.iterations());
}

BENCHMARK(BM_Step<fons::Ogd<double>>)->RangeMultiplier(2)->Range(16, 1024);
BENCHMARK(BM_Step<fons::Ons<double>>)->RangeMultiplier(2)->Range(16, 1024);
BENCHMARK(BM_Step<fons::FastOns<double>>)->RangeMultiplier(2)->Range(16, 1024);
BENCHMARK(BM_Step<fons::FastOns<float>>)->RangeMultiplier(2)->Range(16, 1024);

void BM_Transform(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0)) + 2;
  fons::TransformArray<double> a(rows);
  for (std::size_t r = 1; r < rows; ++r)
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = 0.01 * static_cast<double>((r * 3 + c) % 17);
  for (auto _ : state) {
    a(0, 0) = 2.0;
    a(0, 1) = 0.5;
    a(0, 2) = 0.7;
    benchmark::DoNotOptimize(fons::apply_transform_in_place(a));
  }
}
BENCHMARK(BM_Transform)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace

BENCHMARK_MAIN();
