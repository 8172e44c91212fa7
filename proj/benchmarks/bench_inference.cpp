// Per-record forward-pass latency of the four architectures, with and without
// the transform stage in front.

#include <benchmark/benchmark.h>

#include <vector>

#include "wids/model.hpp"
#include "wids/synthetic.hpp"
#include "wids/transform.hpp"
#include "wids/types.hpp"

namespace {

void BM_ForwardPass(benchmark::State& state) {
  const auto arch = static_cast<wids::Arch>(state.range(0));
  wids::Network net(arch, wids::Task::Binary, 7);

  const auto records = wids::make_synthetic(128, 8, 99);
  std::vector<wids::Tensor> inputs;
  inputs.reserve(records.size());
  for (const auto& rec : records)
    inputs.push_back(wids::image_to_input<float>(
        wids::apply_transform(wids::Technique::Gaf, rec.features), arch));

  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward_logits(inputs[i]));
    i = (i + 1) % inputs.size();
  }
  state.SetLabel(std::string(wids::arch_name(arch)));
}

void BM_TransformAndForward(benchmark::State& state) {
  const auto arch = static_cast<wids::Arch>(state.range(0));
  wids::Network net(arch, wids::Task::Binary, 7);
  const auto records = wids::make_synthetic(128, 8, 99);

  std::size_t i = 0;
  for (auto _ : state) {
    const auto image = wids::apply_transform(wids::Technique::Gaf, records[i].features);
    benchmark::DoNotOptimize(net.forward_logits(wids::image_to_input<float>(image, arch)));
    i = (i + 1) % records.size();
  }
  state.SetLabel(std::string(wids::arch_name(arch)));
}

}  // namespace

BENCHMARK(BM_ForwardPass)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TransformAndForward)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
