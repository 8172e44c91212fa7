// Throughput of the five matrix transformations, one feature vector at a time
// and batched across threads.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wids/synthetic.hpp"
#include "wids/transform.hpp"
#include "wids/types.hpp"

namespace {

std::vector<wids::FeatureVector> sample_features(std::size_t n) {
  const auto records = wids::make_synthetic(n / 8 + 1, 8, 1234);
  std::vector<wids::FeatureVector> features;
  features.reserve(n);
  for (std::size_t i = 0; i < n; ++i) features.push_back(records[i].features);
  return features;
}

void BM_Transform(benchmark::State& state) {
  const auto technique = static_cast<wids::Technique>(state.range(0));
  const auto features = sample_features(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wids::apply_transform(technique, features[i]));
    i = (i + 1) % features.size();
  }
  state.SetLabel(std::string(wids::technique_name(technique)));
}

void BM_TransformBatch(benchmark::State& state) {
  const auto technique = static_cast<wids::Technique>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  const auto features = sample_features(4096);
  for (auto _ : state)
    benchmark::DoNotOptimize(wids::transform_batch(technique, features, threads));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(features.size()));
  state.SetLabel(std::string(wids::technique_name(technique)) + " x" +
                 std::to_string(threads));
}

}  // namespace

BENCHMARK(BM_Transform)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TransformBatch)
    ->ArgsProduct({{0, 1, 2, 3, 4}, {1, 4}})
    ->Unit(benchmark::kMillisecond);
