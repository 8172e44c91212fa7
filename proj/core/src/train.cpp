#include "wids/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "wids/csv.hpp"
#include "wids/transform.hpp"
#include "wids/util.hpp"

namespace wids {

EarlyStopping::EarlyStopping(int patience)
    : patience_(patience), best_loss_(std::numeric_limits<double>::infinity()) {
  if (patience < 1) throw std::invalid_argument("patience must be at least 1");
}

bool EarlyStopping::observe(int epoch, double val_loss) {
  improved_last_ = val_loss < best_loss_;
  if (improved_last_) {
    best_loss_ = val_loss;
    best_epoch_ = epoch;
    stale_ = 0;
    return false;
  }
  return ++stale_ >= patience_;
}

std::pair<double, std::size_t> accumulate_batch_gradients(
    Network& net, const std::vector<const Matrix16*>& images,
    const std::vector<int>& targets, std::mt19937& dropout_rng) {
  if (images.size() != targets.size() || images.empty())
    throw std::invalid_argument("batch images and targets must align and be non-empty");
  net.zero_grads();
  const float inv_batch = 1.0f / static_cast<float>(images.size());
  const LossKind loss_kind = net.loss_kind();

  double loss_sum = 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    Tensor x = image_to_input<float>(*images[i], net.arch());
    Tensor logits = net.forward_logits(x, RunMode::Train, dropout_rng);
    auto result = compute_loss(loss_kind, logits, targets[i]);
    if (!std::isfinite(result.loss))
      throw DataError("non-finite training loss encountered");
    loss_sum += result.loss;

    std::size_t best = 0;
    for (std::size_t k = 1; k < logits.size(); ++k)
      if (logits.data[k] > logits.data[best]) best = k;
    if (static_cast<int>(best) == targets[i]) ++correct;

    // Mean reduction over the batch, folded into the logit gradient.
    for (auto& g : result.grad_logits.data) g *= inv_batch;
    net.backward_from_logits(result.grad_logits);
  }
  return {loss_sum / static_cast<double>(images.size()), correct};
}

std::pair<double, double> evaluate_loss(Network& net, const std::vector<Matrix16>& images,
                                        const std::vector<int>& targets) {
  if (images.size() != targets.size() || images.empty())
    throw std::invalid_argument("evaluation images and targets must align and be non-empty");
  const LossKind loss_kind = net.loss_kind();
  double loss_sum = 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    Tensor x = image_to_input<float>(images[i], net.arch());
    Tensor logits = net.forward_logits(x);
    auto result = compute_loss(loss_kind, logits, targets[i]);
    loss_sum += result.loss;
    std::size_t best = 0;
    for (std::size_t k = 1; k < logits.size(); ++k)
      if (logits.data[k] > logits.data[best]) best = k;
    if (static_cast<int>(best) == targets[i]) ++correct;
  }
  return {loss_sum / static_cast<double>(images.size()),
          static_cast<double>(correct) / static_cast<double>(images.size())};
}

namespace {

std::vector<int> task_targets(const DatasetSplit& split, Task task) {
  std::vector<int> out;
  out.reserve(split.records.size());
  const int classes = class_count(task);
  for (const auto& r : split.records) {
    const int t = task_target(task, r.class_id);
    if (t >= classes)
      throw DataError("split '" + split.name + "' holds class id " +
                      std::to_string(static_cast<int>(r.class_id)) +
                      ", outside this task's range");
    out.push_back(t);
  }
  return out;
}

std::vector<Matrix16> transform_split(const DatasetSplit& split, Technique technique,
                                      int threads) {
  std::vector<FeatureVector> features;
  features.reserve(split.records.size());
  for (const auto& r : split.records) features.push_back(r.features);
  return transform_batch(technique, features, threads);
}

}  // namespace

TrainReport train_network(Network& net, const DatasetSplit& train,
                          const DatasetSplit& validation, const TrainConfig& config) {
  if (train.records.empty() || validation.records.empty())
    throw DataError("training requires non-empty train and validation splits");
  if (config.max_epochs < 1) throw std::invalid_argument("max_epochs must be at least 1");
  if (config.batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");

  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<Matrix16> train_images =
      transform_split(train, config.technique, config.threads);
  const std::vector<Matrix16> val_images =
      transform_split(validation, config.technique, config.threads);
  const std::vector<int> train_targets = task_targets(train, net.task());
  const std::vector<int> val_targets = task_targets(validation, net.task());

  AmsGradT<float>::Config opt_cfg;
  opt_cfg.learning_rate = config.learning_rate;
  AmsGradT<float> optimizer(net.params(), net.grads(), opt_cfg);

  std::mt19937 dropout_rng(static_cast<std::uint32_t>(derive_seed(config.seed, 0x0d0d)));

  EarlyStopping stopper(config.patience);
  TrainReport report;

  // Deep copies of the best-so-far weights, restored on return.
  std::vector<Tensor> best_weights;
  auto snapshot = [&] {
    best_weights.clear();
    for (auto* p : net.params()) best_weights.push_back(*p);
  };

  std::vector<std::size_t> order(train_images.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    // Epoch-indexed seed: the shuffle sequence is reproducible and does not
    // depend on how many batches earlier epochs ran.
    std::mt19937_64 shuffle_rng(derive_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    std::size_t correct = 0;
    std::vector<const Matrix16*> batch_images;
    std::vector<int> batch_targets;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch_images.clear();
      batch_targets.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch_images.push_back(&train_images[order[i]]);
        batch_targets.push_back(train_targets[order[i]]);
      }
      auto [batch_loss, batch_correct] =
          accumulate_batch_gradients(net, batch_images, batch_targets, dropout_rng);
      loss_sum += batch_loss * static_cast<double>(batch_images.size());
      correct += batch_correct;
      optimizer.step();
    }

    auto [val_loss, val_acc] = evaluate_loss(net, val_images, val_targets);

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / static_cast<double>(train_images.size());
    stats.train_accuracy = static_cast<double>(correct) / static_cast<double>(train_images.size());
    stats.val_loss = val_loss;
    stats.val_accuracy = val_acc;
    report.epochs.push_back(stats);

    const bool stop = stopper.observe(epoch, val_loss);
    if (stopper.improved_last()) snapshot();
    if (stop) {
      report.early_stopped = true;
      break;
    }
  }

  report.best_epoch = stopper.best_epoch();
  if (!best_weights.empty()) {
    auto params = net.params();
    for (std::size_t i = 0; i < params.size(); ++i) *params[i] = best_weights[i];
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void write_epoch_csv(const TrainReport& report, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.write_row({"epoch", "train_loss", "train_acc", "val_loss", "val_acc"});
  for (const auto& e : report.epochs) {
    char loss[32], acc[32], vloss[32], vacc[32];
    std::snprintf(loss, sizeof(loss), "%.6f", e.train_loss);
    std::snprintf(acc, sizeof(acc), "%.6f", e.train_accuracy);
    std::snprintf(vloss, sizeof(vloss), "%.6f", e.val_loss);
    std::snprintf(vacc, sizeof(vacc), "%.6f", e.val_accuracy);
    w.write_row({std::to_string(e.epoch), loss, acc, vloss, vacc});
  }
  w.close();
}

}  // namespace wids
