#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wids/ingest.hpp"
#include "wids/model.hpp"
#include "wids/nn.hpp"
#include "wids/types.hpp"

namespace wids {

struct TrainConfig {
  Technique technique = Technique::Gaf;
  int max_epochs = 100;
  int patience = 3;  // epochs without validation-loss improvement
  int batch_size = 256;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  // Parallelizes the one-off transform precompute only; the optimization
  // itself is single-threaded, so results are identical for any value.
  int threads = 1;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;  // fraction, 0..1
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  int best_epoch = 0;     // epoch whose weights the network ends up with
  bool early_stopped = false;
  double wall_seconds = 0.0;
};

// Stops training after `patience` epochs without strict validation-loss
// improvement, remembering which epoch was best.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience);

  // Records one epoch; returns true when training should stop.
  bool observe(int epoch, double val_loss);

  bool improved_last() const { return improved_last_; }
  int best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }

 private:
  int patience_;
  int stale_ = 0;
  int best_epoch_ = 0;
  double best_loss_;
  bool improved_last_ = false;
};

// Accumulates mean-reduced batch gradients into net's gradient buffers
// (which are zeroed first). Returns (mean loss, correct predictions).
// Exposed separately so gradient linearity is testable.
std::pair<double, std::size_t> accumulate_batch_gradients(
    Network& net, const std::vector<const Matrix16*>& images,
    const std::vector<int>& targets, std::mt19937& dropout_rng);

// Trains the network on pre-scaled records: transforms each split once with
// the configured technique, then runs mini-batch AMSGrad with a seeded
// reshuffle every epoch and early stopping on validation loss; the weights
// from the best validation epoch are restored before returning. Runs on one
// thread and is bit-reproducible for a given config and seed.
TrainReport train_network(Network& net, const DatasetSplit& train,
                          const DatasetSplit& validation, const TrainConfig& config);

// Mean loss and accuracy of the network over a transformed dataset
// (inference mode, no dropout).
std::pair<double, double> evaluate_loss(Network& net, const std::vector<Matrix16>& images,
                                        const std::vector<int>& targets);

void write_epoch_csv(const TrainReport& report, const std::filesystem::path& path);

}  // namespace wids
