#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wids/ingest.hpp"
#include "wids/model.hpp"
#include "wids/types.hpp"

namespace wids {

// Row-true, column-predicted confusion counts.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int classes);

  void add(int true_class, int predicted_class);
  long long at(int true_class, int predicted_class) const;
  long long total() const;
  long long trace() const;
  long long row_sum(int true_class) const;
  long long col_sum(int predicted_class) const;
  int classes() const { return classes_; }

  std::string to_csv() const;

 private:
  int classes_;
  std::vector<long long> counts_;
};

// Precision/recall/F1 for one class treated one-vs-rest, as percentages.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long long support = 0;
  bool degenerate = false;  // a zero denominator was hit (reported as 0)
};

struct MetricsReport {
  Task task = Task::Binary;
  ConfusionMatrix confusion{2};
  double accuracy = 0.0;

  // Headline numbers (percent): the attack class for the binary task, the
  // support-weighted averages for multiclass.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  std::vector<ClassMetrics> per_class;
  // Unweighted means over classes with nonzero support (multiclass).
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
  // Support-weighted means (multiclass); weighted recall equals accuracy.
  double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
  bool degenerate = false;

  std::size_t record_count = 0;
};

// Derives every metric from a finished confusion matrix. Pure and cheap,
// so it is independently testable against hand-built matrices.
MetricsReport metrics_from_confusion(const ConfusionMatrix& confusion, Task task);

// F1 from precision and recall in percent; 0 when both are 0.
double f1_from_precision_recall(double precision, double recall);

// Runs the full transform + forward pipeline over a split and scores it.
// `threads` parallelizes the transform stage only; predictions are ordered
// either way, so results do not depend on the thread count.
MetricsReport evaluate_split(Network& net, Technique technique, const DatasetSplit& test,
                             int threads = 1);

// --- Latency -----------------------------------------------------------------

struct LatencySample {
  double mean_us = 0.0;
  double median_us = 0.0;
  double p99_us = 0.0;
  double total_ms = 0.0;
};

struct LatencyReport {
  std::size_t record_count = 0;
  int repetitions = 0;
  LatencySample end_to_end;      // transform + forward per record
  LatencySample forward_only;    // pre-transformed inputs
};

// Single-threaded per-record timing with one untimed warm-up pass. Requires
// at least 1,000 records for stable statistics.
LatencyReport benchmark_latency(Network& net, Technique technique,
                                std::span<const FeatureVector> features,
                                int repetitions = 3);

// --- Cross-run comparison ----------------------------------------------------

struct ComparisonRow {
  Technique technique;
  Arch arch;
  MetricsReport metrics;
};

// Renders rows grouped by technique with the best F1 per technique marked.
// All rows must share one task. Ties break by accuracy, then by model name.
std::string comparison_table(std::span<const ComparisonRow> rows);
std::string comparison_csv(std::span<const ComparisonRow> rows);

// Key-value metrics file (one "key,value" per line) for a finished
// evaluation; parse_metrics_csv reads it back.
std::string metrics_to_kv(const MetricsReport& report, Technique technique, Arch arch);
ComparisonRow parse_metrics_kv(const std::filesystem::path& path);

}  // namespace wids
