#include "wids/eval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "wids/reference_results.hpp"
#include "wids/synthetic.hpp"

namespace wids {
namespace {

namespace fs = std::filesystem;

TEST(ConfusionMatrix, CountsAndSums) {
  ConfusionMatrix cm(3);
  cm.add(0, 0);
  cm.add(0, 0);
  cm.add(0, 2);
  cm.add(1, 1);
  cm.add(2, 1);
  EXPECT_EQ(cm.at(0, 0), 2);
  EXPECT_EQ(cm.at(0, 2), 1);
  EXPECT_EQ(cm.at(2, 1), 1);
  EXPECT_EQ(cm.at(1, 0), 0);
  EXPECT_EQ(cm.total(), 5);
  EXPECT_EQ(cm.trace(), 3);
  EXPECT_EQ(cm.row_sum(0), 3);
  EXPECT_EQ(cm.col_sum(1), 2);
  EXPECT_THROW(cm.add(3, 0), DataError);
  EXPECT_THROW(cm.add(0, -1), DataError);
}

TEST(ConfusionMatrix, CsvHasHeaderAndOneRowPerClass) {
  ConfusionMatrix cm(2);
  cm.add(0, 0);
  cm.add(1, 0);
  const std::string csv = cm.to_csv();
  std::size_t newlines = 0;
  for (char c : csv)
    if (c == '\n') ++newlines;
  EXPECT_EQ(newlines, 3u);  // header + 2 class rows
  EXPECT_NE(csv.find("true\\pred"), std::string::npos);
}

TEST(Metrics, BinaryHandComputedCase) {
  ConfusionMatrix cm(2);
  // true attack (1): 50 caught, 10 missed; 5 false alarms; 100 true normals.
  for (int i = 0; i < 50; ++i) cm.add(1, 1);
  for (int i = 0; i < 10; ++i) cm.add(1, 0);
  for (int i = 0; i < 5; ++i) cm.add(0, 1);
  for (int i = 0; i < 100; ++i) cm.add(0, 0);

  const MetricsReport r = metrics_from_confusion(cm, Task::Binary);
  EXPECT_NEAR(r.accuracy, 100.0 * 150.0 / 165.0, 1e-9);
  EXPECT_NEAR(r.precision, 100.0 * 50.0 / 55.0, 1e-9);
  EXPECT_NEAR(r.recall, 100.0 * 50.0 / 60.0, 1e-9);
  const double p = 50.0 / 55.0, rec = 50.0 / 60.0;
  EXPECT_NEAR(r.f1, 100.0 * 2.0 * p * rec / (p + rec), 1e-9);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.record_count, 165u);
  // The headline is the attack class's own row.
  ASSERT_EQ(r.per_class.size(), 2u);
  EXPECT_EQ(r.precision, r.per_class[1].precision);
  EXPECT_EQ(r.recall, r.per_class[1].recall);
  EXPECT_EQ(r.per_class[1].support, 60);
}

TEST(Metrics, DegenerateDenominatorsReportZeroAndFlag) {
  ConfusionMatrix cm(2);
  for (int i = 0; i < 20; ++i) cm.add(0, 0);
  for (int i = 0; i < 4; ++i) cm.add(1, 0);  // attacks exist, never predicted
  const MetricsReport r = metrics_from_confusion(cm, Task::Binary);
  EXPECT_EQ(r.precision, 0.0);  // no positive predictions
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_TRUE(r.degenerate);
}

TEST(Metrics, MulticlassMacroAndWeightedHandCase) {
  ConfusionMatrix cm(8);
  // Three populated classes; five silent ones must not dilute the macros.
  for (int i = 0; i < 8; ++i) cm.add(0, 0);
  for (int i = 0; i < 2; ++i) cm.add(0, 1);
  cm.add(1, 0);
  for (int i = 0; i < 4; ++i) cm.add(1, 1);
  for (int i = 0; i < 5; ++i) cm.add(2, 2);

  const MetricsReport r = metrics_from_confusion(cm, Task::Multiclass);
  EXPECT_NEAR(r.accuracy, 85.0, 1e-9);

  const double p0 = 8.0 / 9.0, r0 = 0.8, f0 = 2 * p0 * r0 / (p0 + r0);
  const double p1 = 4.0 / 6.0, r1 = 0.8, f1 = 2 * p1 * r1 / (p1 + r1);
  const double p2 = 1.0, r2 = 1.0, f2 = 1.0;
  EXPECT_NEAR(r.macro_precision, 100.0 * (p0 + p1 + p2) / 3.0, 1e-9);
  EXPECT_NEAR(r.macro_recall, 100.0 * (r0 + r1 + r2) / 3.0, 1e-9);
  EXPECT_NEAR(r.macro_f1, 100.0 * (f0 + f1 + f2) / 3.0, 1e-9);

  EXPECT_NEAR(r.weighted_precision, 100.0 * (10 * p0 + 5 * p1 + 5 * p2) / 20.0, 1e-9);
  EXPECT_NEAR(r.weighted_recall, r.accuracy, 1e-12);  // weighted recall == accuracy
  EXPECT_NEAR(r.weighted_f1, 100.0 * (10 * f0 + 5 * f1 + 5 * f2) / 20.0, 1e-9);

  // Headline numbers are the support-weighted ones.
  EXPECT_EQ(r.precision, r.weighted_precision);
  EXPECT_EQ(r.recall, r.weighted_recall);
  EXPECT_EQ(r.f1, r.weighted_f1);
  ASSERT_EQ(r.per_class.size(), 8u);
  EXPECT_EQ(r.per_class[3].support, 0);
}

TEST(Metrics, F1FromPrecisionRecall) {
  EXPECT_EQ(f1_from_precision_recall(0.0, 0.0), 0.0);
  EXPECT_NEAR(f1_from_precision_recall(80.0, 80.0), 80.0, 1e-12);
  EXPECT_NEAR(f1_from_precision_recall(100.0, 50.0), 2 * 100.0 * 50.0 / 150.0, 1e-12);
}

TEST(EvaluateSplit, ScoresAndThreadInvariance) {
  DatasetSplit test;
  test.name = "test";
  test.records = make_synthetic(30, 4, 21);
  Network net(Arch::Conv1d1L, Task::Multiclass, 22);
  const MetricsReport a = evaluate_split(net, Technique::Cyclic, test, 1);
  const MetricsReport b = evaluate_split(net, Technique::Cyclic, test, 3);
  EXPECT_EQ(a.record_count, 120u);
  EXPECT_EQ(a.confusion.total(), 120);
  EXPECT_EQ(a.accuracy, b.accuracy);
  EXPECT_EQ(a.f1, b.f1);
  for (int t = 0; t < 8; ++t)
    for (int p = 0; p < 8; ++p) EXPECT_EQ(a.confusion.at(t, p), b.confusion.at(t, p));
}

TEST(EvaluateSplit, BinaryTaskCollapsesAttackClasses) {
  DatasetSplit test;
  test.name = "test";
  test.records = make_synthetic(10, 4, 23);  // classes 0..3
  Network net(Arch::Conv1d1L, Task::Binary, 24);
  const MetricsReport r = evaluate_split(net, Technique::Gaf, test);
  EXPECT_EQ(r.confusion.classes(), 2);
  EXPECT_EQ(r.confusion.row_sum(0), 10);  // only class 0 is normal
  EXPECT_EQ(r.confusion.row_sum(1), 30);
}

TEST(Latency, ReportsOrderedPercentilesAndBothStages) {
  const auto data = make_synthetic(500, 2, 25);
  std::vector<FeatureVector> features;
  for (const auto& r : data) features.push_back(r.features);
  Network net(Arch::Conv1d1L, Task::Binary, 26);
  const LatencyReport r = benchmark_latency(net, Technique::Gaf, features, 1);
  EXPECT_EQ(r.record_count, 1000u);
  EXPECT_EQ(r.repetitions, 1);
  for (const LatencySample* s : {&r.end_to_end, &r.forward_only}) {
    EXPECT_GT(s->mean_us, 0.0);
    EXPECT_GT(s->median_us, 0.0);
    EXPECT_GE(s->p99_us, s->median_us);
    EXPECT_GT(s->total_ms, 0.0);
  }
  // The end-to-end path does strictly more work per record.
  EXPECT_GT(r.end_to_end.mean_us, 0.5 * r.forward_only.mean_us);
}

TEST(Latency, RequiresAThousandRecords) {
  const auto data = make_synthetic(100, 2, 27);
  std::vector<FeatureVector> features;
  for (const auto& r : data) features.push_back(r.features);
  Network net(Arch::Conv1d1L, Task::Binary, 28);
  EXPECT_THROW(benchmark_latency(net, Technique::Gaf, features, 1), std::invalid_argument);
}

MetricsReport quick_report(Task task, double acc, double prec, double rec, double f1) {
  MetricsReport r;
  r.task = task;
  r.confusion = ConfusionMatrix(class_count(task));
  r.accuracy = acc;
  r.precision = prec;
  r.recall = rec;
  r.f1 = f1;
  r.record_count = 100;
  return r;
}

TEST(Comparison, TableMarksTheBestPerTechnique) {
  std::vector<ComparisonRow> rows;
  rows.push_back({Technique::Gaf, Arch::Conv2d2L,
                  quick_report(Task::Binary, 99.0, 99.0, 99.0, 99.0)});
  rows.push_back({Technique::Gaf, Arch::Conv1d1L,
                  quick_report(Task::Binary, 98.0, 98.0, 98.0, 98.0)});
  rows.push_back({Technique::Cyclic, Arch::Conv2d2L,
                  quick_report(Task::Binary, 97.0, 97.0, 97.0, 97.5)});
  const std::string table = comparison_table(rows);
  EXPECT_NE(table.find("gaf"), std::string::npos);
  EXPECT_NE(table.find("cyclic"), std::string::npos);
  EXPECT_NE(table.find('*'), std::string::npos);

  const std::string csv = comparison_csv(rows);
  std::size_t best_count = 0;
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "technique,model,accuracy,precision,recall,f1,best");
  while (std::getline(is, line)) {
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++best_count;
  }
  EXPECT_EQ(best_count, 2u);  // one best row per technique present
}

TEST(Comparison, RejectsMixedTasks) {
  std::vector<ComparisonRow> rows;
  rows.push_back({Technique::Gaf, Arch::Conv2d2L,
                  quick_report(Task::Binary, 99.0, 99.0, 99.0, 99.0)});
  rows.push_back({Technique::Gaf, Arch::Conv1d1L,
                  quick_report(Task::Multiclass, 98.0, 98.0, 98.0, 98.0)});
  EXPECT_THROW(comparison_table(rows), DataError);
}

TEST(Comparison, KvRoundTrip) {
  MetricsReport r = quick_report(Task::Multiclass, 99.25, 98.5, 97.75, 98.12);
  r.macro_precision = 90.0;
  r.per_class.resize(8);
  const std::string kv = metrics_to_kv(r, Technique::Correlation, Arch::Conv1d2L);
  const fs::path p = fs::temp_directory_path() / "wids_metrics_kv_test.csv";
  std::ofstream(p) << kv;
  const ComparisonRow row = parse_metrics_kv(p);
  fs::remove(p);
  EXPECT_EQ(row.technique, Technique::Correlation);
  EXPECT_EQ(row.arch, Arch::Conv1d2L);
  EXPECT_EQ(row.metrics.task, Task::Multiclass);
  EXPECT_DOUBLE_EQ(row.metrics.accuracy, 99.25);
  EXPECT_DOUBLE_EQ(row.metrics.f1, 98.12);
  EXPECT_EQ(row.metrics.record_count, 100u);
}

TEST(Comparison, ParseRejectsMissingKeys) {
  const fs::path p = fs::temp_directory_path() / "wids_metrics_bad_test.csv";
  std::ofstream(p) << "key,value\ntask,binary\n";
  EXPECT_THROW(parse_metrics_kv(p), IoError);
  fs::remove(p);
}

TEST(ReferenceResults, TablesAreCompleteAndConsistent) {
  for (Task task : {Task::Binary, Task::Multiclass}) {
    const auto rows = reference_results(task);
    ASSERT_EQ(rows.size(), 20u);  // 5 techniques x 4 architectures
    for (Technique t : kAllTechniques)
      for (Arch a : kAllArchs) {
        const ReferenceRow* row = find_reference(task, t, a);
        ASSERT_NE(row, nullptr);
        EXPECT_GT(row->test_accuracy, 50.0);
        EXPECT_LE(row->test_accuracy, 100.0);
        EXPECT_GT(row->f1, 0.0);
        EXPECT_LE(row->f1, 100.0);
      }
  }
  // Spot checks of the headline rows.
  const ReferenceRow* binary_best = find_reference(Task::Binary, Technique::Gaf, Arch::Conv2d2L);
  ASSERT_NE(binary_best, nullptr);
  EXPECT_DOUBLE_EQ(binary_best->test_accuracy, 99.93);
  EXPECT_DOUBLE_EQ(binary_best->f1, 99.73);
  const ReferenceRow* multi_best =
      find_reference(Task::Multiclass, Technique::Gaf, Arch::Conv1d2L);
  ASSERT_NE(multi_best, nullptr);
  EXPECT_DOUBLE_EQ(multi_best->test_accuracy, 99.62);
  EXPECT_DOUBLE_EQ(multi_best->f1, 99.62);

  EXPECT_DOUBLE_EQ(reference_latency_us(Arch::Conv2d2L), 48.0);
  EXPECT_DOUBLE_EQ(reference_latency_us(Arch::Conv1d2L), 40.0);
  EXPECT_EQ(reference_latency_us(Arch::Conv2d1L), 0.0);
}

}  // namespace
}  // namespace wids
