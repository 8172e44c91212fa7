#include "wids/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "wids/csv.hpp"
#include "wids/transform.hpp"
#include "wids/util.hpp"

namespace wids {

ConfusionMatrix::ConfusionMatrix(int classes) : classes_(classes) {
  if (classes < 2) throw std::invalid_argument("confusion matrix needs at least 2 classes");
  counts_.assign(static_cast<std::size_t>(classes) * classes, 0);
}

void ConfusionMatrix::add(int t, int p) {
  if (t < 0 || t >= classes_ || p < 0 || p >= classes_)
    throw DataError("confusion matrix index out of range");
  ++counts_[static_cast<std::size_t>(t) * classes_ + p];
}

long long ConfusionMatrix::at(int t, int p) const {
  if (t < 0 || t >= classes_ || p < 0 || p >= classes_)
    throw DataError("confusion matrix index out of range");
  return counts_[static_cast<std::size_t>(t) * classes_ + p];
}

long long ConfusionMatrix::total() const {
  long long s = 0;
  for (long long c : counts_) s += c;
  return s;
}

long long ConfusionMatrix::trace() const {
  long long s = 0;
  for (int i = 0; i < classes_; ++i) s += at(i, i);
  return s;
}

long long ConfusionMatrix::row_sum(int t) const {
  long long s = 0;
  for (int p = 0; p < classes_; ++p) s += at(t, p);
  return s;
}

long long ConfusionMatrix::col_sum(int p) const {
  long long s = 0;
  for (int t = 0; t < classes_; ++t) s += at(t, p);
  return s;
}

std::string ConfusionMatrix::to_csv() const {
  std::ostringstream os;
  os << "true\\predicted";
  for (int p = 0; p < classes_; ++p) os << ',' << p;
  os << '\n';
  for (int t = 0; t < classes_; ++t) {
    os << t;
    for (int p = 0; p < classes_; ++p) os << ',' << at(t, p);
    os << '\n';
  }
  return os.str();
}

double f1_from_precision_recall(double precision, double recall) {
  const double s = precision + recall;
  if (s <= 0.0) return 0.0;
  return 2.0 * precision * recall / s;
}

MetricsReport metrics_from_confusion(const ConfusionMatrix& confusion, Task task) {
  if (confusion.classes() != class_count(task))
    throw DataError("confusion matrix size does not match the task");

  MetricsReport r;
  r.task = task;
  r.confusion = confusion;
  const long long total = confusion.total();
  r.record_count = static_cast<std::size_t>(total);
  r.accuracy = total > 0 ? 100.0 * static_cast<double>(confusion.trace()) /
                               static_cast<double>(total)
                         : 0.0;
  if (total == 0) r.degenerate = true;

  const int classes = confusion.classes();
  r.per_class.resize(classes);
  for (int c = 0; c < classes; ++c) {
    auto& m = r.per_class[c];
    const long long tp = confusion.at(c, c);
    const long long predicted = confusion.col_sum(c);
    const long long actual = confusion.row_sum(c);
    m.support = actual;
    if (predicted > 0)
      m.precision = 100.0 * static_cast<double>(tp) / static_cast<double>(predicted);
    else
      m.degenerate = true;
    if (actual > 0)
      m.recall = 100.0 * static_cast<double>(tp) / static_cast<double>(actual);
    else
      m.degenerate = true;
    m.f1 = f1_from_precision_recall(m.precision, m.recall);
    if (m.degenerate) r.degenerate = true;
  }

  if (task == Task::Binary) {
    // Headline metrics score the attack class (class 1).
    r.precision = r.per_class[1].precision;
    r.recall = r.per_class[1].recall;
    r.f1 = r.per_class[1].f1;
    return r;
  }

  // Multiclass: macro over populated classes, weighted over support.
  int populated = 0;
  double wsum = 0.0;
  for (int c = 0; c < classes; ++c) {
    const auto& m = r.per_class[c];
    if (m.support == 0) continue;
    ++populated;
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
    const double w = static_cast<double>(m.support);
    wsum += w;
    r.weighted_precision += w * m.precision;
    r.weighted_recall += w * m.recall;
    r.weighted_f1 += w * m.f1;
  }
  if (populated > 0) {
    r.macro_precision /= populated;
    r.macro_recall /= populated;
    r.macro_f1 /= populated;
  }
  if (wsum > 0.0) {
    r.weighted_precision /= wsum;
    r.weighted_recall /= wsum;
    r.weighted_f1 /= wsum;
  }
  r.precision = r.weighted_precision;
  r.recall = r.weighted_recall;
  r.f1 = r.weighted_f1;
  return r;
}

MetricsReport evaluate_split(Network& net, Technique technique, const DatasetSplit& test,
                             int threads) {
  if (test.records.empty()) throw DataError("cannot evaluate an empty split");

  std::vector<FeatureVector> features;
  features.reserve(test.records.size());
  for (const auto& r : test.records) features.push_back(r.features);
  const std::vector<Matrix16> images = transform_batch(technique, features, threads);

  ConfusionMatrix confusion(class_count(net.task()));
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Tensor x = image_to_input<float>(images[i], net.arch());
    const int predicted = net.predict(x);
    confusion.add(task_target(net.task(), test.records[i].class_id), predicted);
  }
  return metrics_from_confusion(confusion, net.task());
}

namespace {

LatencySample summarize_us(std::vector<double>& samples) {
  LatencySample s;
  double total = 0.0;
  for (double v : samples) total += v;
  s.total_ms = total / 1e3;
  s.mean_us = total / static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  s.median_us = (n % 2) ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  std::size_t p99 = static_cast<std::size_t>(std::ceil(0.99 * n));
  if (p99 > 0) --p99;  // index of the 99th percentile (nearest-rank)
  s.p99_us = samples[std::min(p99, n - 1)];
  return s;
}

}  // namespace

LatencyReport benchmark_latency(Network& net, Technique technique,
                                std::span<const FeatureVector> features, int repetitions) {
  if (features.size() < 1000)
    throw std::invalid_argument("latency benchmark needs at least 1,000 records");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");

  using clock = std::chrono::steady_clock;
  const Arch arch = net.arch();

  // Warm-up pass: touches every code path and fills caches; not timed.
  std::vector<Matrix16> images(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    images[i] = apply_transform(technique, features[i]);
    (void)net.predict(image_to_input<float>(images[i], arch));
  }

  LatencyReport report;
  report.record_count = features.size();
  report.repetitions = repetitions;

  std::vector<double> e2e_us;
  std::vector<double> fwd_us;
  e2e_us.reserve(features.size() * repetitions);
  fwd_us.reserve(features.size() * repetitions);

  long long guard = 0;  // keeps the predict calls observable
  for (int rep = 0; rep < repetitions; ++rep) {
    for (const auto& f : features) {
      const auto t0 = clock::now();
      const Matrix16 m = apply_transform(technique, f);
      guard += net.predict(image_to_input<float>(m, arch));
      e2e_us.push_back(std::chrono::duration<double, std::micro>(clock::now() - t0).count());
    }
    for (const auto& m : images) {
      const Tensor x = image_to_input<float>(m, arch);
      const auto t0 = clock::now();
      guard += net.predict(x);
      fwd_us.push_back(std::chrono::duration<double, std::micro>(clock::now() - t0).count());
    }
  }
  if (guard < 0) throw DataError("impossible prediction sum");  // defeats dead-code elision

  report.end_to_end = summarize_us(e2e_us);
  report.forward_only = summarize_us(fwd_us);
  return report;
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void check_single_task(std::span<const ComparisonRow> rows) {
  if (rows.empty()) throw DataError("no evaluation results to compare");
  for (const auto& row : rows)
    if (row.metrics.task != rows.front().metrics.task)
      throw DataError("cannot compare evaluations of different tasks (binary vs multiclass)");
}

// Indices of `rows` grouped by technique in canonical order, with the best
// row (F1, then accuracy, then model name) of each group marked.
std::vector<std::pair<std::size_t, bool>> ordered_rows(std::span<const ComparisonRow> rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows[a].technique != rows[b].technique)
      return static_cast<int>(rows[a].technique) < static_cast<int>(rows[b].technique);
    return arch_name(rows[a].arch) < arch_name(rows[b].arch);
  });

  std::vector<std::pair<std::size_t, bool>> out;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t best = order[i];
    while (j < order.size() && rows[order[j]].technique == rows[order[i]].technique) {
      const auto& cand = rows[order[j]];
      const auto& cur = rows[best];
      if (cand.metrics.f1 > cur.metrics.f1 ||
          (cand.metrics.f1 == cur.metrics.f1 &&
           (cand.metrics.accuracy > cur.metrics.accuracy ||
            (cand.metrics.accuracy == cur.metrics.accuracy &&
             arch_name(cand.arch) < arch_name(cur.arch)))))
        best = order[j];
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) out.emplace_back(order[k], order[k] == best);
    i = j;
  }
  return out;
}

}  // namespace

std::string comparison_csv(std::span<const ComparisonRow> rows) {
  check_single_task(rows);
  std::ostringstream os;
  os << "technique,model,accuracy,precision,recall,f1,best\n";
  for (const auto& [idx, best] : ordered_rows(rows)) {
    const auto& r = rows[idx];
    os << technique_name(r.technique) << ',' << arch_name(r.arch) << ','
       << pct(r.metrics.accuracy) << ',' << pct(r.metrics.precision) << ','
       << pct(r.metrics.recall) << ',' << pct(r.metrics.f1) << ',' << (best ? 1 : 0)
       << '\n';
  }
  return os.str();
}

std::string comparison_table(std::span<const ComparisonRow> rows) {
  check_single_task(rows);
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof(line), "%-20s %-6s %9s %10s %8s %8s %5s\n", "technique",
                "model", "accuracy", "precision", "recall", "f1", "best");
  os << line;
  for (const auto& [idx, best] : ordered_rows(rows)) {
    const auto& r = rows[idx];
    std::snprintf(line, sizeof(line), "%-20s %-6s %9.2f %10.2f %8.2f %8.2f %5s\n",
                  std::string(technique_name(r.technique)).c_str(),
                  std::string(arch_name(r.arch)).c_str(), r.metrics.accuracy,
                  r.metrics.precision, r.metrics.recall, r.metrics.f1, best ? "*" : "");
    os << line;
  }
  return os.str();
}

std::string metrics_to_kv(const MetricsReport& report, Technique technique, Arch arch) {
  std::ostringstream os;
  os << "key,value\n";
  os << "task," << task_name(report.task) << '\n';
  os << "technique," << technique_name(technique) << '\n';
  os << "model," << arch_name(arch) << '\n';
  os << "records," << report.record_count << '\n';
  os << "accuracy," << format_number(report.accuracy) << '\n';
  os << "precision," << format_number(report.precision) << '\n';
  os << "recall," << format_number(report.recall) << '\n';
  os << "f1," << format_number(report.f1) << '\n';
  if (report.task == Task::Multiclass) {
    os << "macro_precision," << format_number(report.macro_precision) << '\n';
    os << "macro_recall," << format_number(report.macro_recall) << '\n';
    os << "macro_f1," << format_number(report.macro_f1) << '\n';
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
      os << "class" << c << "_precision," << format_number(report.per_class[c].precision)
         << '\n';
      os << "class" << c << "_recall," << format_number(report.per_class[c].recall) << '\n';
      os << "class" << c << "_f1," << format_number(report.per_class[c].f1) << '\n';
      os << "class" << c << "_support," << report.per_class[c].support << '\n';
    }
  }
  os << "degenerate," << (report.degenerate ? 1 : 0) << '\n';
  return os.str();
}

ComparisonRow parse_metrics_kv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "key,value") continue;
    const auto pos = line.find(',');
    if (pos == std::string::npos)
      throw IoError("'" + path.string() + "': malformed metrics line '" + line + "'");
    kv[line.substr(0, pos)] = line.substr(pos + 1);
  }

  auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw IoError("'" + path.string() + "' is missing metric '" + key + "'");
    return it->second;
  };
  auto need_num = [&](const std::string& key) {
    double v = 0.0;
    if (!try_parse_double(need(key), v))
      throw IoError("'" + path.string() + "': metric '" + key + "' is not a number");
    return v;
  };

  ComparisonRow row{parse_technique(need("technique")), parse_arch(need("model")), {}};
  row.metrics.task = parse_task(need("task"));
  row.metrics.confusion = ConfusionMatrix(class_count(row.metrics.task));
  row.metrics.accuracy = need_num("accuracy");
  row.metrics.precision = need_num("precision");
  row.metrics.recall = need_num("recall");
  row.metrics.f1 = need_num("f1");
  row.metrics.record_count = static_cast<std::size_t>(need_num("records"));
  return row;
}

}  // namespace wids
