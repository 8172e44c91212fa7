#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wids/eval.hpp"
#include "wids/ingest.hpp"
#include "wids/model.hpp"
#include "wids/model_io.hpp"
#include "wids/reference_results.hpp"
#include "wids/synthetic.hpp"
#include "wids/train.hpp"
#include "wids/transform.hpp"
#include "wids/types.hpp"
#include "wids/util.hpp"

namespace wids::cli {

namespace fs = std::filesystem;

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string us(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> counts;
  for (const auto part : split_view(text, ',')) {
    long long n = 0;
    if (!try_parse_long(part, n) || n < 0)
      throw DataError("bad count '" + std::string(part) + "' in --counts");
    counts.push_back(static_cast<std::size_t>(n));
  }
  return counts;
}

}  // namespace

std::filesystem::path make_run_dir(
    const std::string& out, const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& config) {
  auto sorted = config;
  std::sort(sorted.begin(), sorted.end());
  std::string canonical;
  for (const auto& [k, v] : sorted) canonical += k + "=" + v + "\n";

  const fs::path dir =
      fs::path(out) / (command + "-" + hex8(fnv1a64(canonical)));
  fs::create_directories(dir);
  write_text_file(dir / "config.txt", canonical);
  return dir;
}

// --- synth -------------------------------------------------------------------

int run_synth(const SynthOptions& opt) {
  std::vector<std::size_t> counts;
  if (!opt.counts.empty())
    counts = parse_counts(opt.counts);
  else
    counts.assign(static_cast<std::size_t>(opt.classes), opt.per_class);

  const auto records = make_synthetic(counts, opt.seed);

  if (opt.format == "raw") {
    write_synthetic_raw_csv(records, opt.out);
  } else if (opt.format == "features") {
    DatasetSplit split;
    split.name = fs::path(opt.out).stem().string();
    split.records = records;
    save_split(split, opt.out);
  } else {
    throw DataError("unknown --format '" + opt.format + "' (expected features or raw)");
  }

  std::cout << "wrote " << records.size() << " synthetic records ("
            << counts.size() << " classes) to " << opt.out << "\n";
  return 0;
}

// --- preprocess --------------------------------------------------------------

int run_preprocess(const PreprocessOptions& opt) {
  if (opt.inputs.empty()) throw DataError("no input files given");

  std::vector<std::pair<std::string, std::string>> config{
      {"command", "preprocess"},
      {"ratio", format_number(opt.ratio)},
      {"seed", std::to_string(opt.seed)},
      {"lenient", opt.lenient ? "1" : "0"},
  };
  for (std::size_t i = 0; i < opt.inputs.size(); ++i)
    config.emplace_back("input" + std::to_string(i), opt.inputs[i]);
  const fs::path dir = make_run_dir(opt.out, "preprocess", config);

  std::vector<RawRecord> records;
  std::size_t skipped = 0;
  for (const auto& input : opt.inputs) {
    RawCsvReader reader(input, opt.lenient);
    RawRecord r;
    while (reader.next(r)) records.push_back(r);
    skipped += reader.skipped_rows();
  }
  if (records.empty()) throw DataError("no usable records in the input files");

  std::vector<int> class_ids;
  class_ids.reserve(records.size());
  for (const auto& r : records) class_ids.push_back(r.class_id);

  std::array<long long, kMulticlassCount> before{};
  for (int c : class_ids) ++before[static_cast<std::size_t>(c)];

  const auto kept = undersample_normals(class_ids, opt.ratio, opt.seed);

  std::vector<RawRecord> balanced;
  std::vector<int> balanced_ids;
  balanced.reserve(kept.size());
  for (std::size_t i : kept) {
    balanced.push_back(std::move(records[i]));
    balanced_ids.push_back(class_ids[i]);
  }

  std::array<long long, kMulticlassCount> after{};
  for (int c : balanced_ids) ++after[static_cast<std::size_t>(c)];

  std::cout << "class balance (before -> after undersampling):\n";
  for (int c = 0; c < kMulticlassCount; ++c) {
    if (before[c] == 0 && after[c] == 0) continue;
    std::cout << "  class " << c << " (" << class_names()[c] << "): " << before[c]
              << " -> " << after[c] << "\n";
  }
  if (skipped) std::cout << "  skipped " << skipped << " malformed rows\n";

  const SplitIndices idx = stratified_split(balanced_ids, opt.seed);

  // The scaler sees only training rows so the test split stays unseen.
  ScalerFitter fitter;
  for (std::size_t i : idx.train) fitter.add(balanced[i]);
  const ScalingParams scaling = fitter.finish();

  auto build_split = [&](const std::vector<std::size_t>& members, const char* name) {
    DatasetSplit split;
    split.name = name;
    split.records.reserve(members.size());
    for (std::size_t i : members) {
      LabeledFeatures r;
      r.features = preprocess_record(balanced[i], scaling);
      r.class_id = static_cast<std::uint8_t>(balanced_ids[i]);
      split.records.push_back(r);
    }
    return split;
  };

  const DatasetSplit train = build_split(idx.train, "train");
  const DatasetSplit validation = build_split(idx.validation, "validation");
  const DatasetSplit test = build_split(idx.test, "test");

  save_split(train, dir / "train.csv");
  save_split(validation, dir / "validation.csv");
  save_split(test, dir / "test.csv");
  save_scaler(scaling, dir / "scaler.txt");

  std::cout << "splits: train=" << train.records.size()
            << " validation=" << validation.records.size()
            << " test=" << test.records.size() << "\n";
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

// --- transform-preview ---------------------------------------------------------

int run_transform_preview(const TransformPreviewOptions& opt) {
  const Technique technique = parse_technique(opt.technique);

  FeatureVector f{};
  if (!opt.vector_csv.empty()) {
    const auto parts = split_view(opt.vector_csv, ',');
    if (parts.size() != kFeatureCount)
      throw DataError("--vector needs exactly 16 comma-separated values, got " +
                      std::to_string(parts.size()));
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      double v = 0.0;
      if (!try_parse_double(parts[i], v))
        throw DataError("bad value '" + std::string(parts[i]) + "' in --vector");
      f[i] = static_cast<float>(v);
    }
  } else if (!opt.input.empty()) {
    const DatasetSplit split = load_split(opt.input);
    if (opt.index >= split.records.size())
      throw DataError("--index " + std::to_string(opt.index) + " is out of range (" +
                      std::to_string(split.records.size()) + " records)");
    f = split.records[opt.index].features;
  } else {
    throw DataError("give either --vector or --input/--index");
  }

  const Matrix16 m = apply_transform(technique, f);
  std::cout << "technique: " << technique_name(technique) << "\n";
  for (std::size_t i = 0; i < kMatrixSide; ++i) {
    for (std::size_t j = 0; j < kMatrixSide; ++j) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%8.4f", static_cast<double>(m.at(i, j)));
      std::cout << buf;
    }
    std::cout << "\n";
  }
  if (!opt.pgm.empty()) {
    write_pgm(m, opt.pgm);
    std::cout << "wrote " << opt.pgm << "\n";
  }
  return 0;
}

// --- train ---------------------------------------------------------------------

int run_train(const TrainOptions& opt) {
  fs::path train_file = opt.train_file;
  fs::path validation_file = opt.validation_file;
  if (!opt.data_dir.empty()) {
    if (train_file.empty()) train_file = fs::path(opt.data_dir) / "train.csv";
    if (validation_file.empty()) validation_file = fs::path(opt.data_dir) / "validation.csv";
  }
  if (train_file.empty() || validation_file.empty())
    throw DataError("give --data, or both --train and --validation");

  const Technique technique = parse_technique(opt.technique);
  const Arch arch = parse_arch(opt.arch);
  const Task task = parse_task(opt.task);

  const std::vector<std::pair<std::string, std::string>> config{
      {"command", "train"},
      {"train", train_file.string()},
      {"validation", validation_file.string()},
      {"technique", std::string(technique_name(technique))},
      {"arch", std::string(arch_name(arch))},
      {"task", std::string(task_name(task))},
      {"epochs", std::to_string(opt.epochs)},
      {"patience", std::to_string(opt.patience)},
      {"batch_size", std::to_string(opt.batch_size)},
      {"learning_rate", format_number(opt.learning_rate)},
      {"seed", std::to_string(opt.seed)},
      {"threads", std::to_string(opt.threads)},
  };
  const fs::path dir = make_run_dir(opt.out, "train", config);

  const DatasetSplit train = load_split(train_file);
  const DatasetSplit validation = load_split(validation_file);

  Network net(arch, task, derive_seed(opt.seed, 0x1017));
  std::cout << net.summary();

  TrainConfig cfg;
  cfg.technique = technique;
  cfg.max_epochs = opt.epochs;
  cfg.patience = opt.patience;
  cfg.batch_size = opt.batch_size;
  cfg.learning_rate = opt.learning_rate;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;

  const TrainReport report = train_network(net, train, validation, cfg);

  save_model(net, technique, dir / "model.bin");
  write_epoch_csv(report, dir / "epochs.csv");

  std::ostringstream summary;
  summary << net.summary();
  summary << "technique: " << technique_name(technique) << "\n";
  summary << "train records: " << train.records.size()
          << ", validation records: " << validation.records.size() << "\n";
  summary << "epochs run: " << report.epochs.size() << " (best epoch "
          << report.best_epoch << (report.early_stopped ? ", stopped early" : "")
          << ")\n";
  if (!report.epochs.empty()) {
    const auto& best = report.epochs[static_cast<std::size_t>(report.best_epoch - 1)];
    summary << "best validation: loss " << format_number(best.val_loss) << ", accuracy "
            << pct(100.0 * best.val_accuracy) << "%\n";
  }
  summary << "wall time: " << format_number(report.wall_seconds) << " s\n";
  write_text_file(dir / "summary.txt", summary.str());

  const auto& last = report.epochs.back();
  std::cout << "epochs run: " << report.epochs.size() << " (best " << report.best_epoch
            << (report.early_stopped ? ", early stop" : "") << ")\n";
  std::cout << "final train acc " << pct(100.0 * last.train_accuracy) << "%, val acc "
            << pct(100.0 * last.val_accuracy) << "%\n";
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

// --- eval ----------------------------------------------------------------------

int run_eval(const EvalOptions& opt) {
  LoadedModel loaded = load_model(opt.model);
  const ModelMeta meta = loaded.meta;

  // Refuse silently mismatched use: explicit expectations must agree with
  // what the model file says it is.
  if (!opt.expect_technique.empty() &&
      parse_technique(opt.expect_technique) != meta.technique)
    throw DataError("model was trained with technique '" +
                    std::string(technique_name(meta.technique)) + "', not '" +
                    opt.expect_technique + "'");
  if (!opt.expect_arch.empty() && parse_arch(opt.expect_arch) != meta.arch)
    throw DataError("model architecture is '" + std::string(arch_name(meta.arch)) +
                    "', not '" + opt.expect_arch + "'");
  if (!opt.expect_task.empty() && parse_task(opt.expect_task) != meta.task)
    throw DataError("model task is '" + std::string(task_name(meta.task)) + "', not '" +
                    opt.expect_task + "'");

  const DatasetSplit test = load_split(opt.data);

  const std::vector<std::pair<std::string, std::string>> config{
      {"command", "eval"},
      {"model", opt.model},
      {"data", opt.data},
      {"threads", std::to_string(opt.threads)},
  };
  const fs::path dir = make_run_dir(opt.out.empty() ? "." : opt.out, "eval", config);

  const auto t0 = std::chrono::steady_clock::now();
  const MetricsReport report = evaluate_split(loaded.net, meta.technique, test, opt.threads);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double per_record_us = 1e6 * seconds / static_cast<double>(test.records.size());

  std::ostringstream out;
  out << "model: " << technique_name(meta.technique) << " " << arch_name(meta.arch) << " "
      << task_name(meta.task) << " (" << loaded.net.parameter_count() << " parameters)\n";
  out << "records: " << report.record_count << "\n";
  out << "accuracy: " << pct(report.accuracy) << "%\n";
  out << "precision: " << pct(report.precision) << "%  recall: " << pct(report.recall)
      << "%  f1: " << pct(report.f1) << "%\n";
  if (meta.task == Task::Multiclass) {
    out << "macro    p/r/f1: " << pct(report.macro_precision) << "% "
        << pct(report.macro_recall) << "% " << pct(report.macro_f1) << "%\n";
    out << "weighted p/r/f1: " << pct(report.weighted_precision) << "% "
        << pct(report.weighted_recall) << "% " << pct(report.weighted_f1) << "%\n";
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
      const auto& m = report.per_class[c];
      out << "  class " << c << " (" << class_names()[c] << "): p " << pct(m.precision)
          << "% r " << pct(m.recall) << "% f1 " << pct(m.f1) << "% support " << m.support
          << (m.degenerate ? " [degenerate]" : "") << "\n";
    }
  }
  if (report.degenerate)
    out << "note: a zero-denominator metric was reported as 0 (degenerate)\n";
  out << "evaluation pass: " << format_number(seconds) << " s total, "
      << us(per_record_us) << " us/record (transform + forward)\n";

  if (opt.against_reference) {
    const ReferenceRow* ref = find_reference(meta.task, meta.technique, meta.arch);
    if (ref == nullptr) {
      out << "no published reference for this combination\n";
    } else {
      out << "vs published results (measured / published / delta):\n";
      auto line = [&](const char* name, double mine, double theirs) {
        out << "  " << name << ": " << pct(mine) << " / " << pct(theirs) << " / "
            << (mine >= theirs ? "+" : "") << pct(mine - theirs) << "\n";
      };
      line("accuracy ", report.accuracy, ref->test_accuracy);
      line("precision", report.precision, ref->precision);
      line("recall   ", report.recall, ref->recall);
      line("f1       ", report.f1, ref->f1);
      const double ref_us = reference_latency_us(meta.arch);
      if (ref_us > 0.0)
        out << "  latency  : " << us(per_record_us) << " us/record vs " << us(ref_us)
            << " us/record published\n";
    }
  }

  std::cout << out.str();

  write_text_file(dir / "summary.txt", out.str());
  write_text_file(dir / "metrics.csv", metrics_to_kv(report, meta.technique, meta.arch));
  write_text_file(dir / "confusion.csv", report.confusion.to_csv());
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

// --- bench ---------------------------------------------------------------------

int run_bench(const BenchOptions& opt) {
  LoadedModel loaded = load_model(opt.model);
  const ModelMeta meta = loaded.meta;

  std::vector<FeatureVector> features;
  if (!opt.data.empty()) {
    const DatasetSplit split = load_split(opt.data);
    features.reserve(split.records.size());
    for (const auto& r : split.records) features.push_back(r.features);
  } else {
    if (opt.synthetic_records == 0)
      throw DataError("give --data or --synthetic-records");
    const std::size_t per_class = (opt.synthetic_records + kMulticlassCount - 1) /
                                  static_cast<std::size_t>(kMulticlassCount);
    const auto records = make_synthetic(per_class, kMulticlassCount, opt.seed);
    features.reserve(opt.synthetic_records);
    for (std::size_t i = 0; i < opt.synthetic_records && i < records.size(); ++i)
      features.push_back(records[i].features);
  }

  const LatencyReport report =
      benchmark_latency(loaded.net, meta.technique, features, opt.repetitions);

  std::ostringstream out;
  out << "model: " << technique_name(meta.technique) << " " << arch_name(meta.arch) << " "
      << task_name(meta.task) << ", " << report.record_count << " records x "
      << report.repetitions << " repetitions, single thread\n";
  auto line = [&](const char* name, const LatencySample& s) {
    out << "  " << name << ": mean " << us(s.mean_us) << " us, median " << us(s.median_us)
        << " us, p99 " << us(s.p99_us) << " us (" << format_number(s.total_ms)
        << " ms total)\n";
  };
  line("transform + forward", report.end_to_end);
  line("forward only       ", report.forward_only);
  const double ref_us = reference_latency_us(meta.arch);
  if (ref_us > 0.0)
    out << "  published end-to-end reference for " << arch_name(meta.arch) << ": "
        << us(ref_us) << " us/record\n";
  std::cout << out.str();

  if (!opt.out.empty()) {
    const std::vector<std::pair<std::string, std::string>> config{
        {"command", "bench"},
        {"model", opt.model},
        {"data", opt.data.empty() ? "synthetic:" + std::to_string(opt.synthetic_records)
                                  : opt.data},
        {"repetitions", std::to_string(opt.repetitions)},
        {"seed", std::to_string(opt.seed)},
    };
    const fs::path dir = make_run_dir(opt.out, "bench", config);
    std::ostringstream csv;
    csv << "stage,mean_us,median_us,p99_us,total_ms\n";
    csv << "end_to_end," << format_number(report.end_to_end.mean_us) << ','
        << format_number(report.end_to_end.median_us) << ','
        << format_number(report.end_to_end.p99_us) << ','
        << format_number(report.end_to_end.total_ms) << '\n';
    csv << "forward_only," << format_number(report.forward_only.mean_us) << ','
        << format_number(report.forward_only.median_us) << ','
        << format_number(report.forward_only.p99_us) << ','
        << format_number(report.forward_only.total_ms) << '\n';
    write_text_file(dir / "latency.csv", csv.str());
    write_text_file(dir / "summary.txt", out.str());
    std::cout << "artifacts in " << dir.string() << "\n";
  }
  return 0;
}

// --- report --------------------------------------------------------------------

int run_report(const ReportOptions& opt) {
  if (opt.metrics_files.empty()) throw DataError("no metrics files given");
  std::vector<ComparisonRow> rows;
  rows.reserve(opt.metrics_files.size());
  for (const auto& file : opt.metrics_files) rows.push_back(parse_metrics_kv(file));

  const std::string table = comparison_table(rows);
  std::cout << table;

  if (!opt.out.empty()) {
    std::vector<std::pair<std::string, std::string>> config{{"command", "report"}};
    for (std::size_t i = 0; i < opt.metrics_files.size(); ++i)
      config.emplace_back("metrics" + std::to_string(i), opt.metrics_files[i]);
    const fs::path dir = make_run_dir(opt.out, "report", config);
    write_text_file(dir / "comparison.csv", comparison_csv(rows));
    write_text_file(dir / "comparison.txt", table);
    std::cout << "artifacts in " << dir.string() << "\n";
  }
  return 0;
}

}  // namespace wids::cli
