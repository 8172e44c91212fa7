#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wids::cli {

// Options are collected by main() from the command line; each run_* function
// is pure CLI glue around the core library and returns a process exit code.

struct SynthOptions {
  std::string out;
  int classes = 8;
  std::size_t per_class = 1000;
  std::string counts;  // "7600,200" overrides classes/per_class
  std::uint64_t seed = 7;
  std::string format = "features";  // or "raw"
};
int run_synth(const SynthOptions& opt);

struct PreprocessOptions {
  std::vector<std::string> inputs;
  std::string out = ".";
  double ratio = 8.0;  // normals kept per attack record
  std::uint64_t seed = 7;
  bool lenient = false;
};
int run_preprocess(const PreprocessOptions& opt);

struct TransformPreviewOptions {
  std::string technique = "gaf";
  std::string vector_csv;  // 16 comma-separated values
  std::string input;       // alternatively: a split file ...
  std::size_t index = 0;   // ... and a row index into it
  std::string pgm;         // optional PGM output path
};
int run_transform_preview(const TransformPreviewOptions& opt);

struct TrainOptions {
  std::string train_file;
  std::string validation_file;
  std::string data_dir;  // convenience: expects train.csv / validation.csv
  std::string out = ".";
  std::string technique = "gaf";
  std::string arch = "2d-2l";
  std::string task = "binary";
  int epochs = 100;
  int patience = 3;
  int batch_size = 256;
  double learning_rate = 1e-3;
  std::uint64_t seed = 7;
  int threads = 1;
};
int run_train(const TrainOptions& opt);

struct EvalOptions {
  std::string model;
  std::string data;
  std::string out;
  // Optional cross-checks against the model's embedded metadata.
  std::string expect_technique;
  std::string expect_arch;
  std::string expect_task;
  bool against_reference = false;
  int threads = 1;
};
int run_eval(const EvalOptions& opt);

struct BenchOptions {
  std::string model;
  std::string data;              // split file; or use synthetic_records
  std::size_t synthetic_records = 0;
  std::uint64_t seed = 7;
  int repetitions = 3;
  std::string out;
};
int run_bench(const BenchOptions& opt);

struct ReportOptions {
  std::vector<std::string> metrics_files;
  std::string out;
};
int run_report(const ReportOptions& opt);

// Creates <out>/<command>-<hash8>/ where the hash digests the sorted
// key=value configuration, and records the configuration inside it.
std::filesystem::path make_run_dir(
    const std::string& out, const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& config);

}  // namespace wids::cli
