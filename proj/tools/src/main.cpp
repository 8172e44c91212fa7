#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace wids::cli;

int dispatch(CLI::App& app, const SynthOptions& synth, const PreprocessOptions& pre,
             const TransformPreviewOptions& preview, const TrainOptions& train,
             const EvalOptions& eval, const BenchOptions& bench,
             const ReportOptions& report) {
  if (app.got_subcommand("synth")) return run_synth(synth);
  if (app.got_subcommand("preprocess")) return run_preprocess(pre);
  if (app.got_subcommand("transform-preview")) return run_transform_preview(preview);
  if (app.got_subcommand("train")) return run_train(train);
  if (app.got_subcommand("eval")) return run_eval(eval);
  if (app.got_subcommand("bench")) return run_bench(bench);
  if (app.got_subcommand("report")) return run_report(report);
  std::cerr << app.help();
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Wi-Fi traffic intrusion detection: turns link-layer feature records "
      "into 16x16 matrix images and classifies them with small CNNs"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "read options from an INI file (sections per subcommand)");

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "generate a labeled synthetic corpus");
  s->add_option("--out", synth.out, "output CSV path")->required()->envname("WIDS_OUT");
  s->add_option("--classes", synth.classes, "number of balanced classes (2-8)");
  s->add_option("--per-class", synth.per_class, "records per class");
  s->add_option("--counts", synth.counts,
                "per-class record counts, e.g. 7600,200 (overrides --classes/--per-class)");
  s->add_option("--seed", synth.seed, "random seed");
  s->add_option("--format", synth.format, "features (split schema) or raw (capture schema)")
      ->check(CLI::IsMember({"features", "raw"}));

  PreprocessOptions pre;
  auto* p = app.add_subcommand(
      "preprocess", "scale, balance and split raw capture CSVs into train/validation/test");
  p->add_option("--input", pre.inputs, "raw capture CSV (repeatable)")
      ->required()
      ->envname("WIDS_INPUT");
  p->add_option("--out", pre.out, "directory for the run directory")->envname("WIDS_OUT");
  p->add_option("--ratio", pre.ratio, "normal records kept per attack record");
  p->add_option("--seed", pre.seed, "random seed");
  p->add_flag("--lenient", pre.lenient, "skip malformed rows instead of failing");

  TransformPreviewOptions preview;
  auto* v = app.add_subcommand("transform-preview",
                               "print (or render) the matrix for one feature vector");
  v->add_option("--technique", preview.technique,
                "cyclic, circulant, grayscale-circulant, correlation or gaf");
  v->add_option("--vector", preview.vector_csv, "16 comma-separated feature values");
  v->add_option("--input", preview.input, "split CSV to take the vector from");
  v->add_option("--index", preview.index, "record index into --input");
  v->add_option("--pgm", preview.pgm, "also write an 8-bit PGM image here");

  TrainOptions train;
  auto* t = app.add_subcommand("train", "train one model on preprocessed splits");
  t->add_option("--data", train.data_dir, "directory holding train.csv and validation.csv")
      ->envname("WIDS_DATA");
  t->add_option("--train", train.train_file, "training split CSV");
  t->add_option("--validation", train.validation_file, "validation split CSV");
  t->add_option("--out", train.out, "directory for the run directory")->envname("WIDS_OUT");
  t->add_option("--technique", train.technique, "matrix transformation technique");
  t->add_option("--arch", train.arch, "2d-2l, 2d-1l, 1d-2l or 1d-1l");
  t->add_option("--task", train.task, "binary or multiclass");
  t->add_option("--epochs", train.epochs, "maximum epochs");
  t->add_option("--patience", train.patience, "early-stopping patience (epochs)");
  t->add_option("--batch-size", train.batch_size, "mini-batch size");
  t->add_option("--lr", train.learning_rate, "learning rate");
  t->add_option("--seed", train.seed, "random seed");
  t->add_option("--threads", train.threads, "threads for the transform precompute");

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "evaluate a trained model on a test split");
  e->add_option("--model", eval.model, "model file")->required()->envname("WIDS_MODEL");
  e->add_option("--data", eval.data, "test split CSV")->required()->envname("WIDS_DATA");
  e->add_option("--out", eval.out, "directory for the run directory")->envname("WIDS_OUT");
  e->add_option("--technique", eval.expect_technique,
                "fail unless the model was trained with this technique");
  e->add_option("--arch", eval.expect_arch, "fail unless the model has this architecture");
  e->add_option("--task", eval.expect_task, "fail unless the model targets this task");
  e->add_flag("--against-reference", eval.against_reference,
              "print published reference metrics alongside the measured ones");
  e->add_option("--threads", eval.threads, "threads for the transform stage");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "measure per-record inference latency");
  b->add_option("--model", bench.model, "model file")->required()->envname("WIDS_MODEL");
  b->add_option("--data", bench.data, "split CSV with at least 1,000 records")
      ->envname("WIDS_DATA");
  b->add_option("--synthetic-records", bench.synthetic_records,
                "benchmark on this many synthetic records instead of --data");
  b->add_option("--seed", bench.seed, "seed for synthetic records");
  b->add_option("--repetitions", bench.repetitions, "timed passes over the data");
  b->add_option("--out", bench.out, "directory for the run directory")->envname("WIDS_OUT");

  ReportOptions report;
  auto* r = app.add_subcommand("report", "tabulate evaluation metrics side by side");
  r->add_option("--metrics", report.metrics_files, "metrics.csv from eval (repeatable)")
      ->required();
  r->add_option("--out", report.out, "directory for the run directory")->envname("WIDS_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    return dispatch(app, synth, pre, preview, train, eval, bench, report);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
