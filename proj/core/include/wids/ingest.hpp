#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wids/csv.hpp"
#include "wids/types.hpp"

namespace wids {

// One raw capture row: the 16 feature columns (still textual) plus its label,
// projected out of a possibly much wider CSV.
struct RawRecord {
  std::array<std::string, kFeatureCount> fields;
  int class_id = -1;
  std::size_t line = 0;  // source line, for error messages
};

// Per-feature scaling parameters fitted on the training portion only.
// Features whose min equals max are flagged constant and scale to 0. The
// presence flag feature (index 4) is mapped to {0, 1} and never rescaled.
struct ScalingParams {
  std::array<double, kFeatureCount> min{};
  std::array<double, kFeatureCount> max{};
  std::array<bool, kFeatureCount> constant{};
};

struct LabeledFeatures {
  FeatureVector features{};
  std::uint8_t class_id = 0;
};

struct DatasetSplit {
  std::string name;  // "train", "validation" or "test"
  std::vector<LabeledFeatures> records;
};

struct SplitIndices {
  std::vector<std::size_t> train, validation, test;
};

// Reads raw capture rows from one CSV. The header must contain every feature
// column and the label column; extra columns are ignored. In strict mode any
// bad row (wrong field count, unknown label) raises DataError with file and
// line; in lenient mode such rows are skipped and counted.
class RawCsvReader {
 public:
  RawCsvReader(const std::filesystem::path& path, bool lenient);

  bool next(RawRecord& record);
  std::size_t skipped_rows() const { return skipped_; }
  const std::string& path() const { return reader_.path(); }

 private:
  CsvReader reader_;
  bool lenient_;
  std::array<std::size_t, kFeatureCount> feature_col_{};
  std::size_t label_col_ = 0;
  std::size_t width_ = 0;
  std::size_t skipped_ = 0;
  std::vector<std::string> row_;
};

// Numeric value of one raw feature field before scaling. Handles the three
// special encodings: the antenna signal column may hold several readings
// ("-55,-62" or "-55-62"), of which the strongest (maximum) is kept; the
// frame-control DS column is hexadecimal; the TSFT presence column becomes
// exactly 0 or 1. Throws DataError on unparseable input.
double raw_feature_value(const RawRecord& record, std::size_t feature);

// Accumulates per-feature minima/maxima over raw records (streaming).
class ScalerFitter {
 public:
  void add(const RawRecord& record);
  ScalingParams finish() const;  // throws DataError if no records were added

 private:
  std::array<double, kFeatureCount> min_{};
  std::array<double, kFeatureCount> max_{};
  std::size_t count_ = 0;
};

// Applies the special-column handling and min-max scaling to [-1, 1]:
// x' = 2 (x - min) / (max - min) - 1, clamped; constant features become 0;
// the presence flag keeps its {0, 1} value.
FeatureVector preprocess_record(const RawRecord& record, const ScalingParams& scaling);

// Balances classes by keeping every attack record and a seeded sample of
// min(round(ratio * attacks), normals) normal records, drawn without
// replacement. Returns the kept indices in ascending order.
std::vector<std::size_t> undersample_normals(const std::vector<int>& class_ids,
                                             double normal_to_attack_ratio,
                                             std::uint64_t seed);

// Stratified 70/30 split into train-pool and test, then 70/30 of the pool
// into train and validation, applied per class with largest-remainder
// rounding so small classes keep representation. Requires >= 3 records per
// class. Deterministic for a given seed.
SplitIndices stratified_split(const std::vector<int>& class_ids, std::uint64_t seed);

inline constexpr double kTrainPoolFraction = 0.7;  // of all records, per class
inline constexpr double kTrainFraction = 0.7;      // of the pool, per class

// Split files: the 16 scaled feature columns (by name) plus an integer class
// label, preceded by a marker comment carrying the row count.
void save_split(const DatasetSplit& split, const std::filesystem::path& path);
DatasetSplit load_split(const std::filesystem::path& path);

// Scaler sidecar: one "name min max" line per feature, plain text.
void save_scaler(const ScalingParams& scaling, const std::filesystem::path& path);
ScalingParams load_scaler(const std::filesystem::path& path);

}  // namespace wids
