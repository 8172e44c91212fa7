#include "wids/ingest.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "wids/types.hpp"

namespace wids {
namespace {

namespace fs = std::filesystem;

RawRecord record_with(std::size_t feature, const std::string& text) {
  RawRecord r;
  r.fields.fill("0");
  r.fields[feature] = text;
  r.line = 42;
  return r;
}

TEST(RawFeatureValue, PlainNumericColumns) {
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(0, "1500"), 0), 1500.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(3, " 314 "), 3), 314.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(8, "2"), 8), 2.0);
  EXPECT_THROW(raw_feature_value(record_with(0, "abc"), 0), DataError);
  EXPECT_THROW(raw_feature_value(record_with(0, ""), 0), DataError);
  EXPECT_THROW(raw_feature_value(record_with(0, "12x"), 0), DataError);
}

TEST(RawFeatureValue, AntennaSignalKeepsTheStrongestReading) {
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(2, "-55"), 2), -55.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(2, "-55,-62"), 2), -55.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(2, "-62,-55"), 2), -55.0);
  // Readings run together without a separator: split where '-' follows a digit.
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(2, "-55-62"), 2), -55.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(2, "-70-60-50"), 2), -50.0);
  EXPECT_THROW(raw_feature_value(record_with(2, "weak"), 2), DataError);
}

TEST(RawFeatureValue, PresenceFlagBecomesZeroOrOne) {
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(4, "1"), 4), 1.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(4, "0"), 4), 0.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(4, "True"), 4), 1.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(4, "false"), 4), 0.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(4, "7"), 4), 1.0);  // any nonzero
  EXPECT_THROW(raw_feature_value(record_with(4, "maybe"), 4), DataError);
}

TEST(RawFeatureValue, DsColumnIsHexadecimal) {
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(10, "0x00000001"), 10), 1.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(10, "0x02"), 10), 2.0);
  EXPECT_DOUBLE_EQ(raw_feature_value(record_with(10, "10"), 10), 16.0);  // no prefix, still hex
  EXPECT_THROW(raw_feature_value(record_with(10, "0xzz"), 10), DataError);
}

TEST(RawFeatureValue, ErrorsNameTheFeatureAndLine) {
  try {
    raw_feature_value(record_with(2, "junk"), 2);
    FAIL() << "parsed junk";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("radiotap.dbm_antsignal"), std::string::npos);
    EXPECT_NE(msg.find("42"), std::string::npos);
  }
}

TEST(ScalerFitter, TracksExtremaAndFlagsConstants) {
  ScalerFitter fit;
  RawRecord a = record_with(0, "100");
  a.fields[1] = "5";
  RawRecord b = record_with(0, "300");
  b.fields[1] = "5";
  fit.add(a);
  fit.add(b);
  const ScalingParams p = fit.finish();
  EXPECT_DOUBLE_EQ(p.min[0], 100.0);
  EXPECT_DOUBLE_EQ(p.max[0], 300.0);
  EXPECT_FALSE(p.constant[0]);
  EXPECT_TRUE(p.constant[1]);  // both rows had 5
}

TEST(ScalerFitter, RefusesToFitOnNothing) {
  ScalerFitter fit;
  EXPECT_THROW(fit.finish(), DataError);
}

TEST(PreprocessRecord, MinMaxScalesIntoSymmetricUnitRange) {
  ScalerFitter fit;
  RawRecord lo = record_with(0, "100");
  RawRecord hi = record_with(0, "300");
  fit.add(lo);
  fit.add(hi);
  const ScalingParams p = fit.finish();

  EXPECT_FLOAT_EQ(preprocess_record(lo, p)[0] + 0.0f, -1.0f);
  EXPECT_FLOAT_EQ(preprocess_record(hi, p)[0], 1.0f);
  RawRecord mid = record_with(0, "200");
  EXPECT_FLOAT_EQ(preprocess_record(mid, p)[0], 0.0f);
  RawRecord quarter = record_with(0, "150");
  EXPECT_FLOAT_EQ(preprocess_record(quarter, p)[0], -0.5f);
}

TEST(PreprocessRecord, ClampsValuesOutsideTheFittedRange) {
  // Scaling parameters come from the training portion; validation/test rows
  // may exceed them and must clamp instead of leaving [-1, 1].
  ScalerFitter fit;
  fit.add(record_with(0, "100"));
  fit.add(record_with(0, "300"));
  const ScalingParams p = fit.finish();
  EXPECT_FLOAT_EQ(preprocess_record(record_with(0, "1000"), p)[0], 1.0f);
  EXPECT_FLOAT_EQ(preprocess_record(record_with(0, "0"), p)[0], -1.0f);
}

TEST(PreprocessRecord, ConstantFeaturesBecomeZero) {
  ScalerFitter fit;
  fit.add(record_with(0, "100"));
  fit.add(record_with(0, "100"));
  const ScalingParams p = fit.finish();
  EXPECT_FLOAT_EQ(preprocess_record(record_with(0, "100"), p)[0], 0.0f);
}

TEST(PreprocessRecord, PresenceFlagBypassesScaling) {
  ScalerFitter fit;
  RawRecord a = record_with(4, "1");
  RawRecord b = record_with(4, "1");
  fit.add(a);
  fit.add(b);
  const ScalingParams p = fit.finish();
  // Even though the flag was constant over training, it keeps its 0/1 value.
  EXPECT_FLOAT_EQ(preprocess_record(record_with(4, "1"), p)[4], 1.0f);
  EXPECT_FLOAT_EQ(preprocess_record(record_with(4, "0"), p)[4], 0.0f);
}

TEST(UndersampleNormals, KeepsEveryAttackAndTheRequestedRatio) {
  std::vector<int> ids;
  for (int i = 0; i < 380; ++i) ids.push_back(0);
  for (int i = 0; i < 10; ++i) ids.push_back(1 + i % 7);
  const auto kept = undersample_normals(ids, 8.0, 1234);
  std::size_t normals = 0, attacks = 0;
  for (std::size_t i : kept) (ids[i] == 0 ? normals : attacks)++;
  EXPECT_EQ(attacks, 10u);
  EXPECT_EQ(normals, 80u);  // round(8 * 10)
  EXPECT_TRUE(std::is_sorted(kept.begin(), kept.end()));
  const std::set<std::size_t> unique(kept.begin(), kept.end());
  EXPECT_EQ(unique.size(), kept.size());
}

TEST(UndersampleNormals, CapsAtTheAvailableNormals) {
  std::vector<int> ids = {0, 0, 0, 1, 1};
  const auto kept = undersample_normals(ids, 10.0, 1);
  EXPECT_EQ(kept.size(), 5u);  // wants 20 normals, only 3 exist
}

TEST(UndersampleNormals, IsSeededAndUnbiased) {
  std::vector<int> ids;
  for (int i = 0; i < 100; ++i) ids.push_back(0);
  ids.push_back(1);
  const auto a = undersample_normals(ids, 10.0, 9);
  const auto b = undersample_normals(ids, 10.0, 9);
  const auto c = undersample_normals(ids, 10.0, 10);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);  // different seed, different sample (virtually surely)

  // Every normal index should be reachable: over many seeds the union of
  // samples covers far more than one draw's worth.
  std::set<std::size_t> seen;
  for (std::uint64_t s = 0; s < 40; ++s)
    for (std::size_t i : undersample_normals(ids, 10.0, s))
      if (ids[i] == 0) seen.insert(i);
  EXPECT_GT(seen.size(), 80u);
}

TEST(UndersampleNormals, RejectsBadInput) {
  std::vector<int> no_attacks = {0, 0, 0};
  EXPECT_THROW(undersample_normals(no_attacks, 8.0, 1), DataError);
  std::vector<int> some = {0, 1};
  EXPECT_THROW(undersample_normals(some, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(undersample_normals(some, -1.0, 1), std::invalid_argument);
}

TEST(StratifiedSplit, SplitsEveryClassCloseToTheTargetFractions) {
  std::vector<int> ids;
  for (int i = 0; i < 1000; ++i) ids.push_back(0);
  for (int i = 0; i < 200; ++i) ids.push_back(1);
  for (int i = 0; i < 57; ++i) ids.push_back(2);
  const SplitIndices s = stratified_split(ids, 77);

  EXPECT_EQ(s.train.size() + s.validation.size() + s.test.size(), ids.size());

  for (int cls = 0; cls < 3; ++cls) {
    const auto count_in = [&](const std::vector<std::size_t>& part) {
      return std::count_if(part.begin(), part.end(),
                           [&](std::size_t i) { return ids[i] == cls; });
    };
    const double total = static_cast<double>(std::count(ids.begin(), ids.end(), cls));
    EXPECT_NEAR(count_in(s.train) / total, 0.49, 0.02) << "class " << cls;
    EXPECT_NEAR(count_in(s.validation) / total, 0.21, 0.02) << "class " << cls;
    EXPECT_NEAR(count_in(s.test) / total, 0.30, 0.02) << "class " << cls;
  }

  // Disjoint and exhaustive.
  std::set<std::size_t> all;
  for (const auto* part : {&s.train, &s.validation, &s.test})
    for (std::size_t i : *part) EXPECT_TRUE(all.insert(i).second);
  EXPECT_EQ(all.size(), ids.size());
}

TEST(StratifiedSplit, ExactCountsForAHundredRecords) {
  std::vector<int> ids(100, 0);
  for (int i = 0; i < 3; ++i) ids.push_back(1);  // minimum viable class
  const SplitIndices s = stratified_split(ids, 5);
  const auto in_class = [&](const std::vector<std::size_t>& part, int cls) {
    return std::count_if(part.begin(), part.end(),
                         [&](std::size_t i) { return ids[i] == cls; });
  };
  EXPECT_EQ(in_class(s.train, 0), 49);
  EXPECT_EQ(in_class(s.validation, 0), 21);
  EXPECT_EQ(in_class(s.test, 0), 30);
  // The three-record class lands one record in each split.
  EXPECT_EQ(in_class(s.train, 1), 1);
  EXPECT_EQ(in_class(s.validation, 1), 1);
  EXPECT_EQ(in_class(s.test, 1), 1);
}

TEST(StratifiedSplit, IsDeterministicPerSeed) {
  std::vector<int> ids(200, 0);
  for (int i = 0; i < 40; ++i) ids.push_back(1);
  const SplitIndices a = stratified_split(ids, 3);
  const SplitIndices b = stratified_split(ids, 3);
  const SplitIndices c = stratified_split(ids, 4);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.validation, b.validation);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(a.train, c.train);
}

TEST(StratifiedSplit, RejectsTinyClasses) {
  std::vector<int> ids = {0, 0, 0, 0, 1, 1};
  EXPECT_THROW(stratified_split(ids, 1), DataError);
}

class SplitFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "wids_ingest_test";
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(SplitFileTest, SplitRoundTripsExactly) {
  DatasetSplit split;
  split.name = "train";
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  for (int i = 0; i < 200; ++i) {
    LabeledFeatures r;
    for (auto& v : r.features) v = dist(rng);
    r.class_id = static_cast<std::uint8_t>(i % 8);
    split.records.push_back(r);
  }
  const fs::path p = dir_ / "train.csv";
  save_split(split, p);
  const DatasetSplit back = load_split(p);
  EXPECT_EQ(back.name, "train");
  ASSERT_EQ(back.records.size(), split.records.size());
  for (std::size_t i = 0; i < split.records.size(); ++i) {
    EXPECT_EQ(back.records[i].class_id, split.records[i].class_id);
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      ASSERT_EQ(back.records[i].features[f], split.records[i].features[f])
          << "row " << i << " feature " << f;  // format_number is round-trip exact
  }
}

TEST_F(SplitFileTest, RowCountMarkerCatchesTruncation) {
  DatasetSplit split;
  split.name = "test";
  for (int i = 0; i < 10; ++i) split.records.push_back({});
  const fs::path p = dir_ / "test.csv";
  save_split(split, p);

  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  in.close();
  std::ofstream out(p, std::ios::trunc);
  for (std::size_t i = 0; i + 2 < lines.size(); ++i) out << lines[i] << "\n";
  out.close();

  EXPECT_THROW(load_split(p), IoError);
}

TEST_F(SplitFileTest, HeaderDriftIsRejected) {
  DatasetSplit split;
  split.name = "x";
  split.records.push_back({});
  const fs::path p = dir_ / "x.csv";
  save_split(split, p);
  std::ifstream in(p);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  const auto pos = text.find("frame.len");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "frame.foo");
  std::ofstream out(p, std::ios::trunc);
  out << text;
  out.close();
  EXPECT_THROW(load_split(p), SchemaError);
}

TEST_F(SplitFileTest, ScalerRoundTrips) {
  ScalingParams p;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    p.min[f] = -static_cast<double>(f) - 0.125;
    p.max[f] = static_cast<double>(f * f) + 0.5;
    p.constant[f] = false;
  }
  p.min[3] = p.max[3] = 7.0;
  p.constant[3] = true;
  const fs::path path = dir_ / "scaler.txt";
  save_scaler(p, path);
  const ScalingParams back = load_scaler(path);
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    EXPECT_DOUBLE_EQ(back.min[f], p.min[f]) << "feature " << f;
    EXPECT_DOUBLE_EQ(back.max[f], p.max[f]) << "feature " << f;
    EXPECT_EQ(back.constant[f], p.constant[f]) << "feature " << f;
  }
}

TEST_F(SplitFileTest, ScalerLoadRejectsMissingFeatures) {
  const fs::path path = dir_ / "scaler.txt";
  std::ofstream out(path);
  out << "frame.len 0 1\n";  // 15 features missing
  out.close();
  EXPECT_THROW(load_scaler(path), IoError);
}

TEST_F(SplitFileTest, RawReaderProjectsColumnsAndChecksLabels) {
  const fs::path p = dir_ / "raw.csv";
  {
    std::ofstream out(p);
    out << "frame.number,";  // extra leading column the reader must skip
    for (auto name : feature_names()) out << name << ",";
    out << "attack_map,extra\n";
    // A healthy row.
    out << "1,";
    for (std::size_t f = 0; f < kFeatureCount; ++f) out << (100 + f) << ",";
    out << "Normal,x\n";
    // Wrong field count.
    out << "2,3\n";
    // Unknown label.
    out << "3,";
    for (std::size_t f = 0; f < kFeatureCount; ++f) out << f << ",";
    out << "Martian,x\n";
    // Another healthy row with a known attack label.
    out << "4,";
    for (std::size_t f = 0; f < kFeatureCount; ++f) out << (200 + f) << ",";
    out << "Kr00k,x\n";
  }

  RawCsvReader lenient(p, /*lenient=*/true);
  RawRecord r;
  ASSERT_TRUE(lenient.next(r));
  EXPECT_EQ(r.class_id, 0);
  EXPECT_EQ(r.fields[0], "100");
  EXPECT_EQ(r.fields[15], "115");
  ASSERT_TRUE(lenient.next(r));
  EXPECT_EQ(r.class_id, 6);  // Kr00k
  EXPECT_EQ(r.fields[0], "200");
  EXPECT_FALSE(lenient.next(r));
  EXPECT_EQ(lenient.skipped_rows(), 2u);

  RawCsvReader strict(p, /*lenient=*/false);
  ASSERT_TRUE(strict.next(r));
  EXPECT_THROW(strict.next(r), DataError);
}

TEST_F(SplitFileTest, RawReaderRequiresEveryFeatureColumn) {
  const fs::path p = dir_ / "missing.csv";
  {
    std::ofstream out(p);
    out << "frame.len,attack_map\n1,Normal\n";
  }
  try {
    RawCsvReader reader(p, false);
    FAIL() << "incomplete header accepted";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("missing column"), std::string::npos);
  }
}

TEST(Labels, MapAsPublishedCaseInsensitively) {
  EXPECT_EQ(label_to_class_id("Normal"), 0);
  EXPECT_EQ(label_to_class_id("normal"), 0);
  EXPECT_EQ(label_to_class_id("De-Authentication"), 1);
  EXPECT_EQ(label_to_class_id("Disassociation"), 2);
  EXPECT_EQ(label_to_class_id("Re-Association"), 3);
  EXPECT_EQ(label_to_class_id("rogue ap"), 4);
  EXPECT_EQ(label_to_class_id("Krack"), 5);
  EXPECT_EQ(label_to_class_id("KR00K"), 6);
  EXPECT_EQ(label_to_class_id("Evil Twin"), 7);
  EXPECT_EQ(label_to_class_id("SQL Injection"), -1);
  EXPECT_EQ(task_target(Task::Binary, 0), 0);
  EXPECT_EQ(task_target(Task::Binary, 6), 1);
  EXPECT_EQ(task_target(Task::Multiclass, 6), 6);
}

}  // namespace
}  // namespace wids
