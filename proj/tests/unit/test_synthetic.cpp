#include "wids/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "support/oracles.hpp"
#include "wids/ingest.hpp"

namespace wids {
namespace {

namespace fs = std::filesystem;

TEST(Synthetic, CountsLabelsAndRange) {
  const auto data = make_synthetic(std::vector<std::size_t>{3, 2}, 1);
  ASSERT_EQ(data.size(), 5u);
  EXPECT_EQ(data[0].class_id, 0);
  EXPECT_EQ(data[2].class_id, 0);
  EXPECT_EQ(data[3].class_id, 1);
  EXPECT_EQ(data[4].class_id, 1);
  for (const auto& r : data)
    for (float v : r.features) {
      EXPECT_GE(v, -1.0f);
      EXPECT_LE(v, 1.0f);
    }
}

TEST(Synthetic, ConvenienceOverloadBalancesClasses) {
  const auto data = make_synthetic(10, 8, 2);
  ASSERT_EQ(data.size(), 80u);
  std::array<int, 8> counts{};
  for (const auto& r : data) counts[r.class_id]++;
  for (int c : counts) EXPECT_EQ(c, 10);
}

TEST(Synthetic, RejectsDegenerateShapes) {
  EXPECT_THROW(make_synthetic(std::vector<std::size_t>{5}, 1), std::invalid_argument);
  EXPECT_THROW(make_synthetic(std::vector<std::size_t>(9, 5), 1), std::invalid_argument);
  EXPECT_THROW(make_synthetic(std::vector<std::size_t>{5, 0}, 1), std::invalid_argument);
  EXPECT_THROW(make_synthetic(10, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_synthetic(10, 9, 1), std::invalid_argument);
}

TEST(Synthetic, SeedIsReproducible) {
  const auto a = make_synthetic(20, 4, 33);
  const auto b = make_synthetic(20, 4, 33);
  const auto c = make_synthetic(20, 4, 34);
  ASSERT_EQ(a.size(), b.size());
  bool all_equal = true, any_diff_c = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].features != b[i].features) all_equal = false;
    if (a[i].features != c[i].features) any_diff_c = true;
  }
  EXPECT_TRUE(all_equal);
  EXPECT_TRUE(any_diff_c);
}

TEST(Synthetic, ClassMeansAreWellSeparated) {
  // Noise has sigma 0.1 (vector norm ~0.4); class centers must sit much
  // further apart than that for the classification smoke tests to be fair.
  double min_dist = 1e9;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      double d2 = 0.0;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double d = synthetic_class_mean(a, f) - synthetic_class_mean(b, f);
        d2 += d * d;
      }
      min_dist = std::min(min_dist, std::sqrt(d2));
    }
  EXPECT_GT(min_dist, 1.5);
}

TEST(Synthetic, SamplesClusterAroundTheirClassMean) {
  const auto data = make_synthetic(500, 3, 7);
  std::array<std::array<double, kFeatureCount>, 3> sums{};
  std::array<int, 3> counts{};
  for (const auto& r : data) {
    counts[r.class_id]++;
    for (std::size_t f = 0; f < kFeatureCount; ++f) sums[r.class_id][f] += r.features[f];
  }
  for (int c = 0; c < 3; ++c)
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      EXPECT_NEAR(sums[c][f] / counts[c], synthetic_class_mean(c, f), 0.03)
          << "class " << c << " feature " << f;
}

TEST(Synthetic, RawCsvRoundTripPreservesGeometry) {
  const auto data = make_synthetic(120, 4, 11);
  const fs::path p = fs::temp_directory_path() / "wids_synthetic_roundtrip.csv";
  write_synthetic_raw_csv(data, p);

  // Strict reading doubles as a structural check: every rendered row must
  // parse with the exact column count despite commas inside the signal field.
  RawCsvReader reader(p, /*lenient=*/false);
  std::vector<RawRecord> raw;
  ScalerFitter fitter;
  RawRecord r;
  while (reader.next(r)) {
    raw.push_back(r);
    fitter.add(r);
  }
  fs::remove(p);
  ASSERT_EQ(raw.size(), data.size());
  const ScalingParams scaling = fitter.finish();

  // Per feature, the recovered scaled column must be an (affine) image of the
  // original: Pearson correlation close to 1. The presence flag is thresholded
  // and the DS field is quantized to four levels, so they get special checks.
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (f == 4) continue;
    std::vector<double> orig, rec;
    for (std::size_t i = 0; i < data.size(); ++i) {
      orig.push_back(data[i].features[f]);
      rec.push_back(preprocess_record(raw[i], scaling)[f]);
    }
    const double corr = test::pearson_reference(orig, rec);
    EXPECT_GT(corr, f == 10 ? 0.85 : 0.99) << "feature " << f;
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const float flag = preprocess_record(raw[i], scaling)[4];
    EXPECT_EQ(flag, data[i].features[4] >= 0.0f ? 1.0f : 0.0f) << "row " << i;
    EXPECT_EQ(raw[i].class_id, static_cast<int>(data[i].class_id)) << "row " << i;
  }
}

TEST(Synthetic, RawCsvQuotesMultiReadingSignalFields) {
  const auto data = make_synthetic(std::vector<std::size_t>{2, 2}, 3);
  const fs::path p = fs::temp_directory_path() / "wids_synthetic_quoted.csv";
  write_synthetic_raw_csv(data, p);
  std::ifstream in(p);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  fs::remove(p);
  EXPECT_NE(text.find('"'), std::string::npos);  // the comma-list form is quoted
  EXPECT_NE(text.find("frame.time_epoch"), std::string::npos);
  EXPECT_NE(text.find("attack_map"), std::string::npos);
}

}  // namespace
}  // namespace wids
