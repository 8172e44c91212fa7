#include "wids/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "wids/csv.hpp"
#include "wids/util.hpp"

namespace wids {

double synthetic_class_mean(int class_id, std::size_t feature) {
  const int k = (5 * class_id + 3 * static_cast<int>(feature)) % 16;
  return -0.8 + 1.6 * k / 15.0;
}

std::vector<LabeledFeatures> make_synthetic(const std::vector<std::size_t>& per_class_counts,
                                            std::uint64_t seed) {
  if (per_class_counts.size() < 2 ||
      per_class_counts.size() > static_cast<std::size_t>(kMulticlassCount))
    throw std::invalid_argument("synthetic corpus needs between 2 and 8 classes");
  for (std::size_t n : per_class_counts)
    if (n == 0) throw std::invalid_argument("every synthetic class needs at least 1 record");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, kSyntheticSigma);

  std::vector<LabeledFeatures> out;
  for (std::size_t c = 0; c < per_class_counts.size(); ++c) {
    for (std::size_t n = 0; n < per_class_counts[c]; ++n) {
      LabeledFeatures r;
      r.class_id = static_cast<std::uint8_t>(c);
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double v = synthetic_class_mean(static_cast<int>(c), f) + noise(rng);
        r.features[f] = static_cast<float>(std::clamp(v, -1.0, 1.0));
      }
      out.push_back(r);
    }
  }
  return out;
}

std::vector<LabeledFeatures> make_synthetic(std::size_t n_per_class, int classes,
                                            std::uint64_t seed) {
  if (classes < 2 || classes > kMulticlassCount)
    throw std::invalid_argument("synthetic corpus needs between 2 and 8 classes");
  return make_synthetic(std::vector<std::size_t>(classes, n_per_class), seed);
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Antenna signal: one to three dBm readings whose maximum encodes the value.
// The layout rotates between a single reading, a comma list and the
// run-together "-55-62" form the capture exports sometimes produce.
std::string render_antsignal(double v, std::size_t row) {
  const int strongest = static_cast<int>(std::lround(-55.0 + 35.0 * v));
  const int weaker = strongest - 7;
  switch (row % 3) {
    case 0: return std::to_string(strongest);
    case 1:  // multi-reading fields are quoted in capture exports
      return '"' + std::to_string(strongest) + "," + std::to_string(weaker) + '"';
    default: return std::to_string(weaker) + std::to_string(strongest);
  }
}

}  // namespace

void write_synthetic_raw_csv(std::span<const LabeledFeatures> records,
                             const std::filesystem::path& path) {
  CsvWriter w(path);

  // Extra columns (frame.number, frame.time_epoch) exercise the projection
  // the ingest stage performs on real capture exports.
  std::vector<std::string> header{"frame.number"};
  for (auto name : feature_names()) header.emplace_back(name);
  header.emplace_back("frame.time_epoch");
  header.emplace_back(std::string(kLabelColumn));
  w.write_row(header);

  std::vector<std::string> row(header.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto& f = r.features;
    row[0] = std::to_string(i + 1);
    row[1] = fmt("%.5f", 500.0 + 400.0 * f[0]);        // frame.len
    row[2] = fmt("%.5f", 24.0 + 12.0 * f[1]);          // radiotap.length
    row[3] = render_antsignal(f[2], i);                // radiotap.dbm_antsignal
    row[4] = fmt("%.5f", 158.0 + 158.0 * f[3]);        // wlan.duration
    row[5] = f[4] >= 0.0f ? "1" : "0";                 // radiotap.present.tsft
    row[6] = fmt("%.5f", 2437.0 + 35.0 * f[5]);        // radiotap.channel.freq
    row[7] = fmt("%.5f", 0.5 + 0.5 * f[6]);            // ...flags.cck
    row[8] = fmt("%.5f", 0.5 + 0.5 * f[7]);            // ...flags.ofdm
    row[9] = fmt("%.5f", 1.0 + 1.0 * f[8]);            // wlan.fc.type
    row[10] = fmt("%.5f", 8.0 + 8.0 * f[9]);           // wlan.fc.subtype
    {
      const long ds = std::clamp<long>(std::lround((f[10] + 1.0) * 1.5), 0, 3);
      char buf[16];
      std::snprintf(buf, sizeof(buf), "0x%08lx", ds);  // wlan.fc.ds
      row[11] = buf;
    }
    row[12] = fmt("%.5f", 0.5 + 0.5 * f[11]);          // wlan.fc.frag
    row[13] = fmt("%.5f", 0.5 + 0.5 * f[12]);          // wlan.fc.retry
    row[14] = fmt("%.5f", 0.5 + 0.5 * f[13]);          // wlan.fc.pwrmgt
    row[15] = fmt("%.5f", 0.5 + 0.5 * f[14]);          // wlan.fc.moredata
    row[16] = fmt("%.5f", 0.5 + 0.5 * f[15]);          // wlan.fc.protected
    row[17] = fmt("%.6f", 1.7e9 + 0.001 * static_cast<double>(i));
    row[18] = std::string(class_names()[r.class_id]);
    w.write_row(row);
  }
  w.close();
}

}  // namespace wids
