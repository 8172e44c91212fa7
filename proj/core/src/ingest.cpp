#include "wids/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "wids/util.hpp"

namespace wids {

namespace {

// Feature indices with non-plain encodings.
constexpr std::size_t kAntSignal = 2;   // radiotap.dbm_antsignal
constexpr std::size_t kTsftFlag = 4;    // radiotap.present.tsft
constexpr std::size_t kDsField = 10;    // wlan.fc.ds (hexadecimal)

[[noreturn]] void bad_value(const RawRecord& r, std::size_t feature,
                            const std::string& detail) {
  throw DataError("line " + std::to_string(r.line) + ": feature '" +
                  std::string(feature_names()[feature]) + "': " + detail);
}

// The antenna column can pack several dBm readings into one field, either
// comma-separated (when the field survived quoting) or run together like
// "-55-62". Split on commas and on '-' signs that directly follow a digit.
std::vector<std::string> split_antsignal(std::string_view field) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const char c = field[i];
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    if (c == '-' && !cur.empty() && std::isdigit(static_cast<unsigned char>(cur.back()))) {
      parts.push_back(cur);
      cur.clear();
    }
    cur.push_back(c);
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

double raw_feature_value(const RawRecord& record, std::size_t feature) {
  const std::string& field = record.fields[feature];
  const std::string_view trimmed = trim(field);
  if (trimmed.empty()) bad_value(record, feature, "empty field");

  switch (feature) {
    case kAntSignal: {
      double best = -std::numeric_limits<double>::infinity();
      bool any = false;
      for (const std::string& part : split_antsignal(trimmed)) {
        const std::string_view p = trim(part);
        if (p.empty()) continue;
        double v = 0.0;
        if (!try_parse_double(p, v))
          bad_value(record, feature, "unreadable signal reading '" + std::string(p) + "'");
        best = std::max(best, v);
        any = true;
      }
      if (!any) bad_value(record, feature, "no signal readings in '" + field + "'");
      return best;
    }
    case kTsftFlag: {
      double v = 0.0;
      if (try_parse_double(trimmed, v)) return v != 0.0 ? 1.0 : 0.0;
      const std::string l = [&] {
        std::string s(trimmed);
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
      }();
      if (l == "true") return 1.0;
      if (l == "false") return 0.0;
      bad_value(record, feature, "expected a presence flag, got '" + field + "'");
    }
    case kDsField: {
      std::string_view digits = trimmed;
      if (digits.size() > 2 && (digits.substr(0, 2) == "0x" || digits.substr(0, 2) == "0X"))
        digits = digits.substr(2);
      long long v = 0;
      if (!try_parse_long(digits, v, 16))
        bad_value(record, feature, "expected a hexadecimal value, got '" + field + "'");
      return static_cast<double>(v);
    }
    default: {
      double v = 0.0;
      if (!try_parse_double(trimmed, v))
        bad_value(record, feature, "expected a number, got '" + field + "'");
      return v;
    }
  }
}

RawCsvReader::RawCsvReader(const std::filesystem::path& path, bool lenient)
    : reader_(path), lenient_(lenient) {
  const auto& header = reader_.header();
  width_ = header.size();

  auto find_col = [&](std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name) return i;
    throw SchemaError("'" + reader_.path() + "': header is missing column '" +
                      std::string(name) + "'");
  };

  for (std::size_t f = 0; f < kFeatureCount; ++f)
    feature_col_[f] = find_col(feature_names()[f]);
  label_col_ = find_col(kLabelColumn);
}

bool RawCsvReader::next(RawRecord& record) {
  while (reader_.next(row_)) {
    if (row_.size() != width_) {
      if (lenient_) {
        ++skipped_;
        continue;
      }
      throw DataError("'" + reader_.path() + "' line " +
                      std::to_string(reader_.line_number()) + ": expected " +
                      std::to_string(width_) + " fields, found " +
                      std::to_string(row_.size()));
    }
    const int cls = label_to_class_id(trim(row_[label_col_]));
    if (cls < 0) {
      if (lenient_) {
        ++skipped_;
        continue;
      }
      throw DataError("'" + reader_.path() + "' line " +
                      std::to_string(reader_.line_number()) + ": unknown label '" +
                      row_[label_col_] + "'");
    }
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      record.fields[f] = row_[feature_col_[f]];
    record.class_id = cls;
    record.line = reader_.line_number();
    return true;
  }
  return false;
}

void ScalerFitter::add(const RawRecord& record) {
  std::array<double, kFeatureCount> vals{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) vals[f] = raw_feature_value(record, f);
  if (count_ == 0) {
    min_ = vals;
    max_ = vals;
  } else {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      min_[f] = std::min(min_[f], vals[f]);
      max_[f] = std::max(max_[f], vals[f]);
    }
  }
  ++count_;
}

ScalingParams ScalerFitter::finish() const {
  if (count_ == 0) throw DataError("cannot fit a scaler on zero records");
  ScalingParams p;
  p.min = min_;
  p.max = max_;
  for (std::size_t f = 0; f < kFeatureCount; ++f) p.constant[f] = (min_[f] == max_[f]);
  return p;
}

FeatureVector preprocess_record(const RawRecord& record, const ScalingParams& scaling) {
  FeatureVector out{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const double v = raw_feature_value(record, f);
    if (f == kTsftFlag) {
      // Already exactly 0 or 1; kept as-is by design.
      out[f] = static_cast<float>(v);
      continue;
    }
    if (scaling.constant[f]) {
      out[f] = 0.0f;
      continue;
    }
    const double scaled =
        2.0 * (v - scaling.min[f]) / (scaling.max[f] - scaling.min[f]) - 1.0;
    out[f] = static_cast<float>(std::clamp(scaled, -1.0, 1.0));
  }
  return out;
}

std::vector<std::size_t> undersample_normals(const std::vector<int>& class_ids,
                                             double normal_to_attack_ratio,
                                             std::uint64_t seed) {
  if (!(normal_to_attack_ratio > 0.0))
    throw std::invalid_argument("normal:attack ratio must be positive");

  std::vector<std::size_t> normals;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < class_ids.size(); ++i) {
    if (class_ids[i] == 0)
      normals.push_back(i);
    else
      kept.push_back(i);
  }
  if (kept.empty()) throw DataError("cannot balance a corpus with no attack records");

  const double want = std::round(normal_to_attack_ratio * static_cast<double>(kept.size()));
  const std::size_t take =
      std::min(normals.size(), static_cast<std::size_t>(std::max(0.0, want)));

  // Seeded partial Fisher-Yates: the first `take` entries are a uniform
  // sample without replacement.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> dist(i, normals.size() - 1);
    std::swap(normals[i], normals[dist(rng)]);
  }
  kept.insert(kept.end(), normals.begin(), normals.begin() + take);
  std::sort(kept.begin(), kept.end());
  return kept;
}

namespace {

// Allocates class_total across the given fractions with floor + largest
// remainder, so the counts sum exactly to class_total.
std::vector<std::size_t> apportion(std::size_t total, const std::vector<double>& fractions) {
  std::vector<std::size_t> counts(fractions.size());
  std::vector<double> remainders(fractions.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double exact = fractions[i] * static_cast<double>(total);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - std::floor(exact);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(fractions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) counts[order[i % order.size()]]++;
  return counts;
}

}  // namespace

SplitIndices stratified_split(const std::vector<int>& class_ids, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < class_ids.size(); ++i) {
    const int c = class_ids[i];
    if (c < 0) throw DataError("negative class id at record " + std::to_string(i));
    if (static_cast<std::size_t>(c) >= by_class.size()) by_class.resize(c + 1);
    by_class[c].push_back(i);
  }

  SplitIndices out;
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 3)
      throw DataError("class " + std::to_string(c) + " has only " +
                      std::to_string(members.size()) +
                      " records; at least 3 are needed to populate every split");
    std::shuffle(members.begin(), members.end(), rng);

    // Final fractions: train = 0.7*0.7, validation = 0.7*0.3, test = 0.3.
    const auto counts = apportion(
        members.size(), {kTrainPoolFraction * kTrainFraction,
                         kTrainPoolFraction * (1.0 - kTrainFraction),
                         1.0 - kTrainPoolFraction});
    std::size_t pos = 0;
    for (std::size_t i = 0; i < counts[0]; ++i) out.train.push_back(members[pos++]);
    for (std::size_t i = 0; i < counts[1]; ++i) out.validation.push_back(members[pos++]);
    for (std::size_t i = 0; i < counts[2]; ++i) out.test.push_back(members[pos++]);
  }

  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

void save_split(const DatasetSplit& split, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.write_comment("wids-split name=" + split.name +
                  " rows=" + std::to_string(split.records.size()));
  std::vector<std::string> header;
  for (auto name : feature_names()) header.emplace_back(name);
  header.emplace_back("label");
  w.write_row(header);

  std::vector<std::string> row(kFeatureCount + 1);
  for (const auto& r : split.records) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) row[f] = format_number(r.features[f]);
    row[kFeatureCount] = std::to_string(static_cast<int>(r.class_id));
    w.write_row(row);
  }
  w.close();
}

DatasetSplit load_split(const std::filesystem::path& path) {
  CsvReader reader(path);
  const auto& header = reader.header();
  if (header.size() != kFeatureCount + 1)
    throw SchemaError("'" + reader.path() + "': expected " +
                      std::to_string(kFeatureCount + 1) + " columns, found " +
                      std::to_string(header.size()));
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (trim(header[f]) != feature_names()[f])
      throw SchemaError("'" + reader.path() + "': column " + std::to_string(f + 1) +
                        " should be '" + std::string(feature_names()[f]) + "', found '" +
                        header[f] + "'");
  }
  if (trim(header[kFeatureCount]) != "label")
    throw SchemaError("'" + reader.path() + "': last column should be 'label'");

  DatasetSplit split;
  split.name = std::filesystem::path(path).stem().string();
  std::size_t declared_rows = 0;
  bool has_marker = false;
  for (const auto& comment : reader.leading_comments()) {
    const auto pos = comment.find("rows=");
    if (comment.find("wids-split") != std::string::npos && pos != std::string::npos) {
      std::string_view count_text = std::string_view(comment).substr(pos + 5);
      count_text = count_text.substr(0, count_text.find(' '));
      long long n = 0;
      if (try_parse_long(trim(count_text), n) && n >= 0) {
        declared_rows = static_cast<std::size_t>(n);
        has_marker = true;
      }
      const auto name_pos = comment.find("name=");
      if (name_pos != std::string::npos) {
        const auto rest = std::string_view(comment).substr(name_pos + 5);
        split.name = std::string(trim(rest.substr(0, rest.find(' '))));
      }
    }
  }

  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != kFeatureCount + 1)
      throw DataError("'" + reader.path() + "' line " +
                      std::to_string(reader.line_number()) + ": expected " +
                      std::to_string(kFeatureCount + 1) + " fields, found " +
                      std::to_string(row.size()));
    LabeledFeatures r;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      double v = 0.0;
      if (!try_parse_double(row[f], v))
        throw DataError("'" + reader.path() + "' line " +
                        std::to_string(reader.line_number()) + ": bad number '" +
                        row[f] + "'");
      r.features[f] = static_cast<float>(v);
    }
    long long cls = 0;
    if (!try_parse_long(row[kFeatureCount], cls) || cls < 0 || cls >= kMulticlassCount)
      throw DataError("'" + reader.path() + "' line " +
                      std::to_string(reader.line_number()) + ": bad label '" +
                      row[kFeatureCount] + "'");
    r.class_id = static_cast<std::uint8_t>(cls);
    split.records.push_back(r);
  }

  if (has_marker && split.records.size() != declared_rows)
    throw IoError("'" + reader.path() + "' declares " + std::to_string(declared_rows) +
                  " rows but contains " + std::to_string(split.records.size()) +
                  " (truncated or edited?)");
  return split;
}

void save_scaler(const ScalingParams& scaling, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "# wids-scaler fitted_on=train\n";
  for (std::size_t f = 0; f < kFeatureCount; ++f)
    out << feature_names()[f] << ' ' << format_number(scaling.min[f]) << ' '
        << format_number(scaling.max[f]) << '\n';
  out.flush();
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

ScalingParams load_scaler(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  ScalingParams p;
  std::array<bool, kFeatureCount> seen{};
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto sp1 = t.rfind(' ');
    const auto sp0 = sp1 == std::string_view::npos ? sp1 : t.substr(0, sp1).rfind(' ');
    if (sp1 == std::string_view::npos || sp0 == std::string_view::npos)
      throw IoError("'" + path.string() + "': malformed scaler line '" + line + "'");
    const std::string_view name = trim(t.substr(0, sp0));
    double lo = 0.0, hi = 0.0;
    if (!try_parse_double(t.substr(sp0 + 1, sp1 - sp0 - 1), lo) ||
        !try_parse_double(t.substr(sp1 + 1), hi))
      throw IoError("'" + path.string() + "': malformed scaler line '" + line + "'");
    bool matched = false;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (name == feature_names()[f]) {
        p.min[f] = lo;
        p.max[f] = hi;
        p.constant[f] = (lo == hi);
        seen[f] = true;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw IoError("'" + path.string() + "': unknown feature '" + std::string(name) + "'");
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f)
    if (!seen[f])
      throw IoError("'" + path.string() + "' is missing feature '" +
                    std::string(feature_names()[f]) + "'");
  return p;
}

}  // namespace wids
