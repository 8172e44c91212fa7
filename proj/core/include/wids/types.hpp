#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wids {

// Number of link-layer features carried by every record, and the side length
// of the square matrices the transforms emit (16 features -> 16x16 images).
inline constexpr std::size_t kFeatureCount = 16;
inline constexpr std::size_t kMatrixSide = 16;
inline constexpr std::size_t kMatrixCells = kMatrixSide * kMatrixSide;
inline constexpr int kMulticlassCount = 8;

// Scaled feature values, ordered exactly like feature_names().
using FeatureVector = std::array<float, kFeatureCount>;

// Input files are malformed in a way that makes every row unusable
// (missing columns, unreadable header, ...).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A specific value or row cannot be interpreted (bad number, unknown label,
// feature outside the domain a transform requires, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem-level failures and corrupt artifact files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Technique : std::uint8_t {
  Cyclic = 0,
  Circulant = 1,
  GrayscaleCirculant = 2,
  Correlation = 3,
  Gaf = 4,
};
inline constexpr std::array<Technique, 5> kAllTechniques = {
    Technique::Cyclic, Technique::Circulant, Technique::GrayscaleCirculant,
    Technique::Correlation, Technique::Gaf};

enum class Arch : std::uint8_t {
  Conv2d2L = 0,  // two conv+pool stages on a 16x16 image
  Conv2d1L = 1,  // one conv+pool stage on a 16x16 image
  Conv1d2L = 2,  // two conv+pool stages on the flattened 256-sample sequence
  Conv1d1L = 3,  // one conv+pool stage on the flattened 256-sample sequence
};
inline constexpr std::array<Arch, 4> kAllArchs = {
    Arch::Conv2d2L, Arch::Conv2d1L, Arch::Conv1d2L, Arch::Conv1d1L};

enum class Task : std::uint8_t {
  Binary = 0,      // normal vs attack, 2 output nodes
  Multiclass = 1,  // 8 classes, 8 output nodes
};

// Canonical lowercase identifiers used on the command line and in artifacts.
std::string_view technique_name(Technique t);
std::string_view arch_name(Arch a);
std::string_view task_name(Task t);
Technique parse_technique(std::string_view name);
Arch parse_arch(std::string_view name);
Task parse_task(std::string_view name);

// Feature columns expected in raw capture CSVs, in matrix order.
const std::array<std::string_view, kFeatureCount>& feature_names();

// Column holding the class label in raw capture CSVs.
inline constexpr std::string_view kLabelColumn = "attack_map";

// Class names as they appear in the label column; index == class id,
// class 0 is benign traffic. Matching is exact but case-insensitive.
const std::array<std::string_view, kMulticlassCount>& class_names();

// Returns the class id for a raw label string, or -1 if unknown.
int label_to_class_id(std::string_view label);

// Number of output nodes for a task (2 for binary, 8 for multiclass).
int class_count(Task task);

// Maps a stored multiclass id onto the target space of a task: identity for
// multiclass, 0/1 (normal/attack) for binary.
int task_target(Task task, int class_id);

}  // namespace wids
