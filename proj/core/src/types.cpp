#include "wids/types.hpp"

#include <algorithm>
#include <cctype>

namespace wids {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view technique_name(Technique t) {
  switch (t) {
    case Technique::Cyclic: return "cyclic";
    case Technique::Circulant: return "circulant";
    case Technique::GrayscaleCirculant: return "grayscale-circulant";
    case Technique::Correlation: return "correlation";
    case Technique::Gaf: return "gaf";
  }
  throw DataError("unknown technique id");
}

std::string_view arch_name(Arch a) {
  switch (a) {
    case Arch::Conv2d2L: return "2d-2l";
    case Arch::Conv2d1L: return "2d-1l";
    case Arch::Conv1d2L: return "1d-2l";
    case Arch::Conv1d1L: return "1d-1l";
  }
  throw DataError("unknown architecture id");
}

std::string_view task_name(Task t) {
  switch (t) {
    case Task::Binary: return "binary";
    case Task::Multiclass: return "multiclass";
  }
  throw DataError("unknown task id");
}

Technique parse_technique(std::string_view name) {
  const std::string n = to_lower(name);
  for (Technique t : kAllTechniques) {
    if (n == technique_name(t)) return t;
  }
  throw DataError("unknown technique '" + std::string(name) +
                  "' (expected cyclic, circulant, grayscale-circulant, correlation or gaf)");
}

Arch parse_arch(std::string_view name) {
  const std::string n = to_lower(name);
  for (Arch a : kAllArchs) {
    if (n == arch_name(a)) return a;
  }
  throw DataError("unknown architecture '" + std::string(name) +
                  "' (expected 2d-2l, 2d-1l, 1d-2l or 1d-1l)");
}

Task parse_task(std::string_view name) {
  const std::string n = to_lower(name);
  if (n == "binary") return Task::Binary;
  if (n == "multiclass") return Task::Multiclass;
  throw DataError("unknown task '" + std::string(name) + "' (expected binary or multiclass)");
}

const std::array<std::string_view, kFeatureCount>& feature_names() {
  static const std::array<std::string_view, kFeatureCount> names = {
      "frame.len",
      "radiotap.length",
      "radiotap.dbm_antsignal",
      "wlan.duration",
      "radiotap.present.tsft",
      "radiotap.channel.freq",
      "radiotap.channel.flags.cck",
      "radiotap.channel.flags.ofdm",
      "wlan.fc.type",
      "wlan.fc.subtype",
      "wlan.fc.ds",
      "wlan.fc.frag",
      "wlan.fc.retry",
      "wlan.fc.pwrmgt",
      "wlan.fc.moredata",
      "wlan.fc.protected",
  };
  return names;
}

const std::array<std::string_view, kMulticlassCount>& class_names() {
  static const std::array<std::string_view, kMulticlassCount> names = {
      "Normal",
      "De-Authentication",
      "Disassociation",
      "Re-Association",
      "Rogue AP",
      "Krack",
      "Kr00k",
      "Evil Twin",
  };
  return names;
}

int label_to_class_id(std::string_view label) {
  const std::string l = to_lower(label);
  const auto& names = class_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (l == to_lower(names[i])) return static_cast<int>(i);
  }
  return -1;
}

int class_count(Task task) {
  return task == Task::Binary ? 2 : kMulticlassCount;
}

int task_target(Task task, int class_id) {
  if (task == Task::Multiclass) return class_id;
  return class_id == 0 ? 0 : 1;
}

}  // namespace wids
