#pragma once

#include <filesystem>

#include "wids/model.hpp"
#include "wids/types.hpp"

namespace wids {

// Metadata embedded in every model file so evaluation can refuse mismatched
// use (wrong transform, wrong task) instead of silently mis-scoring.
struct ModelMeta {
  Arch arch;
  Task task;
  Technique technique;
};

struct LoadedModel {
  ModelMeta meta;
  Network net;
};

// Binary container: magic, format version, metadata ids, then every
// parameter tensor in declaration order (rank, dims, little-endian float32
// values), and a trailing checksum over everything after the magic.
void save_model(Network& net, Technique technique, const std::filesystem::path& path);

// Rebuilds the architecture, verifies the stored geometry against it, and
// loads the weights. Truncation, bad magic, geometry drift and checksum
// mismatches all raise IoError.
LoadedModel load_model(const std::filesystem::path& path);

}  // namespace wids
