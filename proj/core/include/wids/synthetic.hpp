#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wids/ingest.hpp"
#include "wids/types.hpp"

namespace wids {

// Draws labeled feature vectors from per-class Gaussian clusters. Class c's
// mean vector visits the 16-point grid {-0.8 + 1.6 k/15} in a class-specific
// order (k = (5c + 3i) mod 16), so class means are mutually well separated
// relative to the noise (sigma = 0.1); samples are clamped to [-1, 1].
std::vector<LabeledFeatures> make_synthetic(const std::vector<std::size_t>& per_class_counts,
                                            std::uint64_t seed);

// Convenience wrapper: `classes` balanced classes of n records each.
// classes must be 2..8 and n >= 1.
std::vector<LabeledFeatures> make_synthetic(std::size_t n_per_class, int classes,
                                            std::uint64_t seed);

inline constexpr double kSyntheticSigma = 0.1;

// Mean of feature i for class c (exposed for separation checks in tests).
double synthetic_class_mean(int class_id, std::size_t feature);

// Renders synthetic records as a raw capture CSV: plausible physical-unit
// encodings per column (dBm lists for the antenna signal, hex for the DS
// field, a 0/1 presence flag), plus a couple of extra columns the ingest
// stage must ignore. Round-tripping through preprocessing recovers the
// feature geometry closely enough to train on.
void write_synthetic_raw_csv(std::span<const LabeledFeatures> records,
                             const std::filesystem::path& path);

}  // namespace wids
