#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "wids/types.hpp"

namespace wids {

// A 16x16 single-channel image produced from one feature vector.
struct Matrix16 {
  std::array<float, kMatrixCells> cells{};

  float& at(std::size_t row, std::size_t col) { return cells[row * kMatrixSide + col]; }
  float at(std::size_t row, std::size_t col) const { return cells[row * kMatrixSide + col]; }
};

// Row r is the feature vector rotated left by r: M[i][j] = f[(i + j) mod 16].
Matrix16 transform_cyclic(const FeatureVector& f);

// Row r is the feature vector rotated right by r: M[i][j] = f[(i - j) mod 16].
Matrix16 transform_circulant(const FeatureVector& f);

// Circulant layout of the features after an 8-bit grayscale round trip:
// each value is quantized to g = round((f + 1) * 255 / 2) (ties away from
// zero), then mapped back to 2g/255 - 1. Quantization error is at most 1/255.
Matrix16 transform_grayscale_circulant(const FeatureVector& f);

// Pearson correlation between the columns of the cyclic matrix. The diagonal
// is exactly 1; pairs involving a zero-variance column are set to 0.
Matrix16 transform_correlation(const FeatureVector& f);

// Gramian angular field: with phi_i = arccos(f_i), M[i][j] = cos(phi_i +
// phi_j). Inputs must lie in [-1, 1]; values within kGafClampTolerance
// outside are clamped, anything further out raises DataError.
Matrix16 transform_gaf(const FeatureVector& f);

inline constexpr double kGafClampTolerance = 1e-9;

Matrix16 apply_transform(Technique technique, const FeatureVector& f);

// Transforms a batch, optionally splitting the work across threads.
// Output order always matches input order regardless of thread count.
std::vector<Matrix16> transform_batch(Technique technique,
                                      std::span<const FeatureVector> features,
                                      int threads = 1);

// 8-bit grayscale quantization used by the grayscale technique, exposed for
// preview rendering: round((f + 1) * 255 / 2) with ties away from zero,
// clamped to [0, 255].
int quantize_gray(float f);

// Writes the matrix as a binary 8-bit PGM image, mapping [-1, 1] to [0, 255].
void write_pgm(const Matrix16& m, const std::filesystem::path& path);

}  // namespace wids
