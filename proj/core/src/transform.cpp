#include "wids/transform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "wids/util.hpp"

namespace wids {

Matrix16 transform_cyclic(const FeatureVector& f) {
  Matrix16 m;
  for (std::size_t i = 0; i < kMatrixSide; ++i)
    for (std::size_t j = 0; j < kMatrixSide; ++j)
      m.at(i, j) = f[(i + j) % kFeatureCount];
  return m;
}

Matrix16 transform_circulant(const FeatureVector& f) {
  Matrix16 m;
  for (std::size_t i = 0; i < kMatrixSide; ++i)
    for (std::size_t j = 0; j < kMatrixSide; ++j)
      m.at(i, j) = f[(i + kFeatureCount - j) % kFeatureCount];
  return m;
}

int quantize_gray(float f) {
  // Round half away from zero, matching common image libraries.
  const double g = std::round((static_cast<double>(f) + 1.0) * 255.0 / 2.0);
  if (g < 0.0) return 0;
  if (g > 255.0) return 255;
  return static_cast<int>(g);
}

Matrix16 transform_grayscale_circulant(const FeatureVector& f) {
  FeatureVector rescaled;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const int g = quantize_gray(f[i]);
    rescaled[i] = static_cast<float>(2.0 * g / 255.0 - 1.0);
  }
  return transform_circulant(rescaled);
}

Matrix16 transform_correlation(const FeatureVector& f) {
  const Matrix16 base = transform_cyclic(f);

  // Column statistics in double precision; the output is float.
  std::array<double, kMatrixSide> mean{};
  for (std::size_t j = 0; j < kMatrixSide; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < kMatrixSide; ++i) s += base.at(i, j);
    mean[j] = s / kMatrixSide;
  }

  std::array<double, kMatrixSide> sq_dev{};  // sum of squared deviations
  for (std::size_t j = 0; j < kMatrixSide; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < kMatrixSide; ++i) {
      const double d = base.at(i, j) - mean[j];
      s += d * d;
    }
    sq_dev[j] = s;
  }

  Matrix16 m;
  for (std::size_t a = 0; a < kMatrixSide; ++a) {
    m.at(a, a) = 1.0f;
    for (std::size_t b = a + 1; b < kMatrixSide; ++b) {
      double rho = 0.0;
      const double denom = std::sqrt(sq_dev[a]) * std::sqrt(sq_dev[b]);
      if (denom > 0.0) {
        double cov = 0.0;
        for (std::size_t i = 0; i < kMatrixSide; ++i)
          cov += (base.at(i, a) - mean[a]) * (base.at(i, b) - mean[b]);
        rho = cov / denom;
      }
      m.at(a, b) = static_cast<float>(rho);
      m.at(b, a) = static_cast<float>(rho);
    }
  }
  return m;
}

Matrix16 transform_gaf(const FeatureVector& f) {
  std::array<double, kFeatureCount> v{};
  std::array<double, kFeatureCount> s{};  // sin(arccos(v)) = sqrt(1 - v^2)
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    double x = f[i];
    if (x < -1.0 || x > 1.0) {
      if (x < -1.0 - kGafClampTolerance || x > 1.0 + kGafClampTolerance)
        throw DataError("angular field input " + format_number(f[i]) + " at feature " +
                        std::string(feature_names()[i]) + " lies outside [-1, 1]");
      x = x < 0.0 ? -1.0 : 1.0;
    }
    v[i] = x;
    s[i] = std::sqrt(1.0 - x * x);
  }

  // cos(phi_i + phi_j) expanded; avoids calling arccos/cos per cell.
  Matrix16 m;
  for (std::size_t i = 0; i < kMatrixSide; ++i)
    for (std::size_t j = i; j < kMatrixSide; ++j) {
      const float y = static_cast<float>(v[i] * v[j] - s[i] * s[j]);
      m.at(i, j) = y;
      m.at(j, i) = y;
    }
  return m;
}

Matrix16 apply_transform(Technique technique, const FeatureVector& f) {
  switch (technique) {
    case Technique::Cyclic: return transform_cyclic(f);
    case Technique::Circulant: return transform_circulant(f);
    case Technique::GrayscaleCirculant: return transform_grayscale_circulant(f);
    case Technique::Correlation: return transform_correlation(f);
    case Technique::Gaf: return transform_gaf(f);
  }
  throw DataError("unknown technique id");
}

std::vector<Matrix16> transform_batch(Technique technique,
                                      std::span<const FeatureVector> features,
                                      int threads) {
  std::vector<Matrix16> out(features.size());
  if (threads < 1) threads = 1;
  const std::size_t n = features.size();
  if (threads == 1 || n < 2 * static_cast<std::size_t>(threads)) {
    for (std::size_t i = 0; i < n; ++i) out[i] = apply_transform(technique, features[i]);
    return out;
  }

  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i)
          out[i] = apply_transform(technique, features[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_pgm(const Matrix16& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "P5\n" << kMatrixSide << ' ' << kMatrixSide << "\n255\n";
  for (float v : m.cells) {
    const int g = quantize_gray(std::clamp(v, -1.0f, 1.0f));
    out.put(static_cast<char>(static_cast<unsigned char>(g)));
  }
  out.flush();
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

}  // namespace wids
