#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wids {

// Dense row-major tensor of rank 1..3. Small and deliberately simple: the
// networks here are tiny, so clarity beats generality.
template <typename T>
struct TensorT {
  std::vector<std::size_t> shape;
  std::vector<T> data;

  TensorT() = default;
  explicit TensorT(std::vector<std::size_t> dims)
      : shape(std::move(dims)), data(count(shape), T{}) {}

  static std::size_t count(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return dims.empty() ? 0 : n;
  }

  std::size_t size() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }

  T& operator()(std::size_t i) { return data[i]; }
  const T& operator()(std::size_t i) const { return data[i]; }

  T& operator()(std::size_t i, std::size_t j) { return data[i * shape[1] + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data[i * shape[1] + j];
  }

  T& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data[(i * shape[1] + j) * shape[2] + k];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * shape[1] + j) * shape[2] + k];
  }

  void fill(T v) { std::fill(data.begin(), data.end(), v); }

  bool same_shape(const TensorT& other) const { return shape == other.shape; }
};

using Tensor = TensorT<float>;

}  // namespace wids
