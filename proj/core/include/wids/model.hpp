#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "wids/nn.hpp"
#include "wids/transform.hpp"
#include "wids/types.hpp"

namespace wids {

// Hyperparameters shared by all four architectures.
inline constexpr std::size_t kConvFilters = 16;
inline constexpr std::size_t kKernelSize = 3;
inline constexpr std::size_t kHiddenUnits = 32;
inline constexpr double kConvDropoutRate = 0.2;
inline constexpr double kDenseDropoutRate = 0.5;

// Expected input shape for an architecture: {16,16,1} for the 2-D models,
// {256,1} for the 1-D models (the image flattened row-major).
std::vector<std::size_t> network_input_shape(Arch arch);

// Lays a 16x16 matrix out as a network input tensor for the given family.
template <typename T>
TensorT<T> image_to_input(const Matrix16& m, Arch arch) {
  TensorT<T> x(network_input_shape(arch));
  for (std::size_t i = 0; i < kMatrixCells; ++i)
    x.data[i] = static_cast<T>(m.cells[i]);
  return x;
}

// A classifier assembled from the layer stack of one of the four supported
// architectures: conv(+pool) stage(s), dropout, flatten, a 32-unit hidden
// dense layer, dropout, and a task-sized output layer whose activation
// (sigmoid or softmax) is fused into the loss during training.
template <typename T>
class NetworkT {
 public:
  NetworkT(Arch arch, Task task, std::uint64_t init_seed)
      : arch_(arch), task_(task) {
    std::mt19937 rng(static_cast<std::uint32_t>(init_seed ^ (init_seed >> 32)));
    const std::size_t classes = static_cast<std::size_t>(class_count(task));
    const bool two_d = (arch == Arch::Conv2d2L || arch == Arch::Conv2d1L);
    const bool two_stage = (arch == Arch::Conv2d2L || arch == Arch::Conv1d2L);

    std::size_t h = two_d ? kMatrixSide : kMatrixCells;
    std::size_t w = two_d ? kMatrixSide : 1;  // unused for 1-D
    std::size_t ch = 1;

    const int stages = two_stage ? 2 : 1;
    for (int s = 0; s < stages; ++s) {
      if (two_d) {
        add(std::make_unique<Conv2dT<T>>(ch, kConvFilters, kKernelSize, rng),
            describe("conv2d", h, w, kConvFilters));
        ch = kConvFilters;
        add(std::make_unique<ReluT<T>>(), describe("relu", h, w, ch));
        h /= 2;
        w /= 2;
        add(std::make_unique<AvgPool2dT<T>>(), describe("avgpool2d", h, w, ch));
      } else {
        add(std::make_unique<Conv1dT<T>>(ch, kConvFilters, kKernelSize, rng),
            describe("conv1d", h, 0, kConvFilters));
        ch = kConvFilters;
        add(std::make_unique<ReluT<T>>(), describe("relu", h, 0, ch));
        h /= 2;
        add(std::make_unique<AvgPool1dT<T>>(), describe("avgpool1d", h, 0, ch));
      }
    }

    const std::size_t flat = two_d ? h * w * ch : h * ch;
    add(std::make_unique<DropoutT<T>>(kConvDropoutRate),
        two_d ? describe("dropout", h, w, ch) : describe("dropout", h, 0, ch));
    add(std::make_unique<FlattenT<T>>(), describe("flatten", flat, 0, 0));
    add(std::make_unique<DenseT<T>>(flat, kHiddenUnits, rng),
        describe("dense", kHiddenUnits, 0, 0));
    add(std::make_unique<ReluT<T>>(), describe("relu", kHiddenUnits, 0, 0));
    add(std::make_unique<DropoutT<T>>(kDenseDropoutRate),
        describe("dropout", kHiddenUnits, 0, 0));
    add(std::make_unique<DenseT<T>>(kHiddenUnits, classes, rng),
        describe("dense", classes, 0, 0));
  }

  Arch arch() const { return arch_; }
  Task task() const { return task_; }
  LossKind loss_kind() const {
    return task_ == Task::Binary ? LossKind::BinaryCrossEntropy
                                 : LossKind::SparseCategoricalCrossEntropy;
  }

  TensorT<T> forward_logits(const TensorT<T>& x, RunMode mode, std::mt19937& rng) {
    TensorT<T> y = x;
    for (auto& layer : layers_) y = layer->forward(y, mode, rng);
    return y;
  }

  // Inference-mode forward; dropout is inactive so no RNG is consumed.
  TensorT<T> forward_logits(const TensorT<T>& x) {
    static thread_local std::mt19937 unused_rng;
    return forward_logits(x, RunMode::Infer, unused_rng);
  }

  void backward_from_logits(const TensorT<T>& grad_logits) {
    TensorT<T> g = grad_logits;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it)
      g = (*it)->backward(g);
  }

  // Head activation applied to logits: per-node sigmoid for the binary task,
  // softmax for multiclass.
  TensorT<T> probabilities(const TensorT<T>& x) {
    const TensorT<T> z = forward_logits(x);
    return task_ == Task::Binary ? sigmoid(z) : softmax(z);
  }

  int predict(const TensorT<T>& x) {
    const TensorT<T> z = forward_logits(x);
    std::size_t best = 0;
    for (std::size_t i = 1; i < z.size(); ++i)
      if (z.data[i] > z.data[best]) best = i;
    return static_cast<int>(best);
  }

  std::vector<TensorT<T>*> params() {
    std::vector<TensorT<T>*> out;
    for (auto& layer : layers_)
      for (auto* p : layer->params()) out.push_back(p);
    return out;
  }

  std::vector<TensorT<T>*> grads() {
    std::vector<TensorT<T>*> out;
    for (auto& layer : layers_)
      for (auto* g : layer->grads()) out.push_back(g);
    return out;
  }

  void zero_grads() {
    for (auto* g : grads()) g->fill(T{0});
  }

  std::size_t parameter_count() {
    std::size_t n = 0;
    for (auto* p : params()) n += p->size();
    return n;
  }

  std::vector<LayerT<T>*> layers() {
    std::vector<LayerT<T>*> out;
    for (auto& l : layers_) out.push_back(l.get());
    return out;
  }

  std::string summary() {
    std::ostringstream os;
    os << "architecture " << arch_name(arch_) << ", task " << task_name(task_)
       << ", input ";
    const auto in = network_input_shape(arch_);
    for (std::size_t i = 0; i < in.size(); ++i) os << (i ? "x" : "") << in[i];
    os << "\n";
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      std::size_t p = 0;
      for (auto* t : layers_[i]->params()) p += t->size();
      os << "  " << descriptions_[i];
      if (p) os << "  params=" << p;
      os << "\n";
    }
    os << "total parameters: " << parameter_count() << "\n";
    return os.str();
  }

 private:
  void add(std::unique_ptr<LayerT<T>> layer, std::string desc) {
    layers_.push_back(std::move(layer));
    descriptions_.push_back(std::move(desc));
  }

  static std::string describe(const char* kind, std::size_t a, std::size_t b,
                              std::size_t c) {
    std::ostringstream os;
    os << kind << " -> " << a;
    if (b) os << "x" << b;
    if (c) os << "x" << c;
    return os.str();
  }

  Arch arch_;
  Task task_;
  std::vector<std::unique_ptr<LayerT<T>>> layers_;
  std::vector<std::string> descriptions_;
};

using Network = NetworkT<float>;

}  // namespace wids
