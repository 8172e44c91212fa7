#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "wids/tensor.hpp"
#include "wids/types.hpp"

namespace wids {

enum class RunMode { Train, Infer };

// Base class for all layers. forward() caches whatever backward() needs;
// backward() accumulates into the parameter gradients (callers zero them per
// batch) and returns the gradient with respect to the layer input.
template <typename T>
class LayerT {
 public:
  virtual ~LayerT() = default;

  virtual TensorT<T> forward(const TensorT<T>& x, RunMode mode, std::mt19937& rng) = 0;
  virtual TensorT<T> backward(const TensorT<T>& grad_out) = 0;

  virtual std::vector<TensorT<T>*> params() { return {}; }
  virtual std::vector<TensorT<T>*> grads() { return {}; }
  virtual std::string name() const = 0;

 protected:
  void require_forward_ran(bool has_cache) const {
    if (!has_cache)
      throw std::logic_error(name() + ": backward called before forward");
  }
};

namespace detail {

template <typename T>
void glorot_uniform(TensorT<T>& w, std::size_t fan_in, std::size_t fan_out,
                    std::mt19937& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (auto& v : w.data) v = static_cast<T>(dist(rng));
}

}  // namespace detail

// 2-D convolution over HWC tensors with stride 1 and zero padding that keeps
// the spatial size ("same"). Weights are stored [kh][kw][cin][cout] so the
// innermost loop runs over output channels contiguously.
template <typename T>
class Conv2dT : public LayerT<T> {
 public:
  Conv2dT(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
          std::mt19937& rng)
      : cin_(in_channels),
        cout_(out_channels),
        k_(kernel),
        w_({kernel, kernel, in_channels, out_channels}),
        gw_({kernel, kernel, in_channels, out_channels}),
        b_({out_channels}),
        gb_({out_channels}) {
    detail::glorot_uniform(w_, k_ * k_ * cin_, k_ * k_ * cout_, rng);
  }

  std::string name() const override { return "conv2d"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    if (x.rank() != 3 || x.shape[2] != cin_)
      throw DataError("conv2d: expected HxWx" + std::to_string(cin_) + " input");
    x_ = x;
    const std::size_t h = x.shape[0], w = x.shape[1];
    TensorT<T> y({h, w, cout_});
    const std::size_t pad = k_ / 2;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < w; ++j) {
        T* acc = &y(i, j, 0);
        for (std::size_t c = 0; c < cout_; ++c) acc[c] = b_(c);
        for (std::size_t di = 0; di < k_; ++di) {
          const std::size_t ii = i + di;
          if (ii < pad || ii - pad >= h) continue;
          for (std::size_t dj = 0; dj < k_; ++dj) {
            const std::size_t jj = j + dj;
            if (jj < pad || jj - pad >= w) continue;
            const T* xp = &x(ii - pad, jj - pad, 0);
            const T* wp = &w_.data[idx(di, dj, 0, 0)];
            for (std::size_t ci = 0; ci < cin_; ++ci) {
              const T xv = xp[ci];
              const T* wr = wp + ci * cout_;
              for (std::size_t c = 0; c < cout_; ++c) acc[c] += xv * wr[c];
            }
          }
        }
      }
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(x_.size() > 0);
    const std::size_t h = x_.shape[0], w = x_.shape[1];
    if (gy.rank() != 3 || gy.shape[0] != h || gy.shape[1] != w || gy.shape[2] != cout_)
      throw DataError("conv2d: gradient shape does not match forward output");
    TensorT<T> gx({h, w, cin_});
    const std::size_t pad = k_ / 2;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < w; ++j) {
        const T* gyp = &gy(i, j, 0);
        for (std::size_t c = 0; c < cout_; ++c) gb_(c) += gyp[c];
        for (std::size_t di = 0; di < k_; ++di) {
          const std::size_t ii = i + di;
          if (ii < pad || ii - pad >= h) continue;
          for (std::size_t dj = 0; dj < k_; ++dj) {
            const std::size_t jj = j + dj;
            if (jj < pad || jj - pad >= w) continue;
            const T* xp = &x_(ii - pad, jj - pad, 0);
            T* gxp = &gx(ii - pad, jj - pad, 0);
            T* gwp = &gw_.data[idx(di, dj, 0, 0)];
            const T* wp = &w_.data[idx(di, dj, 0, 0)];
            for (std::size_t ci = 0; ci < cin_; ++ci) {
              const T xv = xp[ci];
              T gxv = 0;
              const T* wr = wp + ci * cout_;
              T* gwr = gwp + ci * cout_;
              for (std::size_t c = 0; c < cout_; ++c) {
                gxv += gyp[c] * wr[c];
                gwr[c] += xv * gyp[c];
              }
              gxp[ci] += gxv;
            }
          }
        }
      }
    }
    return gx;
  }

  std::vector<TensorT<T>*> params() override { return {&w_, &b_}; }
  std::vector<TensorT<T>*> grads() override { return {&gw_, &gb_}; }

  std::size_t param_count() const { return w_.size() + b_.size(); }

 private:
  std::size_t idx(std::size_t di, std::size_t dj, std::size_t ci, std::size_t c) const {
    return ((di * k_ + dj) * cin_ + ci) * cout_ + c;
  }

  std::size_t cin_, cout_, k_;
  TensorT<T> w_, gw_, b_, gb_;
  TensorT<T> x_;
};

// 1-D convolution over LC tensors, stride 1, zero-padded to the same length.
// Weights are [k][cin][cout].
template <typename T>
class Conv1dT : public LayerT<T> {
 public:
  Conv1dT(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
          std::mt19937& rng)
      : cin_(in_channels),
        cout_(out_channels),
        k_(kernel),
        w_({kernel, in_channels, out_channels}),
        gw_({kernel, in_channels, out_channels}),
        b_({out_channels}),
        gb_({out_channels}) {
    detail::glorot_uniform(w_, k_ * cin_, k_ * cout_, rng);
  }

  std::string name() const override { return "conv1d"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    if (x.rank() != 2 || x.shape[1] != cin_)
      throw DataError("conv1d: expected Lx" + std::to_string(cin_) + " input");
    x_ = x;
    const std::size_t len = x.shape[0];
    TensorT<T> y({len, cout_});
    const std::size_t pad = k_ / 2;
    for (std::size_t i = 0; i < len; ++i) {
      T* acc = &y(i, 0);
      for (std::size_t c = 0; c < cout_; ++c) acc[c] = b_(c);
      for (std::size_t di = 0; di < k_; ++di) {
        const std::size_t ii = i + di;
        if (ii < pad || ii - pad >= len) continue;
        const T* xp = &x(ii - pad, 0);
        const T* wp = &w_(di, 0, 0);
        for (std::size_t ci = 0; ci < cin_; ++ci) {
          const T xv = xp[ci];
          const T* wr = wp + ci * cout_;
          for (std::size_t c = 0; c < cout_; ++c) acc[c] += xv * wr[c];
        }
      }
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(x_.size() > 0);
    const std::size_t len = x_.shape[0];
    if (gy.rank() != 2 || gy.shape[0] != len || gy.shape[1] != cout_)
      throw DataError("conv1d: gradient shape does not match forward output");
    TensorT<T> gx({len, cin_});
    const std::size_t pad = k_ / 2;
    for (std::size_t i = 0; i < len; ++i) {
      const T* gyp = &gy(i, 0);
      for (std::size_t c = 0; c < cout_; ++c) gb_(c) += gyp[c];
      for (std::size_t di = 0; di < k_; ++di) {
        const std::size_t ii = i + di;
        if (ii < pad || ii - pad >= len) continue;
        const T* xp = &x_(ii - pad, 0);
        T* gxp = &gx(ii - pad, 0);
        const T* wp = &w_(di, 0, 0);
        T* gwp = &gw_(di, 0, 0);
        for (std::size_t ci = 0; ci < cin_; ++ci) {
          const T xv = xp[ci];
          T gxv = 0;
          const T* wr = wp + ci * cout_;
          T* gwr = gwp + ci * cout_;
          for (std::size_t c = 0; c < cout_; ++c) {
            gxv += gyp[c] * wr[c];
            gwr[c] += xv * gyp[c];
          }
          gxp[ci] += gxv;
        }
      }
    }
    return gx;
  }

  std::vector<TensorT<T>*> params() override { return {&w_, &b_}; }
  std::vector<TensorT<T>*> grads() override { return {&gw_, &gb_}; }

 private:
  std::size_t cin_, cout_, k_;
  TensorT<T> w_, gw_, b_, gb_;
  TensorT<T> x_;
};

// 2x2 average pooling with stride 2 on HWC tensors. Odd trailing rows or
// columns are dropped (floor division), matching the usual valid-pool rule.
template <typename T>
class AvgPool2dT : public LayerT<T> {
 public:
  std::string name() const override { return "avgpool2d"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    if (x.rank() != 3) throw DataError("avgpool2d: expected HxWxC input");
    in_shape_ = x.shape;
    const std::size_t oh = x.shape[0] / 2, ow = x.shape[1] / 2, c = x.shape[2];
    TensorT<T> y({oh, ow, c});
    for (std::size_t i = 0; i < oh; ++i)
      for (std::size_t j = 0; j < ow; ++j)
        for (std::size_t ch = 0; ch < c; ++ch)
          y(i, j, ch) = (x(2 * i, 2 * j, ch) + x(2 * i, 2 * j + 1, ch) +
                         x(2 * i + 1, 2 * j, ch) + x(2 * i + 1, 2 * j + 1, ch)) /
                        static_cast<T>(4);
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(!in_shape_.empty());
    TensorT<T> gx(in_shape_);
    const std::size_t oh = in_shape_[0] / 2, ow = in_shape_[1] / 2, c = in_shape_[2];
    if (gy.rank() != 3 || gy.shape[0] != oh || gy.shape[1] != ow || gy.shape[2] != c)
      throw DataError("avgpool2d: gradient shape does not match forward output");
    for (std::size_t i = 0; i < oh; ++i)
      for (std::size_t j = 0; j < ow; ++j)
        for (std::size_t ch = 0; ch < c; ++ch) {
          const T g = gy(i, j, ch) / static_cast<T>(4);
          gx(2 * i, 2 * j, ch) += g;
          gx(2 * i, 2 * j + 1, ch) += g;
          gx(2 * i + 1, 2 * j, ch) += g;
          gx(2 * i + 1, 2 * j + 1, ch) += g;
        }
    return gx;
  }

 private:
  std::vector<std::size_t> in_shape_;
};

// Length-2 average pooling with stride 2 on LC tensors; odd tail dropped.
template <typename T>
class AvgPool1dT : public LayerT<T> {
 public:
  std::string name() const override { return "avgpool1d"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    if (x.rank() != 2) throw DataError("avgpool1d: expected LxC input");
    in_shape_ = x.shape;
    const std::size_t ol = x.shape[0] / 2, c = x.shape[1];
    TensorT<T> y({ol, c});
    for (std::size_t i = 0; i < ol; ++i)
      for (std::size_t ch = 0; ch < c; ++ch)
        y(i, ch) = (x(2 * i, ch) + x(2 * i + 1, ch)) / static_cast<T>(2);
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(!in_shape_.empty());
    TensorT<T> gx(in_shape_);
    const std::size_t ol = in_shape_[0] / 2, c = in_shape_[1];
    if (gy.rank() != 2 || gy.shape[0] != ol || gy.shape[1] != c)
      throw DataError("avgpool1d: gradient shape does not match forward output");
    for (std::size_t i = 0; i < ol; ++i)
      for (std::size_t ch = 0; ch < c; ++ch) {
        const T g = gy(i, ch) / static_cast<T>(2);
        gx(2 * i, ch) += g;
        gx(2 * i + 1, ch) += g;
      }
    return gx;
  }

 private:
  std::vector<std::size_t> in_shape_;
};

template <typename T>
class ReluT : public LayerT<T> {
 public:
  std::string name() const override { return "relu"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    mask_.assign(x.size(), false);
    TensorT<T> y(x.shape);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x.data[i] > T{0}) {
        y.data[i] = x.data[i];
        mask_[i] = true;
      }
    }
    has_cache_ = true;
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(has_cache_);
    if (gy.size() != mask_.size())
      throw DataError("relu: gradient size does not match forward output");
    TensorT<T> gx(gy.shape);
    for (std::size_t i = 0; i < gy.size(); ++i)
      gx.data[i] = mask_[i] ? gy.data[i] : T{0};
    return gx;
  }

 private:
  std::vector<bool> mask_;
  bool has_cache_ = false;
};

// Inverted dropout: surviving activations are scaled by 1/(1-rate) during
// training so inference needs no rescaling. Identity in Infer mode.
template <typename T>
class DropoutT : public LayerT<T> {
 public:
  explicit DropoutT(double rate) : rate_(rate) {
    if (!(rate >= 0.0 && rate < 1.0))
      throw std::invalid_argument("dropout rate must lie in [0, 1)");
  }

  std::string name() const override { return "dropout"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode mode, std::mt19937& rng) override {
    has_cache_ = true;
    if (mode == RunMode::Infer || rate_ == 0.0) {
      train_mask_ = false;
      mask_.clear();
      return x;
    }
    train_mask_ = true;
    mask_.assign(x.size(), T{0});
    const T scale = static_cast<T>(1.0 / (1.0 - rate_));
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    TensorT<T> y(x.shape);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (dist(rng) >= rate_) {
        mask_[i] = scale;
        y.data[i] = x.data[i] * scale;
      }
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(has_cache_);
    if (!train_mask_) return gy;
    if (gy.size() != mask_.size())
      throw DataError("dropout: gradient size does not match forward output");
    TensorT<T> gx(gy.shape);
    for (std::size_t i = 0; i < gy.size(); ++i) gx.data[i] = gy.data[i] * mask_[i];
    return gx;
  }

  double rate() const { return rate_; }

 private:
  double rate_;
  std::vector<T> mask_;
  bool train_mask_ = false;
  bool has_cache_ = false;
};

template <typename T>
class FlattenT : public LayerT<T> {
 public:
  std::string name() const override { return "flatten"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    in_shape_ = x.shape;
    TensorT<T> y({x.size()});
    y.data = x.data;
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(!in_shape_.empty());
    if (gy.size() != TensorT<T>::count(in_shape_))
      throw DataError("flatten: gradient size does not match forward output");
    TensorT<T> gx(in_shape_);
    gx.data = gy.data;
    return gx;
  }

 private:
  std::vector<std::size_t> in_shape_;
};

// Fully connected layer on rank-1 tensors: y = x W + b with W [in][out].
template <typename T>
class DenseT : public LayerT<T> {
 public:
  DenseT(std::size_t in, std::size_t out, std::mt19937& rng)
      : in_(in), out_(out), w_({in, out}), gw_({in, out}), b_({out}), gb_({out}) {
    detail::glorot_uniform(w_, in, out, rng);
  }

  std::string name() const override { return "dense"; }

  TensorT<T> forward(const TensorT<T>& x, RunMode, std::mt19937&) override {
    if (x.rank() != 1 || x.shape[0] != in_)
      throw DataError("dense: expected input of size " + std::to_string(in_));
    x_ = x;
    TensorT<T> y({out_});
    for (std::size_t o = 0; o < out_; ++o) y(o) = b_(o);
    for (std::size_t i = 0; i < in_; ++i) {
      const T xv = x(i);
      const T* wr = &w_(i, 0);
      for (std::size_t o = 0; o < out_; ++o) y(o) += xv * wr[o];
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& gy) override {
    this->require_forward_ran(x_.size() > 0);
    if (gy.rank() != 1 || gy.shape[0] != out_)
      throw DataError("dense: gradient shape does not match forward output");
    TensorT<T> gx({in_});
    for (std::size_t i = 0; i < in_; ++i) {
      const T xv = x_(i);
      const T* wr = &w_(i, 0);
      T* gwr = &gw_(i, 0);
      T acc = 0;
      for (std::size_t o = 0; o < out_; ++o) {
        acc += gy(o) * wr[o];
        gwr[o] += xv * gy(o);
      }
      gx(i) = acc;
    }
    for (std::size_t o = 0; o < out_; ++o) gb_(o) += gy(o);
    return gx;
  }

  std::vector<TensorT<T>*> params() override { return {&w_, &b_}; }
  std::vector<TensorT<T>*> grads() override { return {&gw_, &gb_}; }

 private:
  std::size_t in_, out_;
  TensorT<T> w_, gw_, b_, gb_;
  TensorT<T> x_;
};

// --- Head activations (applied outside the layer stack) -------------------

template <typename T>
TensorT<T> sigmoid(const TensorT<T>& z) {
  TensorT<T> p(z.shape);
  for (std::size_t i = 0; i < z.size(); ++i)
    p.data[i] = static_cast<T>(1) / (static_cast<T>(1) + std::exp(-z.data[i]));
  return p;
}

template <typename T>
TensorT<T> softmax(const TensorT<T>& z) {
  TensorT<T> p(z.shape);
  T zmax = z.data.empty() ? T{0} : z.data[0];
  for (T v : z.data) zmax = std::max(zmax, v);
  T sum = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p.data[i] = std::exp(z.data[i] - zmax);
    sum += p.data[i];
  }
  for (auto& v : p.data) v /= sum;
  return p;
}

// --- Losses ----------------------------------------------------------------

// Probabilities are clamped to [1e-7, 1 - 1e-7] before any logarithm.
inline constexpr double kProbEpsilon = 1e-7;

enum class LossKind {
  BinaryCrossEntropy,             // sigmoid head, one-hot targets, 2 nodes
  SparseCategoricalCrossEntropy,  // softmax head, integer targets
};

template <typename T>
struct LossResult {
  T loss;
  TensorT<T> grad_logits;
  TensorT<T> probabilities;
};

// Mean binary cross-entropy over independent sigmoid output nodes against a
// one-hot target. The gradient is taken through the (unclamped) sigmoid:
// dL/dz_k = (p_k - t_k) / n.
template <typename T>
LossResult<T> binary_cross_entropy(const TensorT<T>& logits, int target) {
  const std::size_t n = logits.size();
  if (logits.rank() != 1 || n < 2)
    throw DataError("binary cross-entropy expects a rank-1 logit vector");
  if (target < 0 || static_cast<std::size_t>(target) >= n)
    throw DataError("target class " + std::to_string(target) + " out of range");
  LossResult<T> r{T{0}, TensorT<T>({n}), sigmoid(logits)};
  const T lo = static_cast<T>(kProbEpsilon);
  const T hi = static_cast<T>(1.0 - kProbEpsilon);
  for (std::size_t k = 0; k < n; ++k) {
    const T t = (static_cast<std::size_t>(target) == k) ? T{1} : T{0};
    const T p = std::clamp(r.probabilities.data[k], lo, hi);
    r.loss -= (t * std::log(p) + (T{1} - t) * std::log(T{1} - p)) / static_cast<T>(n);
    r.grad_logits.data[k] = (r.probabilities.data[k] - t) / static_cast<T>(n);
  }
  return r;
}

// Categorical cross-entropy of a softmax head against an integer class id:
// L = -log p_target, dL/dz = p - onehot(target).
template <typename T>
LossResult<T> sparse_categorical_cross_entropy(const TensorT<T>& logits, int target) {
  const std::size_t n = logits.size();
  if (logits.rank() != 1 || n < 2)
    throw DataError("categorical cross-entropy expects a rank-1 logit vector");
  if (target < 0 || static_cast<std::size_t>(target) >= n)
    throw DataError("target class " + std::to_string(target) + " out of range");
  LossResult<T> r{T{0}, TensorT<T>({n}), softmax(logits)};
  const T lo = static_cast<T>(kProbEpsilon);
  const T hi = static_cast<T>(1.0 - kProbEpsilon);
  const T pt = std::clamp(r.probabilities.data[static_cast<std::size_t>(target)], lo, hi);
  r.loss = -std::log(pt);
  for (std::size_t k = 0; k < n; ++k) {
    const T t = (static_cast<std::size_t>(target) == k) ? T{1} : T{0};
    r.grad_logits.data[k] = r.probabilities.data[k] - t;
  }
  return r;
}

template <typename T>
LossResult<T> compute_loss(LossKind kind, const TensorT<T>& logits, int target) {
  return kind == LossKind::BinaryCrossEntropy
             ? binary_cross_entropy(logits, target)
             : sparse_categorical_cross_entropy(logits, target);
}

// --- Optimizer ---------------------------------------------------------------

// Adam with the AMSGrad correction: the second-moment running maximum vhat is
// monotone non-decreasing, and both moment estimates are bias-corrected.
template <typename T>
class AmsGradT {
 public:
  struct Config {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-7;
  };

  AmsGradT(std::vector<TensorT<T>*> params, std::vector<TensorT<T>*> grads,
           Config cfg = {})
      : params_(std::move(params)), grads_(std::move(grads)), cfg_(cfg) {
    if (params_.size() != grads_.size())
      throw std::invalid_argument("optimizer: parameter/gradient count mismatch");
    for (const auto* p : params_) {
      m_.emplace_back(p->shape);
      v_.emplace_back(p->shape);
      vhat_.emplace_back(p->shape);
    }
  }

  void step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
    const double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
    for (std::size_t pi = 0; pi < params_.size(); ++pi) {
      auto& p = *params_[pi];
      const auto& g = *grads_[pi];
      if (!p.same_shape(g))
        throw std::invalid_argument("optimizer: gradient shape mismatch");
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double gi = static_cast<double>(g.data[i]);
        if (!std::isfinite(gi))
          throw DataError("non-finite gradient encountered at optimizer step " +
                          std::to_string(t_));
        double m = cfg_.beta1 * m_[pi].data[i] + (1.0 - cfg_.beta1) * gi;
        double v = cfg_.beta2 * v_[pi].data[i] + (1.0 - cfg_.beta2) * gi * gi;
        m_[pi].data[i] = m;
        v_[pi].data[i] = v;
        const double vh = std::max(static_cast<double>(vhat_[pi].data[i]), v);
        vhat_[pi].data[i] = vh;
        const double update =
            cfg_.learning_rate * (m / bc1) / (std::sqrt(vh / bc2) + cfg_.epsilon);
        p.data[i] -= static_cast<T>(update);
      }
    }
  }

  long long steps() const { return t_; }
  const Config& config() const { return cfg_; }

  // Second-moment running maxima, exposed for invariant checks in tests.
  const std::vector<TensorT<double>>& second_moment_max() const { return vhat_; }

 private:
  std::vector<TensorT<T>*> params_;
  std::vector<TensorT<T>*> grads_;
  Config cfg_;
  // Moments are held in double regardless of the parameter precision.
  std::vector<TensorT<double>> m_, v_, vhat_;
  long long t_ = 0;
};

}  // namespace wids
