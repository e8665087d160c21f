#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "tea/neural/rng.hpp"

namespace tea::neural {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A trainable tensor and its accumulated gradient. Biases are n x 1.
struct Param {
  std::string name;
  Mat value;
  Mat grad;

  Param() = default;
  Param(std::string n, Mat v) : name(std::move(n)), value(std::move(v)), grad(Mat::Zero(value.rows(), value.cols())) {}
  void zero_grad() { grad.setZero(value.rows(), value.cols()); }
};

Mat glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng);

Vec sigmoid(const Vec& z);
double sigmoid(double z);
Vec softmax(const Vec& z);
/// log(1 + exp(z)) without overflow.
double softplus(double z);

/// Elementwise maximum over time steps. `argmax` (optional) receives the step
/// index chosen for each unit (first on ties). Throws UsageError when empty.
Vec max_pool_time(std::span<const Vec> steps, std::vector<int>* argmax = nullptr);

/// Routes pooled gradients back to the steps that won the max.
std::vector<Vec> max_pool_backward(const Vec& grad, const std::vector<int>& argmax,
                                   std::size_t steps);

/// Inverted-dropout mask: entries are 0 or 1/(1-rate).
Vec dropout_mask(Eigen::Index size, double rate, Rng& rng);

/// Fully connected layer y = W x + b.
class Dense {
 public:
  Dense() = default;
  Dense(std::string name, int in, int out, Rng& rng);

  int input_dim() const { return static_cast<int>(weight.value.cols()); }
  int output_dim() const { return static_cast<int>(weight.value.rows()); }

  Vec forward(const Vec& x) const;
  /// Accumulates parameter gradients and returns dL/dx.
  Vec backward(const Vec& x, const Vec& dy);
  std::vector<Param*> params() { return {&weight, &bias}; }

  Param weight;
  Param bias;
};

/// Single-layer LSTM with sigmoid gates, tanh cell activation and zero
/// initial state. Gate blocks are stacked as [input; forget; cell; output].
class LstmLayer {
 public:
  LstmLayer() = default;
  LstmLayer(std::string name, int input_dim, int units, Rng& rng);

  int input_dim() const { return static_cast<int>(input_weight.value.cols()); }
  int units() const { return static_cast<int>(recurrent_weight.value.cols()); }

  struct Cache {
    std::vector<Vec> x, i, f, g, o, c, h;
  };

  /// One hidden state per input step. Throws ShapeError on empty input or a
  /// dimension mismatch.
  std::vector<Vec> forward(std::span<const Vec> inputs) const;
  Cache forward_cached(std::span<const Vec> inputs) const;
  /// Backpropagation through time given dL/dh for every step.
  void backward(const Cache& cache, std::span<const Vec> dh);

  std::vector<Param*> params() { return {&input_weight, &recurrent_weight, &bias}; }

  Param input_weight;      // 4u x d
  Param recurrent_weight;  // 4u x u
  Param bias;              // 4u x 1
};

}  // namespace tea::neural
