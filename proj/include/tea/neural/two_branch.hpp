#pragma once

#include <vector>

#include "tea/neural/layers.hpp"

namespace tea::neural {

/// One classifier input: two embedded token sequences and a class index.
struct SequencePairExample {
  std::vector<Vec> left;
  std::vector<Vec> right;
  int label = 0;
};

struct TwoBranchShape {
  int input_dim = 300;
  int units = 256;   // per branch
  int hidden = 100;
  int classes = 12;
  double input_dropout = 0.6;
  double hidden_dropout = 0.5;

  bool operator==(const TwoBranchShape&) const = default;
};

/// Pair classifier: an untied LSTM per branch, max pooling over time,
/// concatenation, a tanh hidden layer and a softmax output. Dropout applies to
/// the embedded inputs and to the hidden layer feeding the output.
class TwoBranchModel {
 public:
  TwoBranchModel() = default;
  TwoBranchModel(const TwoBranchShape& shape, std::uint64_t seed);

  const TwoBranchShape& shape() const { return shape_; }

  /// Class distribution with dropout disabled.
  Vec predict(std::span<const Vec> left, std::span<const Vec> right) const;

  /// Weighted cross-entropy with dropout disabled.
  double loss(const SequencePairExample& ex, double weight) const;

  /// Adds the gradient of weight * cross-entropy to every parameter and returns
  /// the loss. Dropout is active iff `dropout_rng` is non-null.
  double accumulate_gradient(const SequencePairExample& ex, double weight, Rng* dropout_rng);

  int label_of(const SequencePairExample& ex) const { return ex.label; }

  std::vector<Param*> params();
  std::vector<const Param*> params() const;

 private:
  Vec logits(std::span<const Vec> left, std::span<const Vec> right) const;

  TwoBranchShape shape_;
  LstmLayer left_;
  LstmLayer right_;
  Dense hidden_;
  Dense output_;
};

}  // namespace tea::neural
