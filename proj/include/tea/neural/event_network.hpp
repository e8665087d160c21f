#pragma once

#include <array>
#include <vector>

#include "tea/neural/layers.hpp"

namespace tea::neural {

inline constexpr int kTokenFeatureCount = 4;

/// Embedded context window plus binary token features of the centre token.
struct WindowExample {
  std::vector<Vec> window;
  std::array<double, kTokenFeatureCount> features{};
  int label = 0;  // 1 = event
};

struct EventNetworkShape {
  int input_dim = 300;
  int units = 128;
  int hidden = 30;
  int feature_hidden = 3;
  double input_dropout = 0.5;
  double hidden_dropout = 0.5;

  bool operator==(const EventNetworkShape&) const = default;
};

/// Binary token classifier: LSTM over the window (max pooled) into a tanh
/// layer, token features into a small tanh layer, both concatenated into a
/// single sigmoid unit.
class EventNetwork {
 public:
  EventNetwork() = default;
  EventNetwork(const EventNetworkShape& shape, std::uint64_t seed);

  const EventNetworkShape& shape() const { return shape_; }

  double predict(std::span<const Vec> window,
                 const std::array<double, kTokenFeatureCount>& features) const;
  double loss(const WindowExample& ex, double weight) const;
  double accumulate_gradient(const WindowExample& ex, double weight, Rng* dropout_rng);
  int label_of(const WindowExample& ex) const { return ex.label; }

  std::vector<Param*> params();
  std::vector<const Param*> params() const;

 private:
  double logit(std::span<const Vec> window,
               const std::array<double, kTokenFeatureCount>& features) const;

  EventNetworkShape shape_;
  LstmLayer lstm_;
  Dense context_;
  Dense feature_;
  Dense output_;
};

}  // namespace tea::neural
