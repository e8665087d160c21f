#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <span>
#include <vector>

#include "tea/error.hpp"
#include "tea/neural/layers.hpp"

namespace tea::neural {

struct TrainingConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t epochs = 30;
  /// Epochs without validation improvement before stopping. Only used when a
  /// validation set is supplied.
  std::size_t patience = 5;
  /// Per-class loss multipliers indexed by class; empty means all ones.
  std::vector<double> class_weights;
  std::uint64_t seed = 42;

  /// Throws UsageError unless every numeric field is positive.
  void validate() const;
  double weight_of(int label) const {
    return class_weights.empty() ? 1.0 : class_weights.at(static_cast<std::size_t>(label));
  }
};

struct TrainHistory {
  std::vector<double> train_loss;       // mean weighted loss per epoch, dropout on
  std::vector<double> validation_loss;  // mean weighted loss per epoch, dropout off
  std::size_t best_epoch = 0;
  bool early_stopped = false;
};

/// What train() needs from a model.
template <class M, class E>
concept TrainableModel = requires(M m, const M cm, const E& ex, Rng* rng) {
  { m.params() } -> std::same_as<std::vector<Param*>>;
  { m.accumulate_gradient(ex, 1.0, rng) } -> std::convertible_to<double>;
  { cm.loss(ex, 1.0) } -> std::convertible_to<double>;
  { cm.label_of(ex) } -> std::convertible_to<int>;
};

/// Adam with the usual defaults (beta1 0.9, beta2 0.999, eps 1e-8).
class Adam {
 public:
  Adam(std::vector<Param*> params, double learning_rate);
  /// Applies one update from the accumulated gradients scaled by `scale`.
  void step(double scale);

 private:
  std::vector<Param*> params_;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
  double lr_;
  std::size_t t_ = 0;
};

/// Called after every epoch; returning true stops training.
using EpochCallback = std::function<bool(std::size_t epoch, const TrainHistory&)>;

/// Mini-batch training of weighted cross-entropy. Deterministic for a fixed
/// config seed. With a validation set, the parameters of the best validation
/// epoch are restored at the end. Throws DivergenceError on a non-finite loss.
template <class Model, class Example>
  requires TrainableModel<Model, Example>
TrainHistory train(Model& model, std::span<const Example> train_set,
                   std::span<const Example> validation_set, const TrainingConfig& config,
                   const EpochCallback& on_epoch = {}) {
  config.validate();
  if (train_set.empty()) throw UsageError("training set is empty");

  TrainHistory history;
  auto params = model.params();
  Adam adam(params, config.learning_rate);
  Rng rng(config.seed);

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  auto snapshot = [&]() {
    std::vector<Mat> values;
    values.reserve(params.size());
    for (auto* p : params) values.push_back(p->value);
    return values;
  };
  std::vector<Mat> best = snapshot();
  double best_validation = INFINITY;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      for (auto* p : params) p->zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        const Example& ex = train_set[order[k]];
        total += model.accumulate_gradient(ex, config.weight_of(model.label_of(ex)), &rng);
      }
      adam.step(1.0 / static_cast<double>(end - start));
    }
    const double mean = total / static_cast<double>(train_set.size());
    if (!std::isfinite(mean)) throw DivergenceError(epoch, config.learning_rate);
    history.train_loss.push_back(mean);

    if (!validation_set.empty()) {
      double v = 0.0;
      for (const Example& ex : validation_set) {
        v += model.loss(ex, config.weight_of(model.label_of(ex)));
      }
      v /= static_cast<double>(validation_set.size());
      if (!std::isfinite(v)) throw DivergenceError(epoch, config.learning_rate);
      history.validation_loss.push_back(v);
      if (v < best_validation) {
        best_validation = v;
        history.best_epoch = epoch;
        best = snapshot();
        since_best = 0;
      } else if (++since_best >= config.patience) {
        history.early_stopped = true;
        break;
      }
    } else {
      history.best_epoch = epoch;
    }
    if (on_epoch && on_epoch(epoch, history)) break;
  }

  if (!validation_set.empty()) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = best[i];
  }
  return history;
}

/// Inverse-frequency class weights normalised to mean 1 over the classes that
/// occur. Classes with zero count get weight 1.
std::vector<double> inverse_frequency_weights(std::span<const std::size_t> counts);

}  // namespace tea::neural
