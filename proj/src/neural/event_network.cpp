#include "tea/neural/event_network.hpp"

#include <cmath>

#include "tea/error.hpp"

namespace tea::neural {

EventNetwork::EventNetwork(const EventNetworkShape& shape, std::uint64_t seed) : shape_(shape) {
  if (shape.input_dim <= 0 || shape.units <= 0 || shape.hidden <= 0 || shape.feature_hidden <= 0) {
    throw UsageError("event network needs positive layer sizes");
  }
  Rng rng(seed);
  lstm_ = LstmLayer("window_lstm", shape.input_dim, shape.units, rng);
  context_ = Dense("context_hidden", shape.units, shape.hidden, rng);
  feature_ = Dense("feature_hidden", kTokenFeatureCount, shape.feature_hidden, rng);
  output_ = Dense("output", shape.hidden + shape.feature_hidden, 1, rng);
}

std::vector<Param*> EventNetwork::params() {
  std::vector<Param*> out;
  for (auto* p : lstm_.params()) out.push_back(p);
  for (auto* p : context_.params()) out.push_back(p);
  for (auto* p : feature_.params()) out.push_back(p);
  for (auto* p : output_.params()) out.push_back(p);
  return out;
}

std::vector<const Param*> EventNetwork::params() const {
  auto mutable_params = const_cast<EventNetwork*>(this)->params();
  return {mutable_params.begin(), mutable_params.end()};
}

double EventNetwork::logit(std::span<const Vec> window,
                           const std::array<double, kTokenFeatureCount>& features) const {
  Vec pooled = max_pool_time(lstm_.forward(window));
  Vec f = Eigen::Map<const Vec>(features.data(), kTokenFeatureCount);
  Vec cat(shape_.hidden + shape_.feature_hidden);
  cat.head(shape_.hidden) = context_.forward(pooled).array().tanh();
  cat.tail(shape_.feature_hidden) = feature_.forward(f).array().tanh();
  return output_.forward(cat)(0);
}

double EventNetwork::predict(std::span<const Vec> window,
                             const std::array<double, kTokenFeatureCount>& features) const {
  return sigmoid(logit(window, features));
}

double EventNetwork::loss(const WindowExample& ex, double weight) const {
  const double z = logit(ex.window, ex.features);
  return weight * (ex.label == 1 ? softplus(-z) : softplus(z));
}

double EventNetwork::accumulate_gradient(const WindowExample& ex, double weight,
                                         Rng* dropout_rng) {
  std::vector<Vec> window(ex.window.begin(), ex.window.end());
  if (dropout_rng && shape_.input_dropout > 0.0) {
    for (auto& x : window) x = x.cwiseProduct(dropout_mask(x.size(), shape_.input_dropout, *dropout_rng));
  }
  auto cache = lstm_.forward_cached(window);
  std::vector<int> arg;
  Vec pooled = max_pool_time(cache.h, &arg);
  Vec f = Eigen::Map<const Vec>(ex.features.data(), kTokenFeatureCount);

  const int h = shape_.hidden;
  const int fh = shape_.feature_hidden;
  Vec cat(h + fh);
  cat.head(h) = context_.forward(pooled).array().tanh();
  cat.tail(fh) = feature_.forward(f).array().tanh();
  Vec mask = Vec::Ones(cat.size());
  if (dropout_rng && shape_.hidden_dropout > 0.0) {
    mask = dropout_mask(cat.size(), shape_.hidden_dropout, *dropout_rng);
  }
  Vec cat_drop = cat.cwiseProduct(mask);
  const double z = output_.forward(cat_drop)(0);
  const double y = ex.label == 1 ? 1.0 : 0.0;
  // -[y log s(z) + (1-y) log(1-s(z))] = y softplus(-z) + (1-y) softplus(z)
  const double loss = weight * (y * softplus(-z) + (1.0 - y) * softplus(z));

  Vec dz(1);
  dz(0) = weight * (sigmoid(z) - y);
  Vec dcat = output_.backward(cat_drop, dz).cwiseProduct(mask);
  Vec dctx = dcat.head(h).array() * (1.0 - cat.head(h).array().square());
  Vec dfeat = dcat.tail(fh).array() * (1.0 - cat.tail(fh).array().square());
  feature_.backward(f, dfeat);
  Vec dpooled = context_.backward(pooled, dctx);
  lstm_.backward(cache, max_pool_backward(dpooled, arg, cache.h.size()));
  return loss;
}

}  // namespace tea::neural
