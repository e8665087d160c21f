#include "tea/neural/two_branch.hpp"

#include <cmath>

#include "tea/error.hpp"

namespace tea::neural {

namespace {

std::vector<Vec> apply_mask(std::span<const Vec> seq, double rate, Rng* rng,
                            std::vector<Vec>* masks) {
  std::vector<Vec> out(seq.begin(), seq.end());
  if (!rng || rate <= 0.0) return out;
  for (auto& x : out) {
    Vec m = dropout_mask(x.size(), rate, *rng);
    x = x.cwiseProduct(m);
    if (masks) masks->push_back(std::move(m));
  }
  return out;
}

}  // namespace

TwoBranchModel::TwoBranchModel(const TwoBranchShape& shape, std::uint64_t seed) : shape_(shape) {
  if (shape.input_dim <= 0 || shape.units <= 0 || shape.hidden <= 0 || shape.classes < 2) {
    throw UsageError("two-branch model needs positive sizes and at least two classes");
  }
  Rng rng(seed);
  left_ = LstmLayer("left_lstm", shape.input_dim, shape.units, rng);
  right_ = LstmLayer("right_lstm", shape.input_dim, shape.units, rng);
  hidden_ = Dense("hidden", 2 * shape.units, shape.hidden, rng);
  output_ = Dense("output", shape.hidden, shape.classes, rng);
}

std::vector<Param*> TwoBranchModel::params() {
  std::vector<Param*> out;
  for (auto* p : left_.params()) out.push_back(p);
  for (auto* p : right_.params()) out.push_back(p);
  for (auto* p : hidden_.params()) out.push_back(p);
  for (auto* p : output_.params()) out.push_back(p);
  return out;
}

std::vector<const Param*> TwoBranchModel::params() const {
  auto mutable_params = const_cast<TwoBranchModel*>(this)->params();
  return {mutable_params.begin(), mutable_params.end()};
}

Vec TwoBranchModel::logits(std::span<const Vec> left, std::span<const Vec> right) const {
  const Eigen::Index u = shape_.units;
  Vec cat(2 * u);
  cat.head(u) = max_pool_time(left_.forward(left));
  cat.tail(u) = max_pool_time(right_.forward(right));
  Vec a = hidden_.forward(cat).array().tanh();
  return output_.forward(a);
}

Vec TwoBranchModel::predict(std::span<const Vec> left, std::span<const Vec> right) const {
  return softmax(logits(left, right));
}

double TwoBranchModel::loss(const SequencePairExample& ex, double weight) const {
  Vec z = logits(ex.left, ex.right);
  const double zmax = z.maxCoeff();
  return weight * (zmax + std::log((z.array() - zmax).exp().sum()) - z(ex.label));
}

double TwoBranchModel::accumulate_gradient(const SequencePairExample& ex, double weight,
                                           Rng* dropout_rng) {
  if (ex.label < 0 || ex.label >= shape_.classes) throw UsageError("label outside the class set");
  const Eigen::Index u = shape_.units;

  auto left_in = apply_mask(ex.left, shape_.input_dropout, dropout_rng, nullptr);
  auto right_in = apply_mask(ex.right, shape_.input_dropout, dropout_rng, nullptr);
  auto left_cache = left_.forward_cached(left_in);
  auto right_cache = right_.forward_cached(right_in);
  std::vector<int> left_arg, right_arg;
  Vec cat(2 * u);
  cat.head(u) = max_pool_time(left_cache.h, &left_arg);
  cat.tail(u) = max_pool_time(right_cache.h, &right_arg);

  Vec a = hidden_.forward(cat).array().tanh();
  Vec mask = Vec::Ones(a.size());
  if (dropout_rng && shape_.hidden_dropout > 0.0) {
    mask = dropout_mask(a.size(), shape_.hidden_dropout, *dropout_rng);
  }
  Vec a_drop = a.cwiseProduct(mask);
  Vec z = output_.forward(a_drop);

  // log-softmax for the loss value
  const double zmax = z.maxCoeff();
  const double lse = zmax + std::log((z.array() - zmax).exp().sum());
  const double loss = weight * (lse - z(ex.label));

  Vec dz = softmax(z);
  dz(ex.label) -= 1.0;
  dz *= weight;

  Vec da = output_.backward(a_drop, dz).cwiseProduct(mask);
  Vec dpre = da.array() * (1.0 - a.array().square());
  Vec dcat = hidden_.backward(cat, dpre);

  auto dleft = max_pool_backward(dcat.head(u), left_arg, left_cache.h.size());
  auto dright = max_pool_backward(dcat.tail(u), right_arg, right_cache.h.size());
  left_.backward(left_cache, dleft);
  right_.backward(right_cache, dright);
  return loss;
}

}  // namespace tea::neural
