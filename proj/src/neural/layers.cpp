#include "tea/neural/layers.hpp"

#include <cmath>

#include "tea/error.hpp"

namespace tea::neural {

Mat glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.uniform(-limit, limit);
  }
  return m;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Vec sigmoid(const Vec& z) { return z.unaryExpr([](double v) { return sigmoid(v); }); }

Vec softmax(const Vec& z) {
  Vec e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

Vec max_pool_time(std::span<const Vec> steps, std::vector<int>* argmax) {
  if (steps.empty()) throw UsageError("max pooling over an empty sequence");
  Vec out = steps[0];
  std::vector<int> arg(static_cast<std::size_t>(out.size()), 0);
  for (std::size_t t = 1; t < steps.size(); ++t) {
    for (Eigen::Index k = 0; k < out.size(); ++k) {
      if (steps[t](k) > out(k)) {
        out(k) = steps[t](k);
        arg[static_cast<std::size_t>(k)] = static_cast<int>(t);
      }
    }
  }
  if (argmax) *argmax = std::move(arg);
  return out;
}

std::vector<Vec> max_pool_backward(const Vec& grad, const std::vector<int>& argmax,
                                   std::size_t steps) {
  std::vector<Vec> out(steps, Vec::Zero(grad.size()));
  for (Eigen::Index k = 0; k < grad.size(); ++k) {
    out[static_cast<std::size_t>(argmax[static_cast<std::size_t>(k)])](k) += grad(k);
  }
  return out;
}

Vec dropout_mask(Eigen::Index size, double rate, Rng& rng) {
  Vec mask(size);
  const double keep = 1.0 - rate;
  for (Eigen::Index k = 0; k < size; ++k) mask(k) = rng.bernoulli(keep) ? 1.0 / keep : 0.0;
  return mask;
}

Dense::Dense(std::string name, int in, int out, Rng& rng)
    : weight(name + ".weight", glorot_uniform(out, in, rng)),
      bias(name + ".bias", Mat::Zero(out, 1)) {}

Vec Dense::forward(const Vec& x) const {
  if (x.size() != weight.value.cols()) {
    throw ShapeError(weight.name + ": expected input of size " +
                     std::to_string(weight.value.cols()) + ", got " + std::to_string(x.size()));
  }
  return weight.value * x + bias.value.col(0);
}

Vec Dense::backward(const Vec& x, const Vec& dy) {
  weight.grad.noalias() += dy * x.transpose();
  bias.grad.col(0) += dy;
  return weight.value.transpose() * dy;
}

LstmLayer::LstmLayer(std::string name, int input_dim, int units, Rng& rng)
    : input_weight(name + ".input_weight", glorot_uniform(4 * units, input_dim, rng)),
      recurrent_weight(name + ".recurrent_weight", glorot_uniform(4 * units, units, rng)),
      bias(name + ".bias", Mat::Zero(4 * units, 1)) {
  bias.value.block(units, 0, units, 1).setOnes();  // forget gate
}

std::vector<Vec> LstmLayer::forward(std::span<const Vec> inputs) const {
  return forward_cached(inputs).h;
}

LstmLayer::Cache LstmLayer::forward_cached(std::span<const Vec> inputs) const {
  if (inputs.empty()) throw ShapeError(input_weight.name + ": empty input sequence");
  const Eigen::Index u = units();
  Cache cache;
  Vec h = Vec::Zero(u);
  Vec c = Vec::Zero(u);
  for (const Vec& x : inputs) {
    if (x.size() != input_weight.value.cols()) {
      throw ShapeError(input_weight.name + ": expected input of size " +
                       std::to_string(input_weight.value.cols()) + ", got " +
                       std::to_string(x.size()));
    }
    Vec z = input_weight.value * x + recurrent_weight.value * h + bias.value.col(0);
    Vec i = sigmoid(Vec(z.segment(0, u)));
    Vec f = sigmoid(Vec(z.segment(u, u)));
    Vec g = z.segment(2 * u, u).array().tanh();
    Vec o = sigmoid(Vec(z.segment(3 * u, u)));
    c = f.cwiseProduct(c) + i.cwiseProduct(g);
    h = o.cwiseProduct(Vec(c.array().tanh()));
    cache.x.push_back(x);
    cache.i.push_back(std::move(i));
    cache.f.push_back(std::move(f));
    cache.g.push_back(std::move(g));
    cache.o.push_back(std::move(o));
    cache.c.push_back(c);
    cache.h.push_back(h);
  }
  return cache;
}

void LstmLayer::backward(const Cache& cache, std::span<const Vec> dh) {
  const Eigen::Index u = units();
  const std::size_t steps = cache.h.size();
  Vec dh_next = Vec::Zero(u);
  Vec dc_next = Vec::Zero(u);
  Vec dz(4 * u);
  for (std::size_t t = steps; t-- > 0;) {
    const Vec dh_t = dh[t] + dh_next;
    const Vec tc = cache.c[t].array().tanh();
    const Vec c_prev = t > 0 ? cache.c[t - 1] : Vec::Zero(u);
    const Vec h_prev = t > 0 ? cache.h[t - 1] : Vec::Zero(u);
    const auto& i = cache.i[t];
    const auto& f = cache.f[t];
    const auto& g = cache.g[t];
    const auto& o = cache.o[t];

    Vec d_o = dh_t.cwiseProduct(tc);
    Vec dc = dh_t.cwiseProduct(o).cwiseProduct(Vec((1.0 - tc.array().square()).matrix())) + dc_next;
    dz.segment(0, u) = dc.cwiseProduct(g).array() * i.array() * (1.0 - i.array());
    dz.segment(u, u) = dc.cwiseProduct(c_prev).array() * f.array() * (1.0 - f.array());
    dz.segment(2 * u, u) = dc.cwiseProduct(i).array() * (1.0 - g.array().square());
    dz.segment(3 * u, u) = d_o.array() * o.array() * (1.0 - o.array());
    dc_next = dc.cwiseProduct(f);

    input_weight.grad.noalias() += dz * cache.x[t].transpose();
    recurrent_weight.grad.noalias() += dz * h_prev.transpose();
    bias.grad.col(0) += dz;
    dh_next = recurrent_weight.value.transpose() * dz;
  }
}

}  // namespace tea::neural
