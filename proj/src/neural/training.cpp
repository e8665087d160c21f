#include "tea/neural/training.hpp"

namespace tea::neural {

void TrainingConfig::validate() const {
  if (!(learning_rate > 0.0)) throw UsageError("learning rate must be positive");
  if (batch_size == 0) throw UsageError("batch size must be positive");
  if (epochs == 0) throw UsageError("epoch count must be positive");
  if (patience == 0) throw UsageError("early-stop patience must be positive");
  for (double w : class_weights) {
    if (!(w > 0.0)) throw UsageError("class weights must be positive");
  }
}

Adam::Adam(std::vector<Param*> params, double learning_rate)
    : params_(std::move(params)), lr_(learning_rate) {
  for (auto* p : params_) {
    m_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
  }
}

void Adam::step(double scale) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  ++t_;
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const Mat g = params_[i]->grad * scale;
    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * g;
    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * g.cwiseProduct(g);
    params_[i]->value.array() -=
        lr_ * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + kEps);
  }
}

std::vector<double> inverse_frequency_weights(std::span<const std::size_t> counts) {
  std::vector<double> weights(counts.size(), 1.0);
  double sum = 0.0;
  std::size_t present = 0;
  for (std::size_t c : counts) {
    if (c > 0) {
      sum += 1.0 / static_cast<double>(c);
      ++present;
    }
  }
  if (present == 0) return weights;
  const double mean = sum / static_cast<double>(present);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) weights[i] = (1.0 / static_cast<double>(counts[i])) / mean;
  }
  return weights;
}

}  // namespace tea::neural
