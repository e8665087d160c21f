#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "tea/neural/training.hpp"

namespace tea::neural {

struct GradientCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::string worst_parameter;
  std::size_t entries_checked = 0;
};

/// Denominator floor of the relative error, so entries whose true gradient is
/// ~0 are judged by absolute error.
inline constexpr double kGradientCheckFloor = 1e-6;

inline double relative_error(double analytic, double numeric) {
  return std::fabs(analytic - numeric) /
         std::max(std::fabs(analytic) + std::fabs(numeric), kGradientCheckFloor);
}

/// Compares the analytic gradient of `model.loss(example, weight)` with
/// central differences of step `epsilon`, over every parameter entry. Dropout
/// is off on both sides. Parameters are left unchanged.
template <class Model, class Example>
  requires TrainableModel<Model, Example>
GradientCheckResult gradient_check(Model& model, const Example& example, double epsilon,
                                   double weight = 1.0) {
  auto params = model.params();
  for (auto* p : params) p->zero_grad();
  model.accumulate_gradient(example, weight, nullptr);

  GradientCheckResult result;
  for (auto* p : params) {
    for (Eigen::Index k = 0; k < p->value.size(); ++k) {
      double& v = p->value.data()[k];
      const double saved = v;
      v = saved + epsilon;
      const double plus = model.loss(example, weight);
      v = saved - epsilon;
      const double minus = model.loss(example, weight);
      v = saved;
      const double numeric = (plus - minus) / (2.0 * epsilon);
      const double analytic = p->grad.data()[k];
      const double rel = relative_error(analytic, numeric);
      result.max_absolute_error = std::max(result.max_absolute_error, std::fabs(analytic - numeric));
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_parameter = p->name + "[" + std::to_string(k) + "]";
      }
      ++result.entries_checked;
    }
  }
  for (auto* p : params) p->zero_grad();
  return result;
}

}  // namespace tea::neural
