#pragma once

#include <cstddef>
#include <span>

namespace fons {

// Hyperparameters shared by every learner.
//
//   dim        window length M (>= 1)
//   step_size  mu > 0; updates are scaled by 1/mu
//   ridge      alpha > 0; the Hessian proxy starts at alpha * I
//   epsilon    eps >= 0; no weight update when |e| <= eps
struct HyperParams {
  std::size_t dim = 1;
  double step_size = 0.003;
  double ridge = 1.0;
  double epsilon = 1e-8;

  // Throws InvalidParameter when an invariant is violated.
  void validate() const;
};

template <typename T>
struct StepOutcome {
  T prediction{};
  T error{};  // target - prediction
  bool updated = false;
};

inline double absolute_loss(double error) { return error < 0 ? -error : error; }

// -1, 0 or +1. Zero means the error is inside the threshold (|e| <= eps) and
// the step must not move the weights; sign(0) is 0 so eps = 0 is valid.
template <typename T>
int gradient_sign(T error, T epsilon) {
  if (!(absolute_loss(static_cast<double>(error)) > static_cast<double>(epsilon))) return 0;
  return error > T(0) ? 1 : -1;
}

// w^T x. Throws DimensionMismatch when the lengths differ.
template <typename T>
T predict(std::span<const T> w, std::span<const T> x);

extern template float predict<float>(std::span<const float>, std::span<const float>);
extern template double predict<double>(std::span<const double>, std::span<const double>);

}  // namespace fons
