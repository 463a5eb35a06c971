#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fons/core.h"
#include "fons/rotations.h"
#include "fons/sliding_window.h"

namespace fons {

// All three learners share one protocol. A fresh learner has an all-zero
// window; prime() feeds the first sample without a learning step, after
// which each step(next) predicts next from the current window, updates the
// state and pushes next into the window. A stream of n samples therefore
// yields n - 1 steps.

template <typename T>
struct OgdState {
  std::vector<T> w;
  SlidingWindow<T> window;
};

// First-order baseline: w <- w + sign(e) / mu * x_t.
template <typename T>
class Ogd {
 public:
  explicit Ogd(const HyperParams& params);

  void prime(T sample);
  StepOutcome<T> step(T next_sample);
  T predict_next() const;

  std::span<const T> weights() const { return state_.w; }
  const SlidingWindow<T>& window() const { return state_.window; }
  const HyperParams& params() const { return params_; }
  const OgdState<T>& state() const { return state_; }

 private:
  HyperParams params_;
  T inv_mu_;
  std::size_t steps_ = 0;
  OgdState<T> state_;
};

struct OnsOptions {
  // Append a constant 1 to the feature vector (model offset c_t). Breaks the
  // shift structure, so fast/regular equivalence only holds with this off.
  bool bias = false;
};

template <typename T>
struct OnsState {
  std::vector<T> w;      // length D = M (+1 with bias)
  std::vector<T> a_inv;  // D x D row-major, A_{t-1}^{-1}
  SlidingWindow<T> window;
};

// Regular Online Newton Step with the inversion-lemma update of A^{-1}.
// O(M^2) per step. A^{-1} is updated every step; the weights only when
// |e| > epsilon.
template <typename T>
class Ons {
 public:
  explicit Ons(const HyperParams& params, OnsOptions options = {});

  void prime(T sample);
  // Throws NumericalDivergence when eta <= 0.
  StepOutcome<T> step(T next_sample);
  T predict_next() const;

  std::size_t feature_dim() const { return dim_; }
  std::span<const T> weights() const { return state_.w; }
  // Row-major feature_dim() x feature_dim().
  std::span<const T> a_inv() const { return state_.a_inv; }
  T a_inv(std::size_t r, std::size_t c) const { return state_.a_inv[r * dim_ + c]; }
  // 1 + x_t^T A_{t-1}^{-1} x_t from the last step (1 before any step).
  T last_eta() const { return last_eta_; }
  const SlidingWindow<T>& window() const { return state_.window; }
  const HyperParams& params() const { return params_; }
  const OnsState<T>& state() const { return state_; }

 private:
  std::span<const T> features();

  HyperParams params_;
  OnsOptions options_;
  std::size_t dim_;
  T inv_mu_;
  T last_eta_ = 1;
  std::size_t steps_ = 0;
  OnsState<T> state_;
  std::vector<T> g_;
  std::vector<T> x_;  // features scratch, used with bias only
};

enum class BreakdownPolicy {
  // Rebuild the second-order statistics by replaying the retained M samples
  // from a cold start, then retry the step once.
  kRebuild,
  // Re-throw HyperbolicBreakdown.
  kAbort,
};

struct FastOnsOptions {
  BreakdownPolicy on_breakdown = BreakdownPolicy::kRebuild;
};

// Snapshot of the fast learner. Everything is O(M); there is no M x M object.
template <typename T>
struct FastOnsState {
  std::vector<T> w;       // length M
  T sqrt_eta = 1;         // sqrt(eta_{t-1})
  std::vector<T> rho;     // length M, A_{t-2}^{-1} x_{t-1} / sqrt(eta_{t-1})
  std::vector<T> lambda;  // (M+1) x 2 column-major
  SlidingWindow<T> window;

  T lambda_at(std::size_t r, std::size_t c) const { return lambda[c * (window.dim() + 1) + r]; }

  static FastOnsState cold(const HyperParams& params);
};

// Fast Online Newton Step: the same trajectory as Ons<T> (without bias) at
// O(M) per step. Instead of A^{-1} it carries sqrt(eta), rho and the rank-2
// factor Lambda of
//   [A_t^{-1} 0; 0 0] - [0 0; 0 A_{t-1}^{-1}] = Lambda Pi Lambda^T,
// Pi = diag(1, -1), and advances them with one Givens and one hyperbolic
// rotation of the (M+2) x 3 array.
template <typename T>
class FastOns {
 public:
  explicit FastOns(const HyperParams& params, FastOnsOptions options = {});
  FastOns(const HyperParams& params, const FastOnsState<T>& state, FastOnsOptions options = {});

  void prime(T sample);
  StepOutcome<T> step(T next_sample);
  T predict_next() const;

  std::span<const T> weights() const { return w_; }
  T sqrt_eta() const { return array_(0, 0); }
  T eta() const { return array_(0, 0) * array_(0, 0); }
  // rho_t after a step: A_{t-1}^{-1} x_t / sqrt(eta_t).
  std::span<const T> rho() const { return array_.col(0).subspan(1, dim_); }
  // Lambda_t, (M+1) x 2.
  T lambda(std::size_t r, std::size_t c) const { return array_(r + 1, c + 1); }
  // Last entry of the post-array's first column; analytically zero.
  T tail_residual() const { return array_(dim_ + 1, 0); }
  std::size_t breakdowns() const { return breakdowns_; }
  // Number of scalars held by the learner.
  std::size_t scalar_footprint() const;

  const SlidingWindow<T>& window() const { return window_; }
  const HyperParams& params() const { return params_; }
  FastOnsState<T> state() const;

 private:
  void advance(TransformArray<T>& array, std::span<const T> extended);
  void rebuild();

  HyperParams params_;
  FastOnsOptions options_;
  std::size_t dim_;
  T inv_mu_;
  std::size_t breakdowns_ = 0;
  std::vector<T> w_;
  SlidingWindow<T> window_;
  TransformArray<T> array_;
};

template <typename T>
inline T eta_of(const FastOns<T>& learner) {
  return learner.eta();
}

extern template class Ogd<float>;
extern template class Ogd<double>;
extern template class Ons<float>;
extern template class Ons<double>;
extern template struct FastOnsState<float>;
extern template struct FastOnsState<double>;
extern template class FastOns<float>;
extern template class FastOns<double>;

}  // namespace fons
