#include "fons/predictors.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "fons/errors.h"

namespace fons {
namespace {

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
  T acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void require_unprimed(std::int64_t time, std::size_t steps) {
  if (time >= 0 || steps > 0)
    throw std::logic_error("prime() is only valid on a fresh learner");
}

}  // namespace

// ---------------------------------------------------------------- OGD

template <typename T>
Ogd<T>::Ogd(const HyperParams& params)
    : params_(params),
      inv_mu_(T(1) / static_cast<T>(params.step_size)),
      state_{std::vector<T>(params.dim, T(0)), SlidingWindow<T>(params.dim)} {
  params_.validate();
}

template <typename T>
void Ogd<T>::prime(T sample) {
  require_unprimed(state_.window.time(), steps_);
  state_.window.push(sample);
}

template <typename T>
T Ogd<T>::predict_next() const {
  return predict<T>(state_.w, state_.window.values());
}

template <typename T>
StepOutcome<T> Ogd<T>::step(T next_sample) {
  StepOutcome<T> out;
  const auto x = state_.window.values();
  out.prediction = dot<T>(state_.w, x);
  out.error = next_sample - out.prediction;
  const int sign = gradient_sign(out.error, static_cast<T>(params_.epsilon));
  if (sign != 0) {
    const T scale = static_cast<T>(sign) * inv_mu_;
    for (std::size_t i = 0; i < x.size(); ++i) state_.w[i] += scale * x[i];
    out.updated = true;
  }
  state_.window.push(next_sample);
  ++steps_;
  return out;
}

// ---------------------------------------------------------------- ONS

template <typename T>
Ons<T>::Ons(const HyperParams& params, OnsOptions options)
    : params_(params),
      options_(options),
      dim_(params.dim + (options.bias ? 1 : 0)),
      inv_mu_(T(1) / static_cast<T>(params.step_size)),
      state_{std::vector<T>(dim_, T(0)), std::vector<T>(dim_ * dim_, T(0)),
             SlidingWindow<T>(params.dim)},
      g_(dim_, T(0)),
      x_(options.bias ? dim_ : 0, T(0)) {
  params_.validate();
  const T diag = T(1) / static_cast<T>(params_.ridge);
  for (std::size_t i = 0; i < dim_; ++i) state_.a_inv[i * dim_ + i] = diag;
}

template <typename T>
void Ons<T>::prime(T sample) {
  require_unprimed(state_.window.time(), steps_);
  state_.window.push(sample);
}

template <typename T>
std::span<const T> Ons<T>::features() {
  if (!options_.bias) return state_.window.values();
  const auto v = state_.window.values();
  std::copy(v.begin(), v.end(), x_.begin());
  x_.back() = T(1);
  return x_;
}

template <typename T>
T Ons<T>::predict_next() const {
  const auto v = state_.window.values();
  T acc = dot<T>(std::span<const T>(state_.w).first(v.size()), v);
  if (options_.bias) acc += state_.w.back();
  return acc;
}

template <typename T>
StepOutcome<T> Ons<T>::step(T next_sample) {
  const auto x = features();
  const std::size_t n = dim_;
  T* a = state_.a_inv.data();
  T* g = g_.data();

  StepOutcome<T> out;
  out.prediction = dot<T>(state_.w, x);
  out.error = next_sample - out.prediction;

  // g = A^{-1} x, accumulated row by row (A^{-1} is symmetric).
  std::fill(g_.begin(), g_.end(), T(0));
  for (std::size_t j = 0; j < n; ++j) {
    const T xj = x[j];
    const T* row = a + j * n;
    for (std::size_t i = 0; i < n; ++i) g[i] += xj * row[i];
  }
  const T eta = T(1) + dot<T>(x, g_);
  if (!(eta > T(0)) || !std::isfinite(eta)) throw NumericalDivergence(static_cast<double>(eta));
  last_eta_ = eta;

  // A^{-1} <- A^{-1} - g g^T / eta, unconditionally.
  const T inv_eta = T(1) / eta;
  for (std::size_t i = 0; i < n; ++i) {
    const T gi = g[i] * inv_eta;
    T* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] -= gi * g[j];
  }

  const int sign = gradient_sign(out.error, static_cast<T>(params_.epsilon));
  if (sign != 0) {
    const T scale = static_cast<T>(sign) * inv_mu_ * inv_eta;
    for (std::size_t i = 0; i < n; ++i) state_.w[i] += scale * g[i];
    out.updated = true;
  }
  state_.window.push(next_sample);
  ++steps_;
  return out;
}

// ---------------------------------------------------------------- Fast ONS

template <typename T>
FastOnsState<T> FastOnsState<T>::cold(const HyperParams& params) {
  params.validate();
  const std::size_t m = params.dim;
  FastOnsState<T> s{std::vector<T>(m, T(0)), T(1), std::vector<T>(m, T(0)),
                    std::vector<T>(2 * (m + 1), T(0)), SlidingWindow<T>(m)};
  const T root = static_cast<T>(std::sqrt(1.0 / params.ridge));
  s.lambda[0] = root;                // Lambda(0, 0)
  s.lambda[(m + 1) + m] = root;      // Lambda(M, 1)
  return s;
}

template <typename T>
FastOns<T>::FastOns(const HyperParams& params, FastOnsOptions options)
    : FastOns(params, FastOnsState<T>::cold(params), options) {}

template <typename T>
FastOns<T>::FastOns(const HyperParams& params, const FastOnsState<T>& state,
                    FastOnsOptions options)
    : params_(params),
      options_(options),
      dim_(params.dim),
      inv_mu_(T(1) / static_cast<T>(params.step_size)),
      w_(state.w),
      window_(state.window),
      array_(params.dim + 2) {
  params_.validate();
  const std::size_t m = dim_;
  if (state.w.size() != m) throw DimensionMismatch(m, state.w.size());
  if (state.rho.size() != m) throw DimensionMismatch(m, state.rho.size());
  if (state.lambda.size() != 2 * (m + 1)) throw DimensionMismatch(2 * (m + 1), state.lambda.size());
  if (state.window.dim() != m) throw DimensionMismatch(m, state.window.dim());

  array_(0, 0) = state.sqrt_eta;
  std::copy(state.rho.begin(), state.rho.end(), array_.col(0).begin() + 1);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r <= m; ++r) array_(r + 1, c + 1) = state.lambda[c * (m + 1) + r];
}

template <typename T>
FastOnsState<T> FastOns<T>::state() const {
  const std::size_t m = dim_;
  FastOnsState<T> s{w_, sqrt_eta(), std::vector<T>(rho().begin(), rho().end()),
                    std::vector<T>(2 * (m + 1)), window_};
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r <= m; ++r) s.lambda[c * (m + 1) + r] = lambda(r, c);
  return s;
}

template <typename T>
std::size_t FastOns<T>::scalar_footprint() const {
  return w_.size() + array_.scalar_count() + 2 * (window_.dim() + 1);
}

template <typename T>
void FastOns<T>::prime(T sample) {
  if (window_.time() >= 0) throw std::logic_error("prime() is only valid on a fresh learner");
  window_.push(sample);
}

template <typename T>
T FastOns<T>::predict_next() const {
  return predict<T>(w_, window_.values());
}

// Turns the post-array of step t-1 into the pre-array of step t and applies
// the rotations: column 0 below row 0 becomes [0; rho_{t-1}], row 0 of the
// Lambda columns becomes x~_t^T Lambda_{t-1}.
template <typename T>
void FastOns<T>::advance(TransformArray<T>& array, std::span<const T> extended) {
  const std::size_t m = dim_;
  auto c0 = array.col(0);
  std::copy_backward(c0.begin() + 1, c0.begin() + 1 + m, c0.begin() + 2 + m);
  c0[1] = T(0);
  array(0, 1) = dot<T>(extended, array.col(1).subspan(1, m + 1));
  array(0, 2) = dot<T>(extended, array.col(2).subspan(1, m + 1));
  apply_transform_in_place(array);
}

// Replays x_{t-M} .. x_{t-1} from a cold start as if everything earlier was
// zero. The result is a consistent statistics block for step t whose A^{-1}
// only remembers the retained samples. O(M^2), once per breakdown.
template <typename T>
void FastOns<T>::rebuild() {
  const std::size_t m = dim_;
  const auto ext = window_.extended();  // [x_t, x_{t-1}, ..., x_{t-M}]
  auto cold = FastOnsState<T>::cold(params_);
  FastOns<T> replay(params_, cold, options_);
  for (std::size_t k = m; k >= 1; --k) {
    replay.window_.push(ext[k]);
    replay.advance(replay.array_, replay.window_.extended());
  }
  std::copy(replay.array_.col(0).begin(), replay.array_.col(0).end(), array_.col(0).begin());
  std::copy(replay.array_.col(1).begin(), replay.array_.col(1).end(), array_.col(1).begin());
  std::copy(replay.array_.col(2).begin(), replay.array_.col(2).end(), array_.col(2).begin());
}

template <typename T>
StepOutcome<T> FastOns<T>::step(T next_sample) {
  const std::size_t m = dim_;
  const auto x = window_.values();
  const auto extended = window_.extended();

  StepOutcome<T> out;
  out.prediction = dot<T>(w_, x);
  out.error = next_sample - out.prediction;

  try {
    advance(array_, extended);
  } catch (const HyperbolicBreakdown&) {
    ++breakdowns_;
    if (options_.on_breakdown == BreakdownPolicy::kAbort) throw;
    rebuild();
    advance(array_, extended);
  }
  assert(sizeof(T) < sizeof(double) ||
         std::abs(static_cast<double>(array_(m + 1, 0))) <=
             1e-8 * std::max(1.0, static_cast<double>(array_(0, 0))));

  const int sign = gradient_sign(out.error, static_cast<T>(params_.epsilon));
  if (sign != 0) {
    // rho_t sqrt(eta_t) / eta_t = rho_t / sqrt(eta_t)
    const T scale = static_cast<T>(sign) * inv_mu_ / array_(0, 0);
    const T* rho_t = array_.col(0).data() + 1;
    for (std::size_t i = 0; i < m; ++i) w_[i] += scale * rho_t[i];
    out.updated = true;
  }
  window_.push(next_sample);
  return out;
}

template class Ogd<float>;
template class Ogd<double>;
template class Ons<float>;
template class Ons<double>;
template struct FastOnsState<float>;
template struct FastOnsState<double>;
template class FastOns<float>;
template class FastOns<double>;

}  // namespace fons
