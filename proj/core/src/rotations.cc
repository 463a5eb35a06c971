#include "fons/rotations.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "fons/errors.h"

namespace fons {

template <typename T>
void GivensRotation<T>::apply(std::span<T> x, std::span<T> y) const {
  assert(x.size() == y.size());
  const T cc = c;
  const T ss = s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const T xi = x[i];
    const T yi = y[i];
    x[i] = cc * xi + ss * yi;
    y[i] = cc * yi - ss * xi;
  }
}

template <typename T>
void HyperbolicRotation<T>::apply(std::span<T> x, std::span<T> y) const {
  assert(x.size() == y.size());
  // Mixed form: y' = y / ch - (sh / ch) x', algebraically equal to
  // -sh x + ch y but with better rounding behaviour near |sh| ~ ch.
  const T k = sh / ch;
  const T inv_ch = T(1) / ch;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const T xi = ch * x[i] - sh * y[i];
    y[i] = inv_ch * y[i] - k * xi;
    x[i] = xi;
  }
}

template <typename T>
GivensRotation<T> compute_givens(T a, T b) {
  if (a == T(0) && b == T(0)) throw DegeneratePair();
  if (b == T(0)) return {a > T(0) ? T(1) : T(-1), T(0)};
  const T r = std::hypot(a, b);
  return {a / r, b / r};
}

template <typename T>
HyperbolicRotation<T> compute_hyperbolic(T a, T b) {
  const T abs_a = std::abs(a);
  const T abs_b = std::abs(b);
  const T d = (abs_a - abs_b) * (abs_a + abs_b);
  if (!(d >= hyperbolic_tolerance<T>() * std::max(T(1), abs_a * abs_a)))
    throw HyperbolicBreakdown(static_cast<double>(a), static_cast<double>(b));
  if (b == T(0)) return {T(1), T(0)};
  const T root = std::sqrt(d);
  const T sign_a = a > T(0) ? T(1) : T(-1);
  return {abs_a / root, sign_a * b / root};
}

template <typename T>
RotationPair<T> apply_transform_in_place(TransformArray<T>& array) {
  RotationPair<T> pair;
  const std::size_t n = array.rows();
  auto c0 = array.col(0);
  auto c1 = array.col(1);
  auto c2 = array.col(2);

  const T a = c0[0];
  const T b = c1[0];
  if (!(a == T(0) && b == T(0))) {
    pair.givens = compute_givens(a, b);
    pair.givens.apply(c0.subspan(1, n - 1), c1.subspan(1, n - 1));
    c0[0] = pair.givens.c * a + pair.givens.s * b;
    c1[0] = T(0);
  }

  const T a2 = c0[0];
  const T b2 = c2[0];
  pair.hyperbolic = compute_hyperbolic(a2, b2);
  pair.hyperbolic.apply(c0.subspan(1, n - 1), c2.subspan(1, n - 1));
  c0[0] = pair.hyperbolic.ch * a2 - pair.hyperbolic.sh * b2;
  c2[0] = T(0);
  return pair;
}

template struct GivensRotation<float>;
template struct GivensRotation<double>;
template struct HyperbolicRotation<float>;
template struct HyperbolicRotation<double>;
template GivensRotation<float> compute_givens<float>(float, float);
template GivensRotation<double> compute_givens<double>(double, double);
template HyperbolicRotation<float> compute_hyperbolic<float>(float, float);
template HyperbolicRotation<double> compute_hyperbolic<double>(double, double);
template RotationPair<float> apply_transform_in_place<float>(TransformArray<float>&);
template RotationPair<double> apply_transform_in_place<double>(TransformArray<double>&);

}  // namespace fons
