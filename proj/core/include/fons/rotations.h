#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fons {

// Column signature of the 3-column transform array: diag(1, Pi) with
// Pi = diag(1, -1). Constant over time.
inline constexpr std::array<int, 3> kSignature = {+1, +1, -1};

// Orthogonal rotation acting on a column pair (x, y):
//   x' =  c x + s y
//   y' = -s x + c y
template <typename T>
struct GivensRotation {
  T c = 1;
  T s = 0;

  void apply(std::span<T> x, std::span<T> y) const;
};

// J-orthogonal rotation for J = diag(1, -1), i.e. it preserves x^2 - y^2:
//   x' =  ch x - sh y
//   y' = -sh x + ch y
// with ch >= 1 and ch^2 - sh^2 = 1.
template <typename T>
struct HyperbolicRotation {
  T ch = 1;
  T sh = 0;

  void apply(std::span<T> x, std::span<T> y) const;
};

template <typename T>
struct RotationPair {
  GivensRotation<T> givens;
  HyperbolicRotation<T> hyperbolic;
};

// Rotation taking (a, b) to (hypot(a, b), 0). Throws DegeneratePair for (0, 0).
template <typename T>
GivensRotation<T> compute_givens(T a, T b);

// Rotation taking (a, b) to (sign(a) sqrt(a^2 - b^2), 0). Throws
// HyperbolicBreakdown when a^2 - b^2 < tol * max(1, a^2), tol being
// hyperbolic_tolerance<T>().
template <typename T>
HyperbolicRotation<T> compute_hyperbolic(T a, T b);

template <typename T>
constexpr T hyperbolic_tolerance() {
  if constexpr (sizeof(T) >= sizeof(double)) {
    return T(1e-14);
  } else {
    return T(1e-6);
  }
}

// (M+2) x 3 array, column-major so each rotation sweeps two contiguous
// columns.
//
// As a pre-array:   row 0     = [sqrt(eta_{t-1}), x~^T Lambda_{t-1}]
//                   rows 1..  = [[0; rho_{t-1}],  Lambda_{t-1}]
// As a post-array:  row 0     = [sqrt(eta_t), 0, 0]
//                   rows 1..  = [[rho_t; ~0],     Lambda_t]
template <typename T>
class TransformArray {
 public:
  explicit TransformArray(std::size_t rows) : rows_(rows), data_(3 * rows, T(0)) {}

  std::size_t rows() const { return rows_; }

  std::span<T> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const T> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  T& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  T operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::size_t scalar_count() const { return data_.size(); }

 private:
  std::size_t rows_;
  std::vector<T> data_;
};

template <typename T>
using PreArray = TransformArray<T>;
template <typename T>
using PostArray = TransformArray<T>;

// Applies B <- B H_G H_HB in place. The Givens rotation mixes columns 0 and 1
// (both +1 signature) to zero B(0,1); the hyperbolic rotation then mixes
// columns 0 and 2 (+1 / -1) to zero B(0,2). Both leave B(0,0) positive when
// it starts positive. O(rows) work. Propagates HyperbolicBreakdown; on throw
// the array is left with only the Givens stage applied.
template <typename T>
RotationPair<T> apply_transform_in_place(TransformArray<T>& array);

template <typename T>
PostArray<T> apply_transform(PreArray<T> array) {
  apply_transform_in_place(array);
  return array;
}

extern template struct GivensRotation<float>;
extern template struct GivensRotation<double>;
extern template struct HyperbolicRotation<float>;
extern template struct HyperbolicRotation<double>;
extern template GivensRotation<float> compute_givens<float>(float, float);
extern template GivensRotation<double> compute_givens<double>(double, double);
extern template HyperbolicRotation<float> compute_hyperbolic<float>(float, float);
extern template HyperbolicRotation<double> compute_hyperbolic<double>(double, double);
extern template RotationPair<float> apply_transform_in_place<float>(TransformArray<float>&);
extern template RotationPair<double> apply_transform_in_place<double>(TransformArray<double>&);

}  // namespace fons
