#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fons {

// The M most recent samples, newest first: values() = [x_t, x_{t-1}, ...,
// x_{t-M+1}]. Samples before the first push read as zero.
//
// One extra tap is retained so that extended() = [x_t, x_{t-1}, ..., x_{t-M}]
// is available without copying: its first entry is the newest sample, its
// tail is the window as it was before that sample was pushed.
//
// Storage is a mirrored ring of 2(M+1) slots, so both views are contiguous
// and push() is O(1).
template <typename T>
class SlidingWindow {
 public:
  explicit SlidingWindow(std::size_t dim);

  void push(T sample);

  // Length M, newest first.
  std::span<const T> values() const { return {ring_.data() + head_, dim_}; }
  // Length M + 1, newest first.
  std::span<const T> extended() const { return {ring_.data() + head_, dim_ + 1}; }

  T operator[](std::size_t i) const { return ring_[head_ + i]; }

  std::size_t dim() const { return dim_; }
  // Time index of the newest sample; -1 before the first push.
  std::int64_t time() const { return time_; }

 private:
  std::size_t dim_;
  std::size_t taps_;  // dim_ + 1
  std::size_t head_ = 0;
  std::int64_t time_ = -1;
  std::vector<T> ring_;
};

extern template class SlidingWindow<float>;
extern template class SlidingWindow<double>;

}  // namespace fons
