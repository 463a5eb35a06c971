#include "fons/sliding_window.h"

#include "fons/errors.h"

namespace fons {

template <typename T>
SlidingWindow<T>::SlidingWindow(std::size_t dim)
    : dim_(dim), taps_(dim + 1), ring_(2 * (dim + 1), T(0)) {
  if (dim == 0) throw InvalidParameter("window dimension must be >= 1");
}

template <typename T>
void SlidingWindow<T>::push(T sample) {
  head_ = head_ == 0 ? taps_ - 1 : head_ - 1;
  ring_[head_] = sample;
  ring_[head_ + taps_] = sample;
  ++time_;
}

template class SlidingWindow<float>;
template class SlidingWindow<double>;

}  // namespace fons
