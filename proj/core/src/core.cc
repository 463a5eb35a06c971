#include "fons/core.h"

#include <cmath>
#include <string>

#include "fons/errors.h"

namespace fons {

void HyperParams::validate() const {
  if (dim < 1) throw InvalidParameter("dim must be >= 1");
  if (!(step_size > 0) || !std::isfinite(step_size))
    throw InvalidParameter("step_size must be a positive finite number, got " +
                           std::to_string(step_size));
  if (!(ridge > 0) || !std::isfinite(ridge))
    throw InvalidParameter("ridge (alpha) must be a positive finite number, got " +
                           std::to_string(ridge));
  if (!(epsilon >= 0) || !std::isfinite(epsilon))
    throw InvalidParameter("epsilon must be a non-negative finite number, got " +
                           std::to_string(epsilon));
}

template <typename T>
T predict(std::span<const T> w, std::span<const T> x) {
  if (w.size() != x.size()) throw DimensionMismatch(w.size(), x.size());
  T acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
  return acc;
}

template float predict<float>(std::span<const float>, std::span<const float>);
template double predict<double>(std::span<const double>, std::span<const double>);

}  // namespace fons
