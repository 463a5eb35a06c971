#include "fons/harness/run.h"

#include <chrono>
#include <cmath>

#include "fons/errors.h"

namespace fons::harness {
namespace {

template <typename Learner>
Learner make_learner(const HyperParams& params, const RunOptions& options);

template <>
Ogd<double> make_learner(const HyperParams& p, const RunOptions&) { return Ogd<double>(p); }
template <>
Ogd<float> make_learner(const HyperParams& p, const RunOptions&) { return Ogd<float>(p); }
template <>
Ons<double> make_learner(const HyperParams& p, const RunOptions& o) {
  return Ons<double>(p, OnsOptions{o.ons_bias});
}
template <>
Ons<float> make_learner(const HyperParams& p, const RunOptions& o) {
  return Ons<float>(p, OnsOptions{o.ons_bias});
}
template <>
FastOns<double> make_learner(const HyperParams& p, const RunOptions& o) {
  return FastOns<double>(p, FastOnsOptions{o.on_breakdown});
}
template <>
FastOns<float> make_learner(const HyperParams& p, const RunOptions& o) {
  return FastOns<float>(p, FastOnsOptions{o.on_breakdown});
}

template <typename Learner>
std::size_t breakdowns_of(const Learner&) { return 0; }
template <typename T>
std::size_t breakdowns_of(const FastOns<T>& learner) { return learner.breakdowns(); }

template <typename Learner>
RunMetrics drive(Learner learner, std::span<const double> samples, const RunOptions& options) {
  using T = std::remove_cvref_t<decltype(learner.weights()[0])>;
  RunMetrics m;
  m.ewma_decay = options.ewma_decay;
  if (samples.size() < 2) {
    m.final_weights.assign(learner.weights().begin(), learner.weights().end());
    return m;
  }
  const std::size_t steps = samples.size() - 1;
  if (options.record_series) {
    m.running_mse.resize(steps);
    m.ewma_mse.resize(steps);
  }
  if (options.record_abs_error) m.abs_error.resize(steps);

  learner.prime(static_cast<T>(samples[0]));
  double sum_sq = 0;
  double sum_abs = 0;
  double ewma = 0;
  const double decay = options.ewma_decay;
  std::size_t t = 0;

  const auto start = std::chrono::steady_clock::now();
  try {
    for (; t < steps; ++t) {
      const auto out = learner.step(static_cast<T>(samples[t + 1]));
      const double e = static_cast<double>(out.error);
      const double sq = e * e;
      sum_sq += sq;
      sum_abs += absolute_loss(e);
      if (options.record_series) {
        ewma = t == 0 ? sq : (1.0 - decay) * ewma + decay * sq;
        m.running_mse[t] = sum_sq / static_cast<double>(t + 1);
        m.ewma_mse[t] = ewma;
      }
      if (options.record_abs_error) m.abs_error[t] = absolute_loss(e);
    }
  } catch (const Error& e) {
    throw StepFailure(t, e.what());
  }
  const auto stop = std::chrono::steady_clock::now();

  m.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  m.steps = steps;
  m.cumulative_abs_loss = sum_abs;
  m.final_mse = sum_sq / static_cast<double>(steps);
  m.breakdown_count = breakdowns_of(learner);
  m.final_weights.assign(learner.weights().begin(), learner.weights().end());
  return m;
}

template <typename T>
RunMetrics dispatch(Algorithm algorithm, const HyperParams& params, std::span<const double> samples,
                    const RunOptions& options) {
  switch (algorithm) {
    case Algorithm::kOgd: return drive(make_learner<Ogd<T>>(params, options), samples, options);
    case Algorithm::kOns: return drive(make_learner<Ons<T>>(params, options), samples, options);
    case Algorithm::kFastOns:
      return drive(make_learner<FastOns<T>>(params, options), samples, options);
  }
  throw InvalidParameter("unknown algorithm");
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kOgd: return "ogd";
    case Algorithm::kOns: return "ons";
    case Algorithm::kFastOns: return "fast-ons";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "ogd") return Algorithm::kOgd;
  if (name == "ons") return Algorithm::kOns;
  if (name == "fast-ons") return Algorithm::kFastOns;
  return std::nullopt;
}

std::string_view to_string(Precision precision) {
  return precision == Precision::kFloat ? "float" : "double";
}

std::optional<Precision> parse_precision(std::string_view name) {
  if (name == "double") return Precision::kDouble;
  if (name == "float") return Precision::kFloat;
  return std::nullopt;
}

RunMetrics run_stream(Algorithm algorithm, const HyperParams& params, std::span<const double> samples,
                      const RunOptions& options) {
  params.validate();
  RunMetrics m = options.precision == Precision::kFloat
                     ? dispatch<float>(algorithm, params, samples, options)
                     : dispatch<double>(algorithm, params, samples, options);
  m.algorithm = algorithm;
  m.precision = options.precision;
  m.params = params;
  return m;
}

}  // namespace fons::harness
