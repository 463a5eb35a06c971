#include "fons/harness/experiments.h"

#include <algorithm>
#include <cmath>

#include "fons/errors.h"
#include "fons/harness/stream.h"

namespace fons::harness {
namespace {

template <typename T>
EquivalenceReport lockstep(const HyperParams& params, std::span<const double> samples,
                           double tolerance) {
  EquivalenceReport report;
  report.tolerance = tolerance;
  if (samples.size() < 2) return report;

  Ons<T> regular(params);
  FastOns<T> fast(params);
  regular.prime(static_cast<T>(samples[0]));
  fast.prime(static_cast<T>(samples[0]));

  double sum_sq_regular = 0;
  double sum_sq_fast = 0;
  const std::size_t steps = samples.size() - 1;
  for (std::size_t t = 0; t < steps; ++t) {
    const T target = static_cast<T>(samples[t + 1]);
    StepOutcome<T> a;
    StepOutcome<T> b;
    try {
      a = regular.step(target);
      b = fast.step(target);
    } catch (const Error& e) {
      throw StepFailure(t, e.what());
    }

    double weight_dev = 0;
    const auto wa = regular.weights();
    const auto wb = fast.weights();
    for (std::size_t i = 0; i < wa.size(); ++i)
      weight_dev = std::max(weight_dev, std::abs(static_cast<double>(wa[i]) - static_cast<double>(wb[i])));
    const double pred_dev =
        std::abs(static_cast<double>(a.prediction) - static_cast<double>(b.prediction));
    const double eta_dev =
        std::abs(static_cast<double>(regular.last_eta()) - static_cast<double>(fast.eta()));

    sum_sq_regular += static_cast<double>(a.error) * static_cast<double>(a.error);
    sum_sq_fast += static_cast<double>(b.error) * static_cast<double>(b.error);
    const double mse_dev = std::abs(sum_sq_regular - sum_sq_fast) / static_cast<double>(t + 1);

    report.max_weight_deviation = std::max(report.max_weight_deviation, weight_dev);
    report.max_prediction_deviation = std::max(report.max_prediction_deviation, pred_dev);
    report.max_eta_deviation = std::max(report.max_eta_deviation, eta_dev);
    report.max_mse_deviation = std::max(report.max_mse_deviation, mse_dev);
    if (!report.first_deviation_step && std::max(weight_dev, pred_dev) > tolerance)
      report.first_deviation_step = t;
  }
  report.steps = steps;
  return report;
}

double median(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return 0.5 * (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2]));
}

}  // namespace

double EquivalenceReport::max_deviation() const {
  return std::max({max_weight_deviation, max_prediction_deviation, max_mse_deviation});
}

EquivalenceReport compare_trajectories(const HyperParams& params, std::span<const double> samples,
                                       double tolerance, Precision precision) {
  params.validate();
  auto report = precision == Precision::kFloat ? lockstep<float>(params, samples, tolerance)
                                               : lockstep<double>(params, samples, tolerance);
  report.precision = precision;
  return report;
}

const BenchCell* BenchReport::cell(Algorithm algorithm, std::size_t dim) const {
  for (const auto& c : cells)
    if (c.algorithm == algorithm && c.dim == dim) return &c;
  return nullptr;
}

std::optional<double> BenchReport::slope(Algorithm algorithm) const {
  for (const auto& s : slopes)
    if (s.algorithm == algorithm) return s.slope;
  return std::nullopt;
}

BenchReport bench_sweep(std::span<const std::size_t> dims, std::size_t n, std::size_t repeats,
                        std::span<const Algorithm> algorithms, const BenchOptions& options) {
  if (repeats == 0) throw InvalidParameter("repeats must be >= 1");
  if (dims.empty()) throw InvalidParameter("bench dims must not be empty");
  if (!std::is_sorted(dims.begin(), dims.end()) ||
      std::adjacent_find(dims.begin(), dims.end()) != dims.end())
    throw InvalidParameter("bench dims must be strictly ascending");
  if (algorithms.empty()) throw InvalidParameter("no algorithms to benchmark");

  BenchReport report;
  report.dims.assign(dims.begin(), dims.end());
  report.steps = n;
  report.repeats = repeats;
  report.algorithms.assign(algorithms.begin(), algorithms.end());

  const auto stream = default_synthetic_stream(n + 1, options.seed);
  const std::span<const double> samples(stream.samples);
  const auto warmup = samples.first(std::min(samples.size(), options.warmup_steps + 1));

  RunOptions run_options;
  run_options.record_series = false;

  for (const Algorithm algorithm : algorithms) {
    for (const std::size_t dim : dims) {
      HyperParams params = options.params;
      params.dim = dim;
      run_stream(algorithm, params, warmup, run_options);

      BenchCell cell{algorithm, dim, {}, 0, 0};
      for (std::size_t r = 0; r < repeats; ++r)
        cell.run_ns.push_back(run_stream(algorithm, params, samples, run_options).wall_time_ns);
      cell.median_ns = median(cell.run_ns);
      cell.time_per_step_ns = n > 0 ? cell.median_ns / static_cast<double>(n) : 0.0;
      report.cells.push_back(std::move(cell));
    }
  }

  for (const Algorithm algorithm : algorithms) {
    SlopeFit fit{algorithm, std::nullopt};
    if (dims.size() >= 3 && n > 0) {
      std::vector<double> x;
      std::vector<double> y;
      for (const std::size_t dim : dims) {
        x.push_back(static_cast<double>(dim));
        y.push_back(report.cell(algorithm, dim)->time_per_step_ns);
      }
      fit.slope = fit_loglog_slope(x, y);
    }
    report.slopes.push_back(fit);
  }

  const auto has = [&](Algorithm a) {
    return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
  };
  for (const std::size_t dim : dims) {
    if (has(Algorithm::kOns) && has(Algorithm::kFastOns))
      report.relative_gain.push_back(report.cell(Algorithm::kOns, dim)->median_ns /
                                     report.cell(Algorithm::kFastOns, dim)->median_ns);
    if (has(Algorithm::kOgd) && has(Algorithm::kFastOns))
      report.fast_over_ogd.push_back(report.cell(Algorithm::kFastOns, dim)->median_ns /
                                     report.cell(Algorithm::kOgd, dim)->median_ns);
  }
  return report;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
  if (x.size() < 2) throw InvalidParameter("slope fit needs at least two points");
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidParameter("log-log fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw InvalidParameter("slope fit needs distinct x values");
  return sxy / sxx;
}

std::optional<std::size_t> convergence_step(std::span<const double> curve, double factor) {
  if (curve.empty()) return std::nullopt;
  const double level = factor * curve.back();
  bool was_above = false;
  for (std::size_t t = 0; t < curve.size(); ++t) {
    if (curve[t] >= level) {
      was_above = true;
    } else if (was_above) {
      return t;
    }
  }
  return std::nullopt;
}

}  // namespace fons::harness
