#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fons/core.h"
#include "fons/harness/run.h"

namespace fons::harness {

struct EquivalenceReport {
  std::size_t steps = 0;
  double tolerance = 1e-6;
  double max_weight_deviation = 0;
  double max_prediction_deviation = 0;
  double max_eta_deviation = 0;
  double max_mse_deviation = 0;  // between the two running-MSE curves
  // First step whose weight or prediction deviation exceeds tolerance.
  std::optional<std::size_t> first_deviation_step;
  Precision precision = Precision::kDouble;

  double max_deviation() const;
  bool within_tolerance() const { return max_deviation() <= tolerance; }
};

// Runs regular ONS and Fast ONS in lockstep on the same samples.
EquivalenceReport compare_trajectories(const HyperParams& params, std::span<const double> samples,
                                       double tolerance = 1e-6,
                                       Precision precision = Precision::kDouble);

struct BenchOptions {
  // dim is overwritten per cell.
  HyperParams params{1, 0.003, 1.0, 1e-8};
  std::uint64_t seed = 42;
  // Steps of the discarded warm-up run (capped at n).
  std::size_t warmup_steps = 20000;
};

struct BenchCell {
  Algorithm algorithm = Algorithm::kFastOns;
  std::size_t dim = 0;
  std::vector<std::int64_t> run_ns;  // one entry per repeat
  double median_ns = 0;
  double time_per_step_ns = 0;       // median_ns / n
};

struct SlopeFit {
  Algorithm algorithm = Algorithm::kFastOns;
  std::optional<double> slope;  // absent with fewer than 3 dims
};

struct BenchReport {
  std::vector<std::size_t> dims;
  std::size_t steps = 0;
  std::size_t repeats = 0;
  std::vector<Algorithm> algorithms;
  std::vector<BenchCell> cells;
  std::vector<SlopeFit> slopes;
  // Per dim, time_regular / time_fast (needs ons and fast-ons).
  std::vector<double> relative_gain;
  // Per dim, time_fast / time_ogd (needs ogd and fast-ons).
  std::vector<double> fast_over_ogd;

  const BenchCell* cell(Algorithm algorithm, std::size_t dim) const;
  std::optional<double> slope(Algorithm algorithm) const;
};

// Times every (algorithm, dim) cell on the default synthetic AR stream of
// n + 1 samples: one warm-up run, then `repeats` timed runs, median kept.
// Cells run sequentially. Throws InvalidParameter for repeats == 0, empty or
// unsorted dims.
BenchReport bench_sweep(std::span<const std::size_t> dims, std::size_t n, std::size_t repeats,
                        std::span<const Algorithm> algorithms, const BenchOptions& options = {});

// Least-squares slope of log(y) against log(x). Needs >= 2 points.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

// First t at which the curve falls below factor * final after having been at
// or above it; nullopt when the curve never comes down from above that level.
std::optional<std::size_t> convergence_step(std::span<const double> curve, double factor = 2.0);

}  // namespace fons::harness
