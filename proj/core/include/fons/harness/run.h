#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fons/core.h"
#include "fons/predictors.h"

namespace fons::harness {

enum class Algorithm { kOgd, kOns, kFastOns };
enum class Precision { kDouble, kFloat };

// "ogd", "ons", "fast-ons".
std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(Precision precision);
std::optional<Precision> parse_precision(std::string_view name);

struct RunOptions {
  Precision precision = Precision::kDouble;
  // Per-step running/EWMA MSE series. Off for timing runs.
  bool record_series = true;
  bool record_abs_error = false;
  double ewma_decay = 0.01;
  BreakdownPolicy on_breakdown = BreakdownPolicy::kRebuild;
  bool ons_bias = false;
};

struct RunMetrics {
  Algorithm algorithm = Algorithm::kFastOns;
  Precision precision = Precision::kDouble;
  HyperParams params;
  std::size_t steps = 0;  // samples consumed - 1
  double cumulative_abs_loss = 0;
  double final_mse = 0;
  std::vector<double> running_mse;   // index t: mean of e_0^2 .. e_t^2
  std::vector<double> ewma_mse;      // ewma_t = (1 - decay) ewma_{t-1} + decay e_t^2
  std::vector<double> abs_error;     // |e_t|, only with record_abs_error
  std::vector<double> final_weights;
  std::int64_t wall_time_ns = 0;     // step loop only
  std::size_t breakdown_count = 0;
  double ewma_decay = 0.01;
};

// Primes the learner with samples[0], then runs one step per remaining
// sample. Fewer than two samples produce a zero-step run. Learner errors are
// re-thrown as StepFailure with the step index.
RunMetrics run_stream(Algorithm algorithm, const HyperParams& params,
                      std::span<const double> samples, const RunOptions& options = {});

}  // namespace fons::harness
