#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fons::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericalError = 3,
  kEquivalenceFailure = 4,
};

// Every flag of the command line. Options can also be set through FONS_*
// environment variables (FONS_DIM, FONS_STEP_SIZE, ...).
struct CliConfig {
  std::string subcommand;
  std::string algo = "fast-ons";
  std::size_t dim = 64;
  double step_size = 0.003;
  double alpha = 1.0;
  double epsilon = 1e-8;
  std::string input = "synthetic";
  std::string input_format;  // csv | wav | synth; inferred when empty
  std::string output = "-";  // "-" is stdout
  std::string output_format = "json";
  std::uint64_t seed = 42;
  std::optional<std::size_t> cap;
  std::vector<std::size_t> bench_dims;
  std::size_t repeats = 3;

  // Beyond the core set.
  std::vector<std::string> algos{"ons", "fast-ons"};
  double tolerance = 1e-6;
  std::vector<double> coeffs{0.4, 0.2, 0.1, 0.05, 0.05};
  double noise_std = 0.1;
  std::string column;
  std::string precision = "double";
  bool no_scale = false;
  bool abs_error = false;
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fons::cli
