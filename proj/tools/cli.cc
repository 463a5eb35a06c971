#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "fons/errors.h"
#include "fons/harness/experiments.h"
#include "fons/harness/report_io.h"
#include "fons/harness/run.h"
#include "fons/harness/stream.h"

namespace fons::cli {
namespace {

namespace fs = std::filesystem;
using namespace fons::harness;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_params(CLI::App& sub, CliConfig& c) {
  sub.add_option("--dim", c.dim, "Window length M")->envname("FONS_DIM")->capture_default_str();
  sub.add_option("--step-size", c.step_size, "Step size mu (updates scale with 1/mu)")
      ->envname("FONS_STEP_SIZE")
      ->capture_default_str();
  sub.add_option("--alpha", c.alpha, "Ridge alpha, A starts at alpha*I")
      ->envname("FONS_ALPHA")
      ->capture_default_str();
  sub.add_option("--epsilon", c.epsilon, "No weight update when |e| <= epsilon")
      ->envname("FONS_EPSILON")
      ->capture_default_str();
  sub.add_option("--precision", c.precision, "double | float")
      ->envname("FONS_PRECISION")
      ->check(CLI::IsMember({"double", "float"}))
      ->capture_default_str();
}

void add_input(CLI::App& sub, CliConfig& c) {
  sub.add_option("--input", c.input, "CSV/WAV path, or 'synthetic'")
      ->envname("FONS_INPUT")
      ->capture_default_str();
  sub.add_option("--input-format", c.input_format, "csv | wav | synth (default: from extension)")
      ->envname("FONS_INPUT_FORMAT")
      ->check(CLI::IsMember({"csv", "wav", "synth"}));
  sub.add_option("--column", c.column, "CSV column: 0-based index or header name")
      ->envname("FONS_COLUMN");
  sub.add_option("-n,--cap", c.cap, "Maximum number of samples to read or generate")
      ->envname("FONS_CAP");
  sub.add_option("--seed", c.seed, "Seed for synthetic data")->envname("FONS_SEED")->capture_default_str();
  sub.add_option("--coeffs", c.coeffs, "AR coefficients for synthetic data")
      ->envname("FONS_COEFFS")
      ->delimiter(',');
  sub.add_option("--noise-std", c.noise_std, "Noise standard deviation for synthetic data")
      ->envname("FONS_NOISE_STD")
      ->capture_default_str();
  sub.add_flag("--no-scale", c.no_scale, "Do not min-max scale the input to [-1, 1]")
      ->envname("FONS_NO_SCALE");
}

void add_output(CLI::App& sub, CliConfig& c) {
  sub.add_option("--output", c.output, "Output path ('-' for stdout)")
      ->envname("FONS_OUTPUT")
      ->capture_default_str();
  sub.add_option("--output-format", c.output_format, "json | csv")
      ->envname("FONS_OUTPUT_FORMAT")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

HyperParams params_of(const CliConfig& c) {
  HyperParams p{c.dim, c.step_size, c.alpha, c.epsilon};
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  return p;
}

Precision precision_of(const CliConfig& c) { return *parse_precision(c.precision); }

Algorithm algorithm_of(const std::string& name) {
  const auto a = parse_algorithm(name);
  if (!a) throw UsageError("unknown algorithm '" + name + "' (expected ogd, ons or fast-ons)");
  return *a;
}

std::string input_format_of(const CliConfig& c) {
  if (!c.input_format.empty()) return c.input_format;
  if (c.input == "synthetic") return "synth";
  std::string ext = fs::path(c.input).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext == ".wav" ? "wav" : "csv";
}

ColumnSelector column_of(const CliConfig& c) {
  ColumnSelector sel;
  if (c.column.empty()) return sel;
  if (std::all_of(c.column.begin(), c.column.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    sel.index = std::stoul(c.column);
  else
    sel.name = c.column;
  return sel;
}

std::vector<double> load_samples(const CliConfig& c) {
  const std::string format = input_format_of(c);
  StreamSource source;
  if (format == "synth") {
    source = synth_ar(ArSpec{c.coeffs, c.noise_std, c.seed, c.cap.value_or(10000), {}});
  } else if (format == "wav") {
    source = ingest_pcm16(c.input, c.cap);
  } else {
    source = ingest_csv(c.input, column_of(c), c.cap);
  }
  if (c.no_scale || source.samples.size() < 2) return std::move(source.samples);
  return scale_minmax(source.samples);
}

void emit(const CliConfig& c, const std::string& content, std::ostream& out) {
  if (c.output == "-") {
    out << content;
    out.flush();
    return;
  }
  write_file_atomic(c.output, content);
}

int cmd_run(const CliConfig& c, std::ostream& out) {
  const auto params = params_of(c);
  const auto algorithm = algorithm_of(c.algo);
  const auto samples = load_samples(c);
  RunOptions options;
  options.precision = precision_of(c);
  options.record_abs_error = c.abs_error;
  const auto metrics = run_stream(algorithm, params, samples, options);
  emit(c, c.output_format == "csv" ? to_csv(metrics) : to_json(metrics), out);
  return kOk;
}

int cmd_compare(const CliConfig& c, std::ostream& out) {
  const auto params = params_of(c);
  if (!(c.tolerance >= 0)) throw UsageError("tolerance must be >= 0");
  const auto samples = load_samples(c);
  const auto report = compare_trajectories(params, samples, c.tolerance, precision_of(c));
  emit(c, c.output_format == "csv" ? to_csv(report) : to_json(report), out);
  return report.within_tolerance() ? kOk : kEquivalenceFailure;
}

int cmd_bench(const CliConfig& c, std::ostream& out) {
  if (c.bench_dims.empty()) throw UsageError("--bench-dims must list at least one dimension");
  if (c.repeats == 0) throw UsageError("--repeats must be >= 1");
  std::vector<Algorithm> algorithms;
  for (const auto& name : c.algos) algorithms.push_back(algorithm_of(name));
  if (algorithms.empty()) throw UsageError("--algos must list at least one algorithm");

  std::vector<std::size_t> dims = c.bench_dims;
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  if (dims.front() < 1) throw UsageError("bench dims must be >= 1");

  BenchOptions options;
  options.params = params_of(c);
  options.seed = c.seed;
  const auto report = bench_sweep(dims, c.cap.value_or(100000), c.repeats, algorithms, options);
  emit(c, c.output_format == "csv" ? to_csv(report) : to_json(report), out);
  return kOk;
}

int cmd_synth(const CliConfig& c, std::ostream& out) {
  const auto source = synth_ar(ArSpec{c.coeffs, c.noise_std, c.seed, c.cap.value_or(1000), {}});
  emit(c, samples_to_csv(source.samples), out);
  return kOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Online linear prediction with regular and fast Online Newton Step", "fons"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run one learner over a stream and write its metrics");
  run_cmd->add_option("--algo", c.algo, "ogd | ons | fast-ons")
      ->envname("FONS_ALGO")
      ->capture_default_str();
  run_cmd->add_flag("--abs-error", c.abs_error, "Include per-step absolute error");
  add_params(*run_cmd, c);
  add_input(*run_cmd, c);
  add_output(*run_cmd, c);

  auto* compare_cmd = app.add_subcommand(
      "compare", "Run regular and fast ONS in lockstep; exit 4 if they deviate beyond tolerance");
  compare_cmd->add_option("--tolerance", c.tolerance, "Maximum allowed deviation")
      ->envname("FONS_TOLERANCE")
      ->capture_default_str();
  add_params(*compare_cmd, c);
  add_input(*compare_cmd, c);
  add_output(*compare_cmd, c);

  auto* bench_cmd = app.add_subcommand("bench", "Time per-step cost across window lengths");
  bench_cmd->add_option("--bench-dims", c.bench_dims, "Comma-separated window lengths")
      ->envname("FONS_BENCH_DIMS")
      ->delimiter(',');
  bench_cmd->add_option("--algos", c.algos, "Comma-separated algorithms")
      ->envname("FONS_ALGOS")
      ->delimiter(',');
  bench_cmd->add_option("--repeats", c.repeats, "Timed runs per cell (median kept)")
      ->envname("FONS_REPEATS")
      ->capture_default_str();
  bench_cmd->add_option("-n,--cap", c.cap, "Steps per run (default 100000)")->envname("FONS_CAP");
  bench_cmd->add_option("--seed", c.seed, "Seed for the synthetic stream")
      ->envname("FONS_SEED")
      ->capture_default_str();
  add_params(*bench_cmd, c);
  add_output(*bench_cmd, c);

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic AR stream as CSV");
  synth_cmd->add_option("-n,--cap", c.cap, "Number of samples (default 1000)")->envname("FONS_CAP");
  synth_cmd->add_option("--seed", c.seed, "Random seed")->envname("FONS_SEED")->capture_default_str();
  synth_cmd->add_option("--coeffs", c.coeffs, "AR coefficients")->envname("FONS_COEFFS")->delimiter(',');
  synth_cmd->add_option("--noise-std", c.noise_std, "Noise standard deviation")
      ->envname("FONS_NOISE_STD")
      ->capture_default_str();
  synth_cmd->add_option("--output", c.output, "Output path ('-' for stdout)")
      ->envname("FONS_OUTPUT")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "fons: " << one_line(e.what()) << "\n";
    return kUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(c, out);
    if (compare_cmd->parsed()) return cmd_compare(c, out);
    if (bench_cmd->parsed()) return cmd_bench(c, out);
    if (synth_cmd->parsed()) return cmd_synth(c, out);
  } catch (const UsageError& e) {
    err << "fons: " << one_line(e.what()) << "\n";
    return kUsage;
  } catch (const InvalidParameter& e) {
    err << "fons: " << one_line(e.what()) << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "fons: " << one_line(e.what()) << "\n";
    return kDataError;
  } catch (const NumericalError& e) {
    err << "fons: " << one_line(e.what()) << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "fons: " << one_line(e.what()) << "\n";
    return kDataError;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("fons");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fons::cli
