#include "fons/harness/report_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fons/errors.h"

namespace fons::harness {
namespace {

using nlohmann::json;

json params_json(const HyperParams& p) {
  return {{"dim", p.dim}, {"step_size", p.step_size}, {"alpha", p.ridge}, {"epsilon", p.epsilon}};
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_json(const RunMetrics& m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "run";
  j["algorithm"] = std::string(to_string(m.algorithm));
  j["precision"] = std::string(to_string(m.precision));
  j["params"] = params_json(m.params);
  j["steps"] = m.steps;
  j["cumulative_abs_loss"] = m.cumulative_abs_loss;
  j["final_mse"] = m.final_mse;
  j["wall_time_ns"] = m.wall_time_ns;
  j["breakdown_count"] = m.breakdown_count;
  j["ewma_decay"] = m.ewma_decay;
  j["running_mse"] = m.running_mse;
  j["ewma_mse"] = m.ewma_mse;
  if (!m.abs_error.empty()) j["per_step_abs_error"] = m.abs_error;
  j["final_weights"] = m.final_weights;
  return j.dump(2) + "\n";
}

std::string to_json(const EquivalenceReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "compare";
  j["precision"] = std::string(to_string(r.precision));
  j["steps"] = r.steps;
  j["tolerance"] = r.tolerance;
  j["max_weight_deviation"] = r.max_weight_deviation;
  j["max_prediction_deviation"] = r.max_prediction_deviation;
  j["max_eta_deviation"] = r.max_eta_deviation;
  j["max_mse_deviation"] = r.max_mse_deviation;
  j["first_deviation_step"] =
      r.first_deviation_step ? json(*r.first_deviation_step) : json(nullptr);
  j["within_tolerance"] = r.within_tolerance();
  return j.dump(2) + "\n";
}

std::string to_json(const BenchReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bench";
  j["dims"] = r.dims;
  j["steps"] = r.steps;
  j["repeats"] = r.repeats;
  json algos = json::array();
  for (auto a : r.algorithms) algos.push_back(std::string(to_string(a)));
  j["algorithms"] = algos;
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"algorithm", std::string(to_string(c.algorithm))},
                     {"dim", c.dim},
                     {"run_ns", c.run_ns},
                     {"median_ns", c.median_ns},
                     {"mean_time_per_step_ns", c.time_per_step_ns}});
  }
  j["cells"] = cells;
  json slopes = json::object();
  for (const auto& s : r.slopes)
    slopes[std::string(to_string(s.algorithm))] = s.slope ? json(*s.slope) : json(nullptr);
  j["scaling_exponent"] = slopes;
  // time_regular / time_fast, per dim
  j["relative_gain_regular_over_fast"] = r.relative_gain;
  j["ratio_fast_over_ogd"] = r.fast_over_ogd;
  return j.dump(2) + "\n";
}

std::string to_csv(const RunMetrics& m) {
  std::ostringstream out;
  const bool with_abs = !m.abs_error.empty();
  out << "t,running_mse,ewma_mse" << (with_abs ? ",abs_error" : "") << "\n";
  for (std::size_t t = 0; t < m.running_mse.size(); ++t) {
    out << t << ',' << number(m.running_mse[t]) << ',' << number(m.ewma_mse[t]);
    if (with_abs) out << ',' << number(m.abs_error[t]);
    out << "\n";
  }
  return out.str();
}

std::string to_csv(const EquivalenceReport& r) {
  std::ostringstream out;
  out << "steps,tolerance,max_weight_deviation,max_prediction_deviation,max_eta_deviation,"
         "max_mse_deviation,first_deviation_step,within_tolerance\n";
  out << r.steps << ',' << number(r.tolerance) << ',' << number(r.max_weight_deviation) << ','
      << number(r.max_prediction_deviation) << ',' << number(r.max_eta_deviation) << ','
      << number(r.max_mse_deviation) << ','
      << (r.first_deviation_step ? std::to_string(*r.first_deviation_step) : std::string()) << ','
      << (r.within_tolerance() ? "true" : "false") << "\n";
  return out.str();
}

std::string to_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "algorithm,dim,steps,repeats,median_ns,mean_time_per_step_ns\n";
  for (const auto& c : r.cells) {
    out << to_string(c.algorithm) << ',' << c.dim << ',' << r.steps << ',' << r.repeats << ','
        << number(c.median_ns) << ',' << number(c.time_per_step_ns) << "\n";
  }
  return out.str();
}

std::string samples_to_csv(std::span<const double> samples) {
  std::string out = "value\n";
  for (double v : samples) {
    out += number(v);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot open for writing: " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw DataError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot rename into place: " + path.string());
  }
}

}  // namespace fons::harness
