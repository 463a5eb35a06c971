#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "fons/harness/experiments.h"
#include "fons/harness/run.h"

namespace fons::harness {

// Bumped whenever a field is renamed or removed.
inline constexpr int kSchemaVersion = 1;

std::string to_json(const RunMetrics& metrics);
std::string to_json(const EquivalenceReport& report);
std::string to_json(const BenchReport& report);

// Flat CSV: one row per step (run), one row (compare), one row per cell (bench).
std::string to_csv(const RunMetrics& metrics);
std::string to_csv(const EquivalenceReport& report);
std::string to_csv(const BenchReport& report);

// Single "value" column with a header row.
std::string samples_to_csv(std::span<const double> samples);

// Writes to a temporary sibling and renames it over path, so readers never
// see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fons::harness
