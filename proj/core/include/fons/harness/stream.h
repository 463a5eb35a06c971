#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fons::harness {

enum class SourceKind { kCsvColumn, kPcm16Mono, kSyntheticAr };

const char* to_string(SourceKind kind);

// A finite, fully buffered sample sequence together with where it came from.
struct StreamSource {
  SourceKind kind = SourceKind::kSyntheticAr;
  std::string origin;
  std::vector<double> samples;
};

// Column to read from a CSV file. A non-empty name selects by header and
// requires a header row; otherwise index is used (0-based) and a first row
// that does not parse in that column is taken as a header.
struct ColumnSelector {
  std::size_t index = 0;
  std::string name;
};

// One sample per row, comma separated. Blank lines are skipped.
// Throws FileNotFound, or ParseError carrying the 1-based line number.
StreamSource ingest_csv(const std::filesystem::path& path, const ColumnSelector& column = {},
                        std::optional<std::size_t> cap = std::nullopt);

// RIFF/WAVE, PCM 16-bit little-endian, mono. Samples are divided by 32768.
// Throws FileNotFound or UnsupportedFormat.
StreamSource ingest_pcm16(const std::filesystem::path& path,
                          std::optional<std::size_t> cap = std::nullopt);

// Affine map sending min to -1 and max to +1. Throws DegenerateRange for a
// constant input and DataError for non-finite samples.
std::vector<double> scale_minmax(std::span<const double> samples);

struct ArSpec {
  std::vector<double> coeffs;  // x_t = sum_i coeffs[i] x_{t-1-i} + noise
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  // Emitted verbatim as the first samples; earlier history is zero.
  std::vector<double> initial;
};

// True when every root of z^p - c_1 z^{p-1} - ... - c_p lies strictly
// inside the unit circle (Schur-Cohn step-down test).
bool is_stable_ar(std::span<const double> coeffs);

// Deterministic for a fixed seed. Throws UnstableProcess.
StreamSource synth_ar(const ArSpec& spec);

// AR(5) [0.4, 0.2, 0.1, 0.05, 0.05], noise 0.1, min-max scaled to [-1, 1].
// Used by the benchmarks and as the CLI's "synthetic" input.
ArSpec default_ar_spec(std::size_t length, std::uint64_t seed);
StreamSource default_synthetic_stream(std::size_t length, std::uint64_t seed);

}  // namespace fons::harness
