#include "fons/harness/stream.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <string_view>

#include "fons/errors.h"

namespace fons::harness {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

const char* to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kCsvColumn: return "csv_column";
    case SourceKind::kPcm16Mono: return "pcm16_mono";
    case SourceKind::kSyntheticAr: return "synthetic_ar";
  }
  return "unknown";
}

StreamSource ingest_csv(const std::filesystem::path& path, const ColumnSelector& column,
                        std::optional<std::size_t> cap) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());

  StreamSource source{SourceKind::kCsvColumn, path.string(), {}};
  std::size_t col = column.index;
  bool seen_first = false;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (cap && source.samples.size() >= *cap) break;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split(view);

    if (!seen_first) {
      seen_first = true;
      if (!column.name.empty()) {
        const auto it = std::find_if(fields.begin(), fields.end(),
                                     [&](std::string_view f) { return trim(f) == column.name; });
        if (it == fields.end())
          throw ParseError(row, "no column named '" + column.name + "' in header");
        col = static_cast<std::size_t>(std::distance(fields.begin(), it));
        continue;
      }
      if (col < fields.size() && !parse_real(fields[col])) continue;  // header row
    }

    if (col >= fields.size())
      throw ParseError(row, "missing column " + std::to_string(col));
    const auto value = parse_real(fields[col]);
    if (!value) throw ParseError(row, "not a number: '" + std::string(trim(fields[col])) + "'");
    source.samples.push_back(*value);
  }
  return source;
}

StreamSource ingest_pcm16(const std::filesystem::path& path, std::optional<std::size_t> cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) != "RIFF" ||
      std::string_view(reinterpret_cast<const char*>(bytes.data() + 8), 4) != "WAVE")
    throw UnsupportedFormat("not a RIFF/WAVE file: " + path.string());

  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string_view id(reinterpret_cast<const char*>(bytes.data() + pos), 4);
    const std::size_t size = le32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min(size, bytes.size() - body);

    if (id == "fmt ") {
      if (available < 16) throw UnsupportedFormat("truncated fmt chunk");
      const unsigned char* f = bytes.data() + body;
      std::uint16_t format = le16(f);
      const std::uint16_t channels = le16(f + 2);
      const std::uint16_t bits = le16(f + 14);
      if (format == 0xFFFE && available >= 26) format = le16(f + 24);  // extensible sub-format
      if (format != 1) throw UnsupportedFormat("compressed or non-PCM WAV (format " + std::to_string(format) + ")");
      if (channels != 1) throw UnsupportedFormat("expected mono, got " + std::to_string(channels) + " channels");
      if (bits != 16) throw UnsupportedFormat("expected 16-bit samples, got " + std::to_string(bits));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw UnsupportedFormat("data chunk before fmt chunk");
      std::size_t count = available / 2;
      if (cap) count = std::min(count, *cap);
      StreamSource source{SourceKind::kPcm16Mono, path.string(), {}};
      source.samples.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        const auto raw = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i));
        source.samples.push_back(static_cast<double>(raw) / 32768.0);
      }
      return source;
    }
    pos = body + size + (size & 1);
  }
  throw UnsupportedFormat("no data chunk in " + path.string());
}

std::vector<double> scale_minmax(std::span<const double> samples) {
  if (samples.empty()) return {};
  for (double v : samples)
    if (!std::isfinite(v)) throw DataError("non-finite sample, cannot scale");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  const double min = *lo;
  const double max = *hi;
  if (!(max > min)) throw DegenerateRange();
  const double scale = 2.0 / (max - min);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = samples[i] == max ? 1.0 : (samples[i] - min) * scale - 1.0;
  }
  return out;
}

bool is_stable_ar(std::span<const double> coeffs) {
  // a(z) = 1 - c_1 z^-1 - ... - c_p z^-p; step down through the reflection
  // coefficients, all of which must lie strictly inside (-1, 1).
  std::vector<double> a(coeffs.size() + 1);
  a[0] = 1.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!std::isfinite(coeffs[i])) return false;
    a[i + 1] = -coeffs[i];
  }
  for (std::size_t m = coeffs.size(); m >= 1; --m) {
    const double k = a[m];
    if (!(std::abs(k) < 1.0)) return false;
    const double denom = 1.0 - k * k;
    std::vector<double> next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = (a[i] - k * a[m - i]) / denom;
    a.assign(next.begin(), next.end());
  }
  return true;
}

StreamSource synth_ar(const ArSpec& spec) {
  if (!is_stable_ar(spec.coeffs)) throw UnstableProcess("AR coefficients do not define a stable process");
  if (!(spec.noise_std >= 0) || !std::isfinite(spec.noise_std))
    throw InvalidParameter("noise_std must be a non-negative finite number");

  StreamSource source{SourceKind::kSyntheticAr, "synthetic_ar", std::vector<double>(spec.length, 0.0)};
  auto& x = source.samples;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t p = spec.coeffs.size();
  for (std::size_t t = 0; t < spec.length; ++t) {
    if (t < spec.initial.size()) {
      x[t] = spec.initial[t];
      continue;
    }
    double v = 0.0;
    for (std::size_t i = 0; i < p && i < t; ++i) v += spec.coeffs[i] * x[t - 1 - i];
    if (spec.noise_std > 0) v += spec.noise_std * noise(rng);
    x[t] = v;
  }
  return source;
}

ArSpec default_ar_spec(std::size_t length, std::uint64_t seed) {
  return ArSpec{{0.4, 0.2, 0.1, 0.05, 0.05}, 0.1, seed, length, {}};
}

StreamSource default_synthetic_stream(std::size_t length, std::uint64_t seed) {
  auto source = synth_ar(default_ar_spec(length, seed));
  if (source.samples.size() >= 2) source.samples = scale_minmax(source.samples);
  return source;
}

}  // namespace fons::harness
