#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "gcdd/byte_sequence.hpp"
#include "gcdd/dissimilarity_matrix.hpp"
#include "gcdd/error.hpp"
#include "gcdd/random.hpp"

namespace gcdd {

/// Control-chart shapes, in the row-block order of the UCI file.
enum class ChartClass : std::uint8_t {
  kNormal,
  kCyclic,
  kIncreasingTrend,
  kDecreasingTrend,
  kUpwardShift,
  kDownwardShift,
};

inline constexpr std::size_t kChartClassCount = 6;

inline constexpr std::array<ChartClass, kChartClassCount> kAllChartClasses = {
    ChartClass::kNormal,          ChartClass::kCyclic,
    ChartClass::kIncreasingTrend, ChartClass::kDecreasingTrend,
    ChartClass::kUpwardShift,     ChartClass::kDownwardShift};

inline std::string_view class_symbol(ChartClass c) noexcept {
  static constexpr std::array<std::string_view, kChartClassCount> symbols = {
      "N", "C", "IT", "DT", "US", "DS"};
  return symbols[static_cast<std::size_t>(c)];
}

inline ChartClass parse_class_symbol(std::string_view s) {
  for (ChartClass c : kAllChartClasses)
    if (class_symbol(c) == s)
      return c;
  throw data_error("unknown class label '" + std::string(s) + "'");
}

struct LabeledSeries {
  std::vector<double> values;
  ChartClass label = ChartClass::kNormal;

  friend bool operator==(const LabeledSeries &, const LabeledSeries &) = default;
};

inline std::vector<int> class_ids(const std::vector<LabeledSeries> &data) {
  std::vector<int> ids;
  ids.reserve(data.size());
  for (const auto &s : data)
    ids.push_back(static_cast<int>(s.label));
  return ids;
}

inline std::vector<std::vector<double>>
series_values(const std::vector<LabeledSeries> &data) {
  std::vector<std::vector<double>> out;
  out.reserve(data.size());
  for (const auto &s : data)
    out.push_back(s.values);
  return out;
}

// --- generation -----------------------------------------------------------

/// Shape parameters of the synthetic generator.
struct GeneratorParams {
  double baseline = 30.0;
  double noise_range = 3.0; // r ~ U(-range, range)
  double noise_scale = 2.0; // noise = r * scale
  double cycle_amplitude_lo = 10.0, cycle_amplitude_hi = 15.0;
  double cycle_period_lo = 10.0, cycle_period_hi = 15.0;
  double trend_lo = 0.2, trend_hi = 0.5;
  double shift_lo = 7.5, shift_hi = 20.0;
};

/// One series of the given class; `seed` fully determines it.
inline std::vector<double> generate_series(ChartClass cls, std::size_t length,
                                           std::uint64_t seed,
                                           const GeneratorParams &p = {}) {
  Rng rng(seed);
  std::vector<double> v(length);
  for (double &x : v)
    x = p.baseline + rng.uniform(-p.noise_range, p.noise_range) * p.noise_scale;

  switch (cls) {
  case ChartClass::kNormal:
    break;
  case ChartClass::kCyclic: {
    const double amplitude = rng.uniform(p.cycle_amplitude_lo, p.cycle_amplitude_hi);
    const double period = rng.uniform(p.cycle_period_lo, p.cycle_period_hi);
    for (std::size_t t = 0; t < length; ++t)
      v[t] += amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
    break;
  }
  case ChartClass::kIncreasingTrend:
  case ChartClass::kDecreasingTrend: {
    const double sign = cls == ChartClass::kIncreasingTrend ? 1.0 : -1.0;
    const double gradient = sign * rng.uniform(p.trend_lo, p.trend_hi);
    for (std::size_t t = 0; t < length; ++t)
      v[t] += gradient * static_cast<double>(t);
    break;
  }
  case ChartClass::kUpwardShift:
  case ChartClass::kDownwardShift: {
    const double sign = cls == ChartClass::kUpwardShift ? 1.0 : -1.0;
    const double magnitude = sign * rng.uniform(p.shift_lo, p.shift_hi);
    // Changepoint in the middle two quarters.
    const auto lo = static_cast<std::int64_t>(length / 4);
    const auto hi = static_cast<std::int64_t>((3 * length) / 4);
    const auto change = static_cast<std::size_t>(rng.integer(lo, hi));
    for (std::size_t t = change; t < length; ++t)
      v[t] += magnitude;
    break;
  }
  }
  return v;
}

/// per_class series of each class, class-major. Series i is seeded from
/// (seed, i), so any series can be regenerated on its own.
inline std::vector<LabeledSeries> generate(std::uint64_t seed, std::size_t per_class,
                                           std::size_t length,
                                           const GeneratorParams &params = {}) {
  if (per_class < 1)
    throw usage_error("per_class must be >= 1");
  if (length < 8)
    throw usage_error("series length must be >= 8");
  std::vector<LabeledSeries> out;
  out.reserve(per_class * kChartClassCount);
  std::uint64_t index = 0;
  for (ChartClass cls : kAllChartClasses)
    for (std::size_t k = 0; k < per_class; ++k, ++index)
      out.push_back({generate_series(cls, length, derive_seed(seed, index), params), cls});
  return out;
}

// --- UCI text format ------------------------------------------------------

struct ParsedDataset {
  std::vector<LabeledSeries> series;
  std::vector<std::string> warnings;
};

/// Whitespace-separated numeric rows. `columns` = 0 takes the arity of the
/// first row; any row of a different arity is an error naming the row.
inline std::vector<std::vector<double>> parse_rows(std::istream &in,
                                                   std::size_t columns = 0) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::vector<double> row;
    row.reserve(columns);
    std::size_t pos = 0;
    while (true) {
      pos = line.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos)
        break;
      const auto end = std::min(line.find_first_of(" \t\r", pos), line.size());
      const auto token = std::string_view(line).substr(pos, end - pos);
      double v = 0.0;
      try {
        v = parse_double(token, line_no);
      } catch (const data_error &) {
        throw data_error("row " + std::to_string(line_no) + ": bad number '" +
                         std::string(token) + "'");
      }
      if (!std::isfinite(v))
        throw data_error("row " + std::to_string(line_no) + ": non-finite value");
      row.push_back(v);
      pos = end;
    }
    if (columns == 0)
      columns = row.size();
    if (row.size() != columns)
      throw data_error("row " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " values, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw data_error("no data rows");
  return rows;
}

/// Parses the UCI control-chart file. Labels follow the file layout:
/// consecutive blocks of rows_per_class rows in N, C, IT, DT, US, DS order.
/// Rows outside complete blocks are dropped with a warning.
inline ParsedDataset parse_uci(std::istream &in, std::size_t rows_per_class = 100,
                               std::size_t columns = 60) {
  if (rows_per_class == 0)
    throw usage_error("rows_per_class must be >= 1");
  auto rows = parse_rows(in, columns);

  ParsedDataset out;
  const std::size_t expected = rows_per_class * kChartClassCount;
  std::size_t usable = std::min(rows.size(), expected);
  usable -= usable % rows_per_class;
  if (rows.size() != expected)
    out.warnings.push_back("expected " + std::to_string(expected) + " rows, found " +
                           std::to_string(rows.size()) + "; labeled " +
                           std::to_string(usable) + " rows in complete blocks");
  if (usable == 0)
    throw data_error("no complete class block of " + std::to_string(rows_per_class) +
                     " rows");
  out.series.reserve(usable);
  for (std::size_t i = 0; i < usable; ++i)
    out.series.push_back({std::move(rows[i]), kAllChartClasses[i / rows_per_class]});
  return out;
}

inline ParsedDataset parse_uci_file(const std::string &path,
                                    std::size_t rows_per_class = 100,
                                    std::size_t columns = 60) {
  std::ifstream in(path);
  if (!in)
    throw data_error("cannot open '" + path + "'");
  return parse_uci(in, rows_per_class, columns);
}

/// Same row format as the UCI file, values with 17 significant digits so
/// that a re-parse is exact.
inline void write_uci(std::ostream &out, const std::vector<LabeledSeries> &data) {
  for (const auto &s : data) {
    for (std::size_t t = 0; t < s.values.size(); ++t) {
      if (t)
        out << ' ';
      out << format_double(s.values[t]);
    }
    out << '\n';
  }
}

/// Labels CSV: header "index,label", one row per series.
inline void write_labels(std::ostream &out, const std::vector<ChartClass> &labels) {
  out << "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << ',' << class_symbol(labels[i]) << '\n';
}

inline std::vector<ChartClass> read_labels(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,label", 0) != 0)
    throw data_error("labels: expected header 'index,label'");
  std::vector<ChartClass> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw data_error("labels line " + std::to_string(line_no) + ": missing ','");
    const std::size_t index = static_cast<std::size_t>(
        parse_double(std::string_view(line).substr(0, comma), line_no));
    if (index != out.size())
      throw data_error("labels line " + std::to_string(line_no) + ": expected index " +
                       std::to_string(out.size()));
    out.push_back(parse_class_symbol(std::string_view(line).substr(comma + 1)));
  }
  return out;
}

/// Reads a data file and labels it from a labels CSV when one is given,
/// otherwise from the standard 100-row block layout.
inline ParsedDataset read_dataset(const std::string &data_path,
                                  const std::string &labels_path = {}) {
  if (labels_path.empty())
    return parse_uci_file(data_path);
  std::ifstream data_in(data_path);
  if (!data_in)
    throw data_error("cannot open '" + data_path + "'");
  std::ifstream labels_in(labels_path);
  if (!labels_in)
    throw data_error("cannot open '" + labels_path + "'");
  auto rows = parse_rows(data_in);
  const auto labels = read_labels(labels_in);
  if (rows.size() != labels.size())
    throw data_error("labels file has " + std::to_string(labels.size()) +
                     " rows but data file has " + std::to_string(rows.size()));
  ParsedDataset out;
  out.series.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.series.push_back({std::move(rows[i]), labels[i]});
  return out;
}

// --- byte encoding --------------------------------------------------------

enum class EncodingMode { kQuantize8, kRawIeee754 };

enum class RangePolicy { kPerSeries, kGlobal };

/// quantize8 maps each value to one of `levels` evenly spaced byte values
/// between 0 and 255 (levels = 256 is the plain affine map). The range is
/// either the series' own min-max or a fixed dataset-wide one; a degenerate
/// range maps everything to 128.
struct EncodingScheme {
  EncodingMode mode = EncodingMode::kQuantize8;
  RangePolicy range = RangePolicy::kPerSeries;
  unsigned levels = 256;
  double global_min = 0.0; // used when range == kGlobal
  double global_max = 0.0;
};

inline std::string_view encoding_name(EncodingMode m) noexcept {
  return m == EncodingMode::kQuantize8 ? "quantize8" : "raw";
}

inline EncodingMode parse_encoding(std::string_view name) {
  if (name == "quantize8")
    return EncodingMode::kQuantize8;
  if (name == "raw")
    return EncodingMode::kRawIeee754;
  throw usage_error("unknown encoding '" + std::string(name) +
                    "' (expected quantize8 or raw)");
}

inline std::string_view range_name(RangePolicy r) noexcept {
  return r == RangePolicy::kPerSeries ? "series" : "global";
}

inline RangePolicy parse_range(std::string_view name) {
  if (name == "series")
    return RangePolicy::kPerSeries;
  if (name == "global")
    return RangePolicy::kGlobal;
  throw usage_error("unknown range policy '" + std::string(name) +
                    "' (expected series or global)");
}

/// Quantization levels used by the pipeline: one level is roughly the width
/// of the noise band of a control chart, so patterns follow shape rather
/// than noise.
inline constexpr unsigned kPipelineLevels = 10;

/// Fills in the dataset-wide range for a global scheme.
inline EncodingScheme with_global_range(EncodingScheme scheme,
                                        const std::vector<LabeledSeries> &data) {
  scheme.range = RangePolicy::kGlobal;
  bool first = true;
  for (const auto &s : data)
    for (double v : s.values) {
      scheme.global_min = first ? v : std::min(scheme.global_min, v);
      scheme.global_max = first ? v : std::max(scheme.global_max, v);
      first = false;
    }
  return scheme;
}

/// The scheme the CLI and the benchmarks use unless told otherwise:
/// quantize8 against the dataset-wide range with kPipelineLevels levels.
inline EncodingScheme pipeline_encoding(const std::vector<LabeledSeries> &data,
                                        EncodingMode mode = EncodingMode::kQuantize8) {
  EncodingScheme scheme;
  scheme.mode = mode;
  scheme.levels = kPipelineLevels;
  return with_global_range(scheme, data);
}

inline ByteSequence encode(std::span<const double> values, const EncodingScheme &scheme) {
  if (values.empty())
    throw usage_error("cannot encode an empty series");
  for (double v : values)
    if (!std::isfinite(v))
      throw data_error("cannot encode a non-finite value");

  std::vector<std::uint8_t> bytes;
  if (scheme.mode == EncodingMode::kRawIeee754) {
    bytes.reserve(values.size() * 8);
    for (double v : values) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int shift = 56; shift >= 0; shift -= 8)
        bytes.push_back(static_cast<std::uint8_t>(bits >> shift));
    }
    return ByteSequence(std::move(bytes));
  }

  double lo = scheme.global_min;
  double hi = scheme.global_max;
  if (scheme.range == RangePolicy::kPerSeries) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
  }
  if (scheme.levels < 2 || scheme.levels > 256)
    throw usage_error("quantization levels must be in [2, 256]");
  const double top = static_cast<double>(scheme.levels - 1);
  bytes.reserve(values.size());
  for (double v : values) {
    if (hi == lo) {
      bytes.push_back(128);
      continue;
    }
    const double u = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
    const double byte = std::round(std::round(u * top) * 255.0 / top);
    bytes.push_back(static_cast<std::uint8_t>(byte));
  }
  return ByteSequence(std::move(bytes));
}

inline ByteSequence encode(const LabeledSeries &s, const EncodingScheme &scheme) {
  return encode(std::span<const double>(s.values), scheme);
}

inline std::vector<ByteSequence> encode_all(const std::vector<LabeledSeries> &data,
                                            const EncodingScheme &scheme) {
  std::vector<ByteSequence> out;
  out.reserve(data.size());
  for (const auto &s : data)
    out.push_back(encode(s, scheme));
  return out;
}

} // namespace gcdd
