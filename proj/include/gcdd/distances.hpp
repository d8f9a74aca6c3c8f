#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcdd/byte_sequence.hpp"
#include "gcdd/error.hpp"
#include "gcdd/functionals.hpp"
#include "gcdd/lzw.hpp"

namespace gcdd {

namespace detail {

// (joint - min) / max, the shape shared by NCD and GCDD.
inline double normalized_excess(double joint, double a, double b) {
  const double hi = std::max(a, b);
  if (!(hi > 0.0))
    throw data_error("degenerate functional value");
  return (joint - std::min(a, b)) / hi;
}

inline std::size_t count_shared(const std::vector<std::string> &a,
                                const std::vector<std::string> &b) {
  std::size_t shared = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

inline void require_same_length(std::span<const double> a,
                                std::span<const double> b, std::size_t min) {
  if (a.size() != b.size())
    throw usage_error("series length mismatch: " + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()));
  if (a.size() < min)
    throw usage_error("series must have at least " + std::to_string(min) +
                      " values");
}

} // namespace detail

// --- compression measures -------------------------------------------------

/// NCD in the direction x·y, with C the LZW compressor.
inline double ncd_raw(const ByteSequence &x, const ByteSequence &y) {
  return detail::normalized_excess(
      static_cast<double>(lzw_compressed_length(concat(x, y))),
      static_cast<double>(lzw_compressed_length(x)),
      static_cast<double>(lzw_compressed_length(y)));
}

/// NCD averaged over both concatenation orders.
inline double ncd(const ByteSequence &x, const ByteSequence &y) {
  const auto cx = static_cast<double>(lzw_compressed_length(x));
  const auto cy = static_cast<double>(lzw_compressed_length(y));
  const auto cxy = static_cast<double>(lzw_compressed_length(concat(x, y)));
  const auto cyx = static_cast<double>(lzw_compressed_length(concat(y, x)));
  return (detail::normalized_excess(cxy, cx, cy) +
          detail::normalized_excess(cyx, cx, cy)) /
         2.0;
}

/// Share of D(x) not found in D(y). Intersection counts distinct patterns.
inline double fcd_raw(const LzwDictionary &dx, const LzwDictionary &dy) {
  if (dx.size() == 0)
    throw data_error("input too short for FCD");
  const std::size_t shared =
      detail::count_shared(dx.sorted_patterns(), dy.sorted_patterns());
  return static_cast<double>(dx.size() - shared) /
         static_cast<double>(dx.size());
}

inline double fcd_raw(const ByteSequence &x, const ByteSequence &y) {
  return fcd_raw(lzw_pass(x).dictionary, lzw_pass(y).dictionary);
}

/// Symmetric FCD: the larger of the two directions.
inline double fcd(const ByteSequence &x, const ByteSequence &y) {
  const auto dx = lzw_pass(x).dictionary;
  const auto dy = lzw_pass(y).dictionary;
  return std::max(fcd_raw(dx, dy), fcd_raw(dy, dx));
}

/// GCDD for one functional in the direction x·y.
inline double gcdd_raw(const ByteSequence &x, const ByteSequence &y,
                       Functional phi) {
  const PhiFunctional f(phi);
  return detail::normalized_excess(f(concat(x, y)), f(x), f(y));
}

struct GcddVector {
  std::vector<std::pair<Functional, double>> components;

  double operator[](std::size_t i) const { return components.at(i).second; }
  std::size_t size() const noexcept { return components.size(); }
};

/// GCDD vector, each component averaged over both concatenation orders.
/// Components follow the order of `functionals`.
inline GcddVector gcdd(const ByteSequence &x, const ByteSequence &y,
                       std::span<const Functional> functionals) {
  if (functionals.empty())
    throw usage_error("gcdd: at least one functional required");
  GcddVector out;
  out.components.reserve(functionals.size());
  const ByteSequence xy = concat(x, y);
  const ByteSequence yx = concat(y, x);
  for (Functional phi : functionals) {
    const PhiFunctional f(phi);
    const double fx = f(x);
    const double fy = f(y);
    const double value = (detail::normalized_excess(f(xy), fx, fy) +
                          detail::normalized_excess(f(yx), fx, fy)) /
                         2.0;
    out.components.emplace_back(phi, value);
  }
  return out;
}

// --- classical baselines --------------------------------------------------

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  detail::require_same_length(a, b, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// 1 - r with r the Pearson correlation; in [0, 2].
inline double pearson_distance(std::span<const double> a,
                               std::span<const double> b) {
  detail::require_same_length(a, b, 2);
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    throw data_error("zero variance");
  const double r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  return 1.0 - r;
}

/// Sample autocorrelations at lags 1..max_lag.
inline std::vector<double> autocorrelation(std::span<const double> a,
                                           std::size_t max_lag) {
  if (max_lag < 1 || max_lag >= a.size())
    throw usage_error("max_lag must satisfy 1 <= max_lag < length");
  double mean = 0.0;
  for (double v : a)
    mean += v;
  mean /= static_cast<double>(a.size());
  double denom = 0.0;
  for (double v : a)
    denom += (v - mean) * (v - mean);
  if (denom == 0.0)
    throw data_error("zero variance");
  std::vector<double> acf(max_lag);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double num = 0.0;
    for (std::size_t t = 0; t + lag < a.size(); ++t)
      num += (a[t] - mean) * (a[t + lag] - mean);
    acf[lag - 1] = num / denom;
  }
  return acf;
}

inline double acf_distance(std::span<const double> a, std::span<const double> b,
                           std::size_t max_lag = 10) {
  detail::require_same_length(a, b, 2);
  const auto ra = autocorrelation(a, max_lag);
  const auto rb = autocorrelation(b, max_lag);
  return euclidean(ra, rb);
}

/// First-order temporal correlation of the two series' increments.
inline double temporal_correlation(std::span<const double> a,
                                   std::span<const double> b) {
  detail::require_same_length(a, b, 2);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t t = 0; t + 1 < a.size(); ++t) {
    const double da = a[t + 1] - a[t];
    const double db = b[t + 1] - b[t];
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    throw data_error("flat series");
  return sab / (std::sqrt(saa) * std::sqrt(sbb));
}

/// Euclidean distance modulated by 2 / (1 + exp(k·CORT)).
inline double cort_distance(std::span<const double> a, std::span<const double> b,
                            double k = 2.0) {
  if (!(k >= 0.0))
    throw usage_error("cort k must be >= 0");
  const double cort = temporal_correlation(a, b);
  const double tune = 2.0 / (1.0 + std::exp(k * cort));
  return tune * euclidean(a, b);
}

} // namespace gcdd
