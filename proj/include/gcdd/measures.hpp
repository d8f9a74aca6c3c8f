#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcdd/byte_sequence.hpp"
#include "gcdd/dissimilarity_matrix.hpp"
#include "gcdd/distances.hpp"
#include "gcdd/functionals.hpp"
#include "gcdd/lzw.hpp"

namespace gcdd {

enum class Measure {
  kNcd,
  kFcd,
  kGcddSize,
  kGcddEntropy,
  kGcddHuffman,
  kEuclidean,
  kPearson,
  kAcf,
  kCort,
};

inline constexpr std::array<Measure, 9> kAllMeasures = {
    Measure::kNcd,       Measure::kFcd,         Measure::kGcddSize,
    Measure::kGcddEntropy, Measure::kGcddHuffman, Measure::kEuclidean,
    Measure::kPearson,   Measure::kAcf,         Measure::kCort};

inline std::string_view measure_name(Measure m) noexcept {
  switch (m) {
  case Measure::kNcd: return "ncd";
  case Measure::kFcd: return "fcd";
  case Measure::kGcddSize: return "gcdd-size";
  case Measure::kGcddEntropy: return "gcdd-entropy";
  case Measure::kGcddHuffman: return "gcdd-huffman";
  case Measure::kEuclidean: return "euclidean";
  case Measure::kPearson: return "pearson";
  case Measure::kAcf: return "acf";
  case Measure::kCort: return "cort";
  }
  return "?";
}

inline std::string measure_names() {
  std::string out;
  for (Measure m : kAllMeasures) {
    if (!out.empty())
      out += ", ";
    out += measure_name(m);
  }
  return out;
}

inline Measure parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures)
    if (measure_name(m) == name)
      return m;
  throw usage_error("unknown measure '" + std::string(name) +
                    "'; valid measures: " + measure_names());
}

/// Compression measures work on encoded bytes, the rest on raw values.
constexpr bool is_compression_measure(Measure m) noexcept {
  return m == Measure::kNcd || m == Measure::kFcd || m == Measure::kGcddSize ||
         m == Measure::kGcddEntropy || m == Measure::kGcddHuffman;
}

constexpr std::optional<Functional> gcdd_functional(Measure m) noexcept {
  switch (m) {
  case Measure::kGcddSize: return Functional::kDictSize;
  case Measure::kGcddEntropy: return Functional::kDictEntropy;
  case Measure::kGcddHuffman: return Functional::kDictHuffman;
  default: return std::nullopt;
  }
}

inline Measure gcdd_measure(Functional f) noexcept {
  switch (f) {
  case Functional::kDictSize: return Measure::kGcddSize;
  case Functional::kDictEntropy: return Measure::kGcddEntropy;
  case Functional::kDictHuffman: return Measure::kGcddHuffman;
  }
  return Measure::kGcddSize;
}

struct MeasureSpec {
  Measure measure = Measure::kGcddEntropy;
  std::size_t max_lag = 10;
  double cort_k = 2.0;
};

/// Per-object LZW state for GCDD matrices. For every object the scanner state
/// after consuming x is kept unfinished, so Φ(x·y) costs a scan of y on top
/// of the cached table; Φ(x) is evaluated once.
class PhiCache {
public:
  PhiCache(std::span<const ByteSequence> objects,
           std::span<const Functional> functionals)
      : objects_(objects), functionals_(functionals.begin(), functionals.end()) {
    if (functionals_.empty())
      throw usage_error("at least one functional required");
    unsigned track = LzwScanner::kCountOnly;
    for (Functional f : functionals_)
      track |= required_tracking(f);
    for (const auto &x : objects)
      longest_ = std::max(longest_, x.size());

    prefixes_.reserve(objects.size());
    values_.reserve(objects.size() * functionals_.size());
    for (const auto &x : objects) {
      LzwScanner scanner(track, x.size() + longest_);
      scanner.feed(x.bytes());
      prefixes_.push_back(scanner);
      scanner.finish();
      for (Functional f : functionals_)
        values_.push_back(evaluate(f, scanner));
    }
  }

  std::size_t size() const noexcept { return prefixes_.size(); }
  std::span<const Functional> functionals() const noexcept { return functionals_; }

  /// Φ(x_i) for each functional.
  std::span<const double> values(std::size_t i) const noexcept {
    return {values_.data() + i * functionals_.size(), functionals_.size()};
  }

  /// Φ(x_i·x_j) for each functional, written to `out`.
  void joint(std::size_t i, std::size_t j, std::span<double> out) const {
    LzwScanner scanner = prefixes_[i];
    scanner.feed(objects_[j].bytes());
    scanner.finish();
    for (std::size_t k = 0; k < functionals_.size(); ++k)
      out[k] = evaluate(functionals_[k], scanner);
  }

  /// Φ(x_i·x_j) for every j != i. Works on one private copy of x_i's state,
  /// rolled back after each continuation. out is indexed [j * k + functional].
  void joint_row(std::size_t i, std::span<double> out) const {
    const std::size_t k = functionals_.size();
    LzwScanner scanner = prefixes_[i];
    const auto mark = scanner.mark(longest_);
    for (std::size_t j = 0; j < prefixes_.size(); ++j) {
      if (j == i)
        continue;
      scanner.feed(objects_[j].bytes());
      scanner.finish();
      for (std::size_t c = 0; c < k; ++c)
        out[j * k + c] = evaluate(functionals_[c], scanner);
      scanner.rollback(mark);
      scanner.mark(longest_);
    }
  }

  /// Symmetrized GCDD component c between objects i and j.
  double distance(std::size_t i, std::size_t j, std::size_t c = 0) const {
    std::vector<double> xy(functionals_.size()), yx(functionals_.size());
    joint(i, j, xy);
    joint(j, i, yx);
    const double a = values(i)[c];
    const double b = values(j)[c];
    return (detail::normalized_excess(xy[c], a, b) +
            detail::normalized_excess(yx[c], a, b)) /
           2.0;
  }

private:
  std::span<const ByteSequence> objects_;
  std::vector<Functional> functionals_;
  std::vector<LzwScanner> prefixes_;
  std::vector<double> values_;
  std::size_t longest_ = 0;
};

/// One matrix per functional. All ordered joint values Φ(x_i·x_j) are
/// computed row by row first, then combined per pair.
inline std::vector<DissimilarityMatrix>
gcdd_matrices(std::span<const ByteSequence> objects,
              std::span<const Functional> functionals, unsigned workers = 1) {
  const PhiCache cache(objects, functionals);
  const std::size_t n = objects.size();
  const std::size_t k = functionals.size();
  if (n < 2)
    throw usage_error("a dissimilarity matrix needs at least 2 objects");
  // joint[(i * n + j) * k + c] = Φ_c(x_i·x_j)
  std::vector<double> joint(n * n * k, 0.0);
  parallel_rows(
      n,
      [&](std::size_t i) {
        cache.joint_row(i, std::span<double>(joint).subspan(i * n * k, n * k));
      },
      workers);

  std::vector<DissimilarityMatrix> out;
  out.reserve(k);
  for (std::size_t c = 0; c < k; ++c)
    out.push_back(build_matrix(
        n, std::string(measure_name(gcdd_measure(functionals[c]))),
        [&](std::size_t i, std::size_t j) {
          const double a = cache.values(i)[c];
          const double b = cache.values(j)[c];
          return (detail::normalized_excess(joint[(i * n + j) * k + c], a, b) +
                  detail::normalized_excess(joint[(j * n + i) * k + c], a, b)) /
                 2.0;
        },
        1));
  return out;
}

/// Matrix of a compression measure over encoded objects.
inline DissimilarityMatrix
compression_matrix(std::span<const ByteSequence> objects, Measure measure,
                   unsigned workers = 1) {
  const std::string name(measure_name(measure));
  if (auto phi = gcdd_functional(measure)) {
    const std::array<Functional, 1> fs{*phi};
    return std::move(gcdd_matrices(objects, fs, workers).front());
  }
  if (measure == Measure::kNcd) {
    // C is treated as a black-box compressor: C(x) is reused across pairs,
    // each joint term runs the full compressor on the concatenation.
    std::vector<double> single;
    single.reserve(objects.size());
    for (const auto &x : objects)
      single.push_back(static_cast<double>(lzw_compressed_length(x)));
    return build_matrix(
        objects.size(), name,
        [&](std::size_t i, std::size_t j) {
          const auto cxy = static_cast<double>(
              lzw_compressed_length(concat(objects[i], objects[j])));
          const auto cyx = static_cast<double>(
              lzw_compressed_length(concat(objects[j], objects[i])));
          return (detail::normalized_excess(cxy, single[i], single[j]) +
                  detail::normalized_excess(cyx, single[i], single[j])) /
                 2.0;
        },
        workers);
  }
  if (measure == Measure::kFcd) {
    std::vector<std::vector<std::string>> patterns;
    patterns.reserve(objects.size());
    for (const auto &x : objects)
      patterns.push_back(lzw_pass(x).dictionary.sorted_patterns());
    return build_matrix(
        objects.size(), name,
        [&](std::size_t i, std::size_t j) {
          if (patterns[i].empty() || patterns[j].empty())
            throw data_error("input too short for FCD");
          const auto shared =
              static_cast<double>(detail::count_shared(patterns[i], patterns[j]));
          const auto ni = static_cast<double>(patterns[i].size());
          const auto nj = static_cast<double>(patterns[j].size());
          return std::max((ni - shared) / ni, (nj - shared) / nj);
        },
        workers);
  }
  throw usage_error("measure '" + name + "' does not operate on byte sequences");
}

/// Matrix of a baseline measure over raw series.
inline DissimilarityMatrix
series_matrix(std::span<const std::vector<double>> series, const MeasureSpec &spec,
              unsigned workers = 1) {
  const std::string name(measure_name(spec.measure));
  switch (spec.measure) {
  case Measure::kEuclidean:
    return build_matrix(
        series.size(), name,
        [&](std::size_t i, std::size_t j) { return euclidean(series[i], series[j]); },
        workers);
  case Measure::kPearson:
    return build_matrix(
        series.size(), name,
        [&](std::size_t i, std::size_t j) {
          return pearson_distance(series[i], series[j]);
        },
        workers);
  case Measure::kAcf: {
    std::vector<std::vector<double>> acfs;
    acfs.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
      try {
        acfs.push_back(autocorrelation(series[i], spec.max_lag));
      } catch (const data_error &e) {
        throw pair_error(i, i, e.what());
      }
    }
    return build_matrix(
        series.size(), name,
        [&](std::size_t i, std::size_t j) { return euclidean(acfs[i], acfs[j]); },
        workers);
  }
  case Measure::kCort:
    return build_matrix(
        series.size(), name,
        [&](std::size_t i, std::size_t j) {
          return cort_distance(series[i], series[j], spec.cort_k);
        },
        workers);
  default:
    throw usage_error("measure '" + name + "' operates on encoded byte sequences");
  }
}

/// m(x, x) before the diagonal is forced to zero.
inline double raw_self_distance(const ByteSequence &x, Measure measure) {
  switch (measure) {
  case Measure::kNcd:
    return ncd_raw(x, x);
  case Measure::kFcd:
    return fcd_raw(x, x);
  default:
    if (auto phi = gcdd_functional(measure))
      return gcdd_raw(x, x, *phi);
    throw usage_error("raw_self_distance: not a compression measure");
  }
}

} // namespace gcdd
