#include "bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <thread>

#include <sys/utsname.h>

#include "gcdd/pipeline.hpp"

namespace gcdd::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

/// One warm-up call, then `reps` timed calls.
std::vector<double> time_runs(const std::function<void()> &fn, std::size_t reps) {
  fn();
  std::vector<double> runs;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    fn();
    runs.push_back(seconds_since(start));
  }
  return runs;
}

double pairs_of(std::size_t n) { return static_cast<double>(n) * (n - 1) / 2.0; }

// Times single pairs the way the matrix builder evaluates them: per-object
// work (C(x), Φ(x), pattern lists) is prepared once, outside the clock.
std::vector<double> time_pairs(const std::vector<LabeledSeries> &data,
                               const std::vector<ByteSequence> &bytes, Measure m,
                               const MeasureSpec &spec, std::size_t count) {
  const std::size_t n = data.size();
  // Deterministic spread of pairs over the whole matrix.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; pairs.size() < std::min(count, n * (n - 1)); ++k) {
    const std::size_t i = (k * 7919) % n;
    const std::size_t j = (k * 104729 + 1) % n;
    if (i != j)
      pairs.emplace_back(i, j);
  }

  std::function<double(std::size_t, std::size_t)> pair;
  std::optional<PhiCache> cache;
  std::vector<double> single;
  std::vector<std::vector<std::string>> patterns;
  std::vector<std::vector<double>> acfs;
  if (auto phi = gcdd_functional(m)) {
    const std::array<Functional, 1> fs{*phi};
    cache.emplace(bytes, fs);
    pair = [&](std::size_t i, std::size_t j) { return cache->distance(i, j); };
  } else if (m == Measure::kNcd) {
    for (const auto &x : bytes)
      single.push_back(static_cast<double>(lzw_compressed_length(x)));
    pair = [&](std::size_t i, std::size_t j) {
      const auto a = static_cast<double>(lzw_compressed_length(concat(bytes[i], bytes[j])));
      const auto b = static_cast<double>(lzw_compressed_length(concat(bytes[j], bytes[i])));
      return (detail::normalized_excess(a, single[i], single[j]) +
              detail::normalized_excess(b, single[i], single[j])) / 2.0;
    };
  } else if (m == Measure::kFcd) {
    for (const auto &x : bytes)
      patterns.push_back(lzw_pass(x).dictionary.sorted_patterns());
    pair = [&](std::size_t i, std::size_t j) {
      return static_cast<double>(detail::count_shared(patterns[i], patterns[j]));
    };
  } else if (m == Measure::kAcf) {
    for (const auto &s : data)
      acfs.push_back(autocorrelation(s.values, spec.max_lag));
    pair = [&](std::size_t i, std::size_t j) { return euclidean(acfs[i], acfs[j]); };
  } else {
    pair = [&](std::size_t i, std::size_t j) {
      const auto &a = data[i].values;
      const auto &b = data[j].values;
      switch (m) {
      case Measure::kEuclidean: return euclidean(a, b);
      case Measure::kPearson: return pearson_distance(a, b);
      default: return cort_distance(a, b, spec.cort_k);
      }
    };
  }

  std::vector<double> out;
  out.reserve(pairs.size());
  volatile double sink = 0.0;
  for (auto [i, j] : pairs) {
    const auto start = Clock::now();
    sink = sink + pair(i, j);
    out.push_back(seconds_since(start));
  }
  return out;
}

nlohmann::ordered_json machine() {
  nlohmann::ordered_json doc;
  utsname u{};
  if (uname(&u) == 0) {
    doc["system"] = std::string(u.sysname) + " " + u.release;
    doc["arch"] = u.machine;
  }
  doc["hardware_threads"] = std::thread::hardware_concurrency();
#if defined(__clang__)
  doc["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  doc["compiler"] = std::string("gcc ") + __VERSION__;
#endif
#ifdef NDEBUG
  doc["optimized"] = true;
#else
  doc["optimized"] = false;
#endif
  return doc;
}

} // namespace

nlohmann::ordered_json run_bench(const std::vector<LabeledSeries> &data,
                                 const BenchOptions &options) {
  if (options.reps == 0)
    throw usage_error("--reps must be >= 1");
  if (options.measures.empty())
    throw usage_error("no measures to benchmark");
  if (data.size() < 2)
    throw data_error("benchmark needs at least 2 series");

  nlohmann::ordered_json doc;
  doc["series"] = data.size();
  doc["length"] = data.front().values.size();
  if (options.encodings.empty())
    throw usage_error("no encodings to benchmark");
  doc["levels"] = kPipelineLevels;
  doc["reps"] = options.reps;
  doc["workers"] = options.workers;
  doc["machine"] = machine();

  const auto values = series_values(data);
  auto matrix_of = [&](Measure m, const std::vector<ByteSequence> &b,
                       const std::vector<std::vector<double>> &v) {
    MeasureSpec spec = options.spec;
    spec.measure = m;
    if (is_compression_measure(m))
      return compression_matrix(b, m, options.workers);
    return series_matrix(v, spec, options.workers);
  };

  nlohmann::ordered_json by_encoding = nlohmann::ordered_json::object();
  for (EncodingMode mode : options.encodings) {
    const auto bytes = encode_all(data, pipeline_encoding(data, mode));
    nlohmann::ordered_json measures = nlohmann::ordered_json::object();
    for (Measure m : options.measures) {
      const auto runs = time_runs([&] { (void)matrix_of(m, bytes, values); }, options.reps);
      const double total = median(runs);
      MeasureSpec spec = options.spec;
      spec.measure = m;
      const auto per_pair = time_pairs(data, bytes, m, spec, options.sampled_pairs);
      nlohmann::ordered_json entry;
      entry["matrix_seconds_median"] = total;
      entry["matrix_seconds_runs"] = runs;
      entry["pairs"] = pairs_of(data.size());
      entry["per_pair_mean_seconds"] = total / pairs_of(data.size());
      entry["per_pair_sampled"] = per_pair.size();
      entry["per_pair_median_seconds"] = median(per_pair);
      measures[std::string(measure_name(m))] = entry;
    }
    nlohmann::ordered_json block;
    block["measures"] = measures;
    const auto size = std::string(measure_name(Measure::kGcddSize));
    const auto ncd = std::string(measure_name(Measure::kNcd));
    if (measures.contains(size) && measures.contains(ncd))
      block["gcdd_size_over_ncd"] = measures[size]["matrix_seconds_median"].get<double>() /
                                    measures[ncd]["matrix_seconds_median"].get<double>();
    else
      block["gcdd_size_over_ncd"] = nullptr;
    by_encoding[std::string(encoding_name(mode))] = block;
  }
  doc["encodings"] = by_encoding;

  nlohmann::ordered_json scaling = nlohmann::ordered_json::object();
  scaling["series"] = options.scale_per_class * kChartClassCount;
  scaling["encoding"] = encoding_name(options.encodings.front());
  scaling["lengths"] = options.lengths;
  nlohmann::ordered_json table = nlohmann::ordered_json::object();
  std::vector<std::vector<LabeledSeries>> datasets;
  for (std::size_t length : options.lengths)
    datasets.push_back(generate(options.seed, options.scale_per_class, length));
  for (Measure m : options.measures) {
    nlohmann::ordered_json row;
    std::vector<double> seconds, per_pair;
    for (const auto &d : datasets) {
      const auto b = encode_all(d, pipeline_encoding(d, options.encodings.front()));
      const auto v = series_values(d);
      const double t = median(time_runs([&] { (void)matrix_of(m, b, v); }, options.reps));
      seconds.push_back(t);
      per_pair.push_back(t / pairs_of(d.size()));
    }
    std::vector<double> growth;
    bool monotone = true;
    for (std::size_t i = 1; i < seconds.size(); ++i) {
      growth.push_back(per_pair[i] / per_pair[i - 1]);
      monotone = monotone && seconds[i] > seconds[i - 1];
    }
    row["matrix_seconds"] = seconds;
    row["per_pair_seconds"] = per_pair;
    row["per_pair_growth"] = growth;
    row["monotone"] = monotone;
    table[std::string(measure_name(m))] = row;
  }
  scaling["measures"] = table;
  doc["scaling"] = scaling;
  return doc;
}

} // namespace gcdd::cli
