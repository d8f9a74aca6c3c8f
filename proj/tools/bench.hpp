#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gcdd/dataset.hpp"
#include "gcdd/measures.hpp"

namespace gcdd::cli {

struct BenchOptions {
  std::vector<Measure> measures{Measure::kNcd, Measure::kGcddSize, Measure::kGcddEntropy,
                                Measure::kEuclidean, Measure::kPearson};
  std::size_t reps = 5;              // timed runs after one warm-up
  std::vector<std::size_t> lengths{60, 120, 240, 480};
  std::size_t scale_per_class = 20;  // series per class in the scaling table
  std::size_t sampled_pairs = 200;   // individually timed pairs per measure
  std::uint64_t seed = 7;
  // Full-matrix timings are taken under each encoding; the scaling table
  // uses the first.
  std::vector<EncodingMode> encodings{EncodingMode::kQuantize8, EncodingMode::kRawIeee754};
  MeasureSpec spec;                  // max_lag / cort_k for the baselines
  unsigned workers = 1;
};

/// Wall-time report: full-matrix medians on `data`, per-pair statistics and
/// a series-length scaling table on freshly generated data.
nlohmann::ordered_json run_bench(const std::vector<LabeledSeries> &data,
                                 const BenchOptions &options);

} // namespace gcdd::cli
