#pragma once

#include <vector>

#include "gcdd/dataset.hpp"
#include "gcdd/dissimilarity_matrix.hpp"
#include "gcdd/measures.hpp"

namespace gcdd {

/// Dissimilarity matrix of a labeled dataset: compression measures see the
/// encoded bytes, baselines see the raw values.
inline DissimilarityMatrix dissimilarity_matrix(const std::vector<LabeledSeries> &data,
                                                const MeasureSpec &spec,
                                                const EncodingScheme &scheme,
                                                unsigned workers = 1) {
  if (is_compression_measure(spec.measure))
    return compression_matrix(encode_all(data, scheme), spec.measure, workers);
  return series_matrix(series_values(data), spec, workers);
}

} // namespace gcdd
