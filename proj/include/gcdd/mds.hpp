#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gcdd/dissimilarity_matrix.hpp"
#include "gcdd/error.hpp"
#include "gcdd/linalg.hpp"

namespace gcdd {

struct EmbeddingResult {
  DenseMatrix coordinates;          // I x dims
  std::vector<double> eigenvalues;  // dims values, descending, clipped at 0
  double stress = 0.0;
  // Negative eigenvalues of the centered Gram matrix (whole spectrum, below
  // -1e-9 of the largest magnitude). Nonzero means delta is not Euclidean.
  std::size_t negative_eigenvalues = 0;
  // How many of the requested dimensions were clipped to zero.
  std::size_t clipped_dimensions = 0;
};

/// Normalized stress of an embedding against the dissimilarities it came from.
inline double embedding_stress(const DenseMatrix &coords, const DissimilarityMatrix &delta) {
  double residual = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    for (std::size_t j = i + 1; j < delta.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < coords.cols(); ++c) {
        const double diff = coords(i, c) - coords(j, c);
        d2 += diff * diff;
      }
      const double e = std::sqrt(d2) - delta(i, j);
      residual += e * e;
      total += delta(i, j) * delta(i, j);
    }
  }
  return total > 0.0 ? std::sqrt(residual / total) : 0.0;
}

/// Classical (Torgerson) scaling: eigendecomposition of B = -1/2 J D² J.
inline EmbeddingResult classical_mds(const DissimilarityMatrix &delta, std::size_t dims) {
  const std::size_t n = delta.size();
  if (dims < 1 || dims + 1 > n)
    throw usage_error("dims must satisfy 1 <= dims <= " +
                      std::to_string(n == 0 ? 0 : n - 1));

  DenseMatrix b(n, n);
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d2 = delta(i, j) * delta(i, j);
      b(i, j) = d2;
      row_mean[i] += d2;
    }
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = -0.5 * (b(i, j) - row_mean[i] - row_mean[j] + grand);
  // Exact symmetry for the solver's check.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      b(j, i) = b(i, j);

  const auto eig = symmetric_eigendecomposition(b);

  EmbeddingResult out;
  double largest = 0.0;
  for (double v : eig.values)
    largest = std::max(largest, std::abs(v));
  for (double v : eig.values)
    if (v < -1e-9 * largest)
      ++out.negative_eigenvalues;

  out.coordinates = DenseMatrix(n, dims);
  for (std::size_t k = 0; k < dims; ++k) {
    double lambda = eig.values[k];
    // Round-off zeros count as clipped too.
    if (lambda <= 1e-9 * largest) {
      lambda = 0.0;
      ++out.clipped_dimensions;
    }
    out.eigenvalues.push_back(lambda);
    const double scale = std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i)
      out.coordinates(i, k) = eig.vectors[k][i] * scale;
  }
  out.stress = embedding_stress(out.coordinates, delta);
  return out;
}

/// CSV with header "index,label,c1..cN"; labels may be empty.
inline void write_embedding_csv(std::ostream &out, const DenseMatrix &coords,
                                const std::vector<std::string> &labels = {}) {
  out << "index,label";
  for (std::size_t c = 0; c < coords.cols(); ++c)
    out << ",c" << (c + 1);
  out << '\n';
  for (std::size_t i = 0; i < coords.rows(); ++i) {
    out << i << ',' << (i < labels.size() ? labels[i] : std::string());
    for (std::size_t c = 0; c < coords.cols(); ++c)
      out << ',' << format_double(coords(i, c));
    out << '\n';
  }
}

struct EmbeddingTable {
  std::vector<std::string> labels;
  DenseMatrix coordinates;
};

inline EmbeddingTable read_embedding_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,label", 0) != 0)
    throw data_error("coordinates: expected header 'index,label,c1..'");
  std::size_t dims = 0;
  for (char ch : line)
    dims += ch == ',';
  if (dims < 2)
    throw data_error("coordinates: no coordinate columns");
  dims -= 1;

  EmbeddingTable table;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(std::string_view(line).substr(start, comma - start));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    if (fields.size() != dims + 2)
      throw data_error("coordinates line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dims + 2) + " fields");
    if (static_cast<std::size_t>(parse_double(fields[0], line_no)) != table.labels.size())
      throw data_error("coordinates line " + std::to_string(line_no) +
                       ": index out of sequence");
    table.labels.emplace_back(fields[1]);
    for (std::size_t c = 0; c < dims; ++c)
      values.push_back(parse_double(fields[c + 2], line_no));
  }
  table.coordinates = DenseMatrix(table.labels.size(), dims);
  for (std::size_t i = 0; i < table.labels.size(); ++i)
    for (std::size_t c = 0; c < dims; ++c)
      table.coordinates(i, c) = values[i * dims + c];
  return table;
}

} // namespace gcdd
