#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gcdd/error.hpp"

namespace gcdd {

/// Symmetric, zero-diagonal matrix of nonnegative dissimilarities. Symmetry
/// is structural: set() writes both triangles.
class DissimilarityMatrix {
public:
  DissimilarityMatrix(std::size_t n, std::string measure)
      : n_(n), measure_(std::move(measure)), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  const std::string &measure() const noexcept { return measure_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }

  void set(std::size_t i, std::size_t j, double value) {
    if (i == j)
      throw usage_error("diagonal of a dissimilarity matrix is fixed at 0");
    if (!std::isfinite(value) || value < 0.0)
      throw data_error("dissimilarity (" + std::to_string(i) + ", " +
                       std::to_string(j) + ") is not a finite value >= 0");
    values_[i * n_ + j] = value;
    values_[j * n_ + i] = value;
  }

  /// Validating constructor for matrices read from outside.
  static DissimilarityMatrix from_row_major(std::size_t n,
                                            std::span<const double> values,
                                            std::string measure) {
    if (values.size() != n * n)
      throw data_error("matrix needs " + std::to_string(n * n) + " values, got " +
                       std::to_string(values.size()));
    DissimilarityMatrix m(n, std::move(measure));
    for (std::size_t i = 0; i < n; ++i) {
      if (values[i * n + i] != 0.0)
        throw data_error("nonzero diagonal at " + std::to_string(i));
      for (std::size_t j = i + 1; j < n; ++j) {
        if (values[i * n + j] != values[j * n + i])
          throw data_error("matrix is not symmetric at (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
        m.set(i, j, values[i * n + j]);
      }
    }
    return m;
  }

  DissimilarityMatrix scaled(double factor) const {
    DissimilarityMatrix m(*this);
    for (double &v : m.values_)
      v *= factor;
    return m;
  }

  friend bool operator==(const DissimilarityMatrix &,
                         const DissimilarityMatrix &) = default;

private:
  std::size_t n_;
  std::string measure_;
  std::vector<double> values_;
};

inline unsigned resolve_workers(unsigned workers) noexcept {
  if (workers != 0)
    return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs row(i) for i in [0, n), rows interleaved over `workers` threads
/// (0 = hardware concurrency). row(i) may throw; the exception from the
/// lowest-numbered failing row is rethrown after all threads join. Each
/// thread stops at its first failure.
template <typename Row>
void parallel_rows(std::size_t n, Row &&row, unsigned workers = 1) {
  const unsigned threads = std::max(
      1u, std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(n)));
  std::vector<std::exception_ptr> failure(threads);
  std::vector<std::size_t> failed_row(threads, n);

  auto run = [&](unsigned worker) {
    for (std::size_t i = worker; i < n; i += threads) {
      try {
        row(i);
      } catch (...) {
        failure[worker] = std::current_exception();
        failed_row[worker] = i;
        return;
      }
    }
  };

  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back(run, w);
  }

  std::size_t first = threads;
  for (unsigned w = 0; w < threads; ++w)
    if (failure[w] && (first == threads || failed_row[w] < failed_row[first]))
      first = w;
  if (first != threads)
    std::rethrow_exception(failure[first]);
}

/// Fills the upper triangle with cell(i, j) for i < j. Every cell is computed
/// independently, so the result does not depend on the worker count. A
/// failing cell is reported as pair_error; with several failures the lowest
/// (i, j) wins.
template <typename Cell>
DissimilarityMatrix build_matrix(std::size_t n, std::string measure, Cell &&cell,
                                 unsigned workers = 1) {
  if (n < 2)
    throw usage_error("a dissimilarity matrix needs at least 2 objects");
  DissimilarityMatrix m(n, std::move(measure));
  parallel_rows(
      n,
      [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          try {
            m.set(i, j, cell(i, j));
          } catch (const pair_error &) {
            throw;
          } catch (const std::exception &e) {
            throw pair_error(i, j, e.what());
          }
        }
      },
      workers);
  return m;
}

// CSV: "# measure=<name> n=<I>" then I rows of 17-significant-digit values.

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream &out, const DissimilarityMatrix &m) {
  out << "# measure=" << m.measure() << " n=" << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j)
        out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

inline double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r'))
    text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw data_error("line " + std::to_string(line) + ": bad number '" +
                     std::string(text) + "'");
  return v;
}

inline DissimilarityMatrix read_matrix_csv(std::istream &in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# measure=", 0) != 0)
    throw data_error("line 1: expected '# measure=<name> n=<I>' header");
  const auto n_pos = header.find(" n=");
  if (n_pos == std::string::npos)
    throw data_error("line 1: header lacks n=<I>");
  const std::string measure = header.substr(10, n_pos - 10);
  std::size_t n = 0;
  {
    const std::string_view count = std::string_view(header).substr(n_pos + 3);
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
    if (ec != std::errc{} || n < 2)
      throw data_error("line 1: bad object count");
  }

  std::vector<double> values;
  values.reserve(n * n);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r")
      continue;
    const std::size_t line_no = row + 2;
    if (row == n)
      throw data_error("line " + std::to_string(line_no) + ": more than " +
                       std::to_string(n) + " rows");
    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      values.push_back(parse_double(
          std::string_view(line).substr(start, comma - start), line_no));
      ++fields;
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    if (fields != n)
      throw data_error("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n) + " fields, got " +
                       std::to_string(fields));
    ++row;
  }
  if (row != n)
    throw data_error("expected " + std::to_string(n) + " rows, got " +
                     std::to_string(row));
  return DissimilarityMatrix::from_row_major(n, values, measure);
}

} // namespace gcdd
