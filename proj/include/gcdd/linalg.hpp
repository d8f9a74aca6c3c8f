#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gcdd/error.hpp"

namespace gcdd {

/// Row-major dense matrix.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double &operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_)
      s += v * v;
    return std::sqrt(s);
  }

  friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;            // descending
  std::vector<std::vector<double>> vectors; // vectors[k] pairs with values[k]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps rotate every off-diagonal pair in row order until the off-diagonal
/// Frobenius norm is at most 1e-12·‖m‖, giving up after `max_sweeps`.
/// Eigenvalues are sorted descending (stable on ties) and each eigenvector's
/// first nonzero component is made positive.
inline SymmetricEigen symmetric_eigendecomposition(const DenseMatrix &m,
                                                   std::size_t max_sweeps = 100) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n)
    throw usage_error("eigendecomposition needs a non-empty square matrix");
  const double norm = m.frobenius_norm();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(norm, 1.0))
        throw usage_error("eigendecomposition: matrix is not symmetric at (" +
                          std::to_string(i) + ", " + std::to_string(j) + ")");

  DenseMatrix a = m;
  // Rows of vt are the eigenvectors, so rotations touch contiguous memory.
  DenseMatrix vt = DenseMatrix::identity(n);
  const double tolerance = 1e-12 * norm;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  std::size_t sweep = 0;
  double off = off_norm();
  while (off > tolerance) {
    if (sweep == max_sweeps)
      throw data_error("eigendecomposition did not converge after " +
                       std::to_string(max_sweeps) +
                       " sweeps; off-diagonal residual " + std::to_string(off));
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0)
          continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Skip rotations below rounding level of both diagonal entries.
        if (std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq)))
        {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        auto rp = a.row(p);
        auto rq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = rp[k];
          const double akq = rq[k];
          rp[k] = c * akp - s * akq;
          rq[k] = s * akp + c * akq;
        }
        rp[p] = app - t * apq;
        rq[q] = aqq + t * apq;
        rp[q] = 0.0;
        rq[p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q)
            continue;
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }

        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
    off = off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a(k, k));
    std::vector<double> v(vt.row(k).begin(), vt.row(k).end());
    const auto lead = std::find_if(v.begin(), v.end(),
                                   [](double x) { return std::abs(x) > 1e-12; });
    if (lead != v.end() && *lead < 0.0)
      for (double &x : v)
        x = -x;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

} // namespace gcdd
