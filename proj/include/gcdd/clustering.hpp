#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gcdd/dissimilarity_matrix.hpp"
#include "gcdd/error.hpp"

namespace gcdd {

struct Partition {
  std::vector<std::size_t> assignments; // object -> cluster id in [0, k)
  std::vector<std::size_t> medoids;     // medoid of cluster c, empty when none
  std::size_t clusters = 0;
};

namespace detail {

inline void check_k(const DissimilarityMatrix &delta, std::size_t k) {
  if (k < 2 || k > delta.size())
    throw usage_error("k must satisfy 2 <= k <= " + std::to_string(delta.size()) +
                      ", got " + std::to_string(k));
}

} // namespace detail

/// Σ over objects of the dissimilarity to the nearest medoid.
inline double medoid_cost(const DissimilarityMatrix &delta,
                          std::span<const std::size_t> medoids) {
  double total = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids)
      best = std::min(best, delta(m, j));
    total += best;
  }
  return total;
}

/// Partitioning Around Medoids.
///
/// BUILD adds, one at a time, the object that minimizes the total cost. SWAP
/// then applies the (medoid, non-medoid) exchange with the lowest resulting
/// cost while that cost is strictly below the current one. Ties go to the
/// first candidate in index order. If `cost_trace` is given it receives the
/// cost after BUILD and after every applied swap.
inline Partition pam_kmedoids(const DissimilarityMatrix &delta, std::size_t k,
                              std::vector<double> *cost_trace = nullptr) {
  detail::check_k(delta, k);
  const std::size_t n = delta.size();
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> medoids;
  std::vector<bool> is_medoid(n, false);
  std::vector<double> nearest(n, inf);

  // BUILD
  while (medoids.size() < k) {
    std::size_t best = n;
    double best_cost = inf;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c])
        continue;
      double cost = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        cost += std::min(nearest[j], delta(c, j));
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = true;
    for (std::size_t j = 0; j < n; ++j)
      nearest[j] = std::min(nearest[j], delta(best, j));
  }

  auto current_cost = [&] {
    double total = 0.0;
    for (double v : nearest)
      total += v;
    return total;
  };
  double cost = current_cost();
  if (cost_trace)
    cost_trace->push_back(cost);

  // SWAP
  std::vector<double> second(n);
  std::vector<std::size_t> nearest_slot(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) {
      double d1 = inf, d2 = inf;
      std::size_t s1 = 0;
      for (std::size_t s = 0; s < k; ++s) {
        const double d = delta(medoids[s], j);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          s1 = s;
        } else if (d < d2) {
          d2 = d;
        }
      }
      nearest[j] = d1;
      second[j] = d2;
      nearest_slot[j] = s1;
    }
    cost = current_cost();

    double best_cost = cost;
    std::size_t best_slot = k, best_object = n;
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t h = 0; h < n; ++h) {
        if (is_medoid[h])
          continue;
        double candidate = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double keep = nearest_slot[j] == s ? second[j] : nearest[j];
          candidate += std::min(keep, delta(h, j));
        }
        if (candidate < best_cost) {
          best_cost = candidate;
          best_slot = s;
          best_object = h;
        }
      }
    }
    if (best_slot == k)
      break;
    is_medoid[medoids[best_slot]] = false;
    is_medoid[best_object] = true;
    medoids[best_slot] = best_object;
    if (cost_trace)
      cost_trace->push_back(best_cost);
  }

  std::sort(medoids.begin(), medoids.end());
  Partition p;
  p.clusters = k;
  p.medoids = medoids;
  p.assignments.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < k; ++c)
      if (delta(medoids[c], j) < delta(medoids[best], j))
        best = c;
    p.assignments[j] = best;
  }
  // A medoid always heads its own cluster, even at zero distance to another.
  for (std::size_t c = 0; c < k; ++c)
    p.assignments[medoids[c]] = c;
  return p;
}

struct Merge {
  std::size_t first;  // representative (smallest member) of the kept cluster
  std::size_t second; // representative of the absorbed cluster
  double height;      // average dissimilarity between the two
};

/// UPGMA merge sequence down to `stop_at` clusters. Clusters are named by
/// their smallest member; the closest pair is merged, ties going to the
/// lexicographically smallest (first, second).
inline std::vector<Merge> average_linkage_merges(const DissimilarityMatrix &delta,
                                                 std::size_t stop_at = 1) {
  const std::size_t n = delta.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = delta(i, j);
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<Merge> merges;
  merges.reserve(n > stop_at ? n - stop_at : 0);

  for (std::size_t clusters = n; clusters > stop_at; --clusters) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t a = n, b = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i])
        continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (active[j] && d[i * n + j] < best) {
          best = d[i * n + j];
          a = i;
          b = j;
        }
    }
    merges.push_back({a, b, best});
    const auto wa = static_cast<double>(size[a]);
    const auto wb = static_cast<double>(size[b]);
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == a || x == b)
        continue;
      const double v = (wa * d[a * n + x] + wb * d[b * n + x]) / (wa + wb);
      d[a * n + x] = v;
      d[x * n + a] = v;
    }
    size[a] += size[b];
    active[b] = false;
  }
  return merges;
}

/// Average-linkage clustering cut at k clusters. Cluster ids follow the
/// order of each cluster's smallest member.
inline Partition average_linkage(const DissimilarityMatrix &delta, std::size_t k) {
  detail::check_k(delta, k);
  const std::size_t n = delta.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i)
    parent[i] = i;
  for (const Merge &m : average_linkage_merges(delta, k))
    parent[m.second] = m.first;
  auto root = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i];
    return i;
  };
  Partition p;
  p.clusters = k;
  p.assignments.resize(n);
  std::map<std::size_t, std::size_t> id_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = root(i);
    auto [it, inserted] = id_of_root.emplace(r, id_of_root.size());
    p.assignments[i] = it->second;
  }
  return p;
}

// --- quality --------------------------------------------------------------

namespace detail {

/// Dense ids 0..m-1 in order of sorted distinct values.
template <typename T>
std::vector<std::size_t> densify(std::span<const T> values, std::size_t *count) {
  std::vector<T> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> out;
  out.reserve(values.size());
  for (const T &v : values)
    out.push_back(static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));
  *count = distinct.size();
  return out;
}

inline double pairs(double m) { return m * (m - 1.0) / 2.0; }

} // namespace detail

/// Per-object silhouette from dissimilarities. Objects in singleton clusters,
/// and every object when there is only one cluster, score 0.
template <typename Id>
std::vector<double> silhouettes(std::span<const Id> assignment,
                                const DissimilarityMatrix &delta) {
  const std::size_t n = delta.size();
  if (assignment.size() != n)
    throw data_error("assignment has " + std::to_string(assignment.size()) +
                     " entries for " + std::to_string(n) + " objects");
  std::size_t k = 0;
  const auto ids = detail::densify(assignment, &k);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t c : ids)
    ++sizes[c];

  std::vector<double> out(n, 0.0);
  if (k < 2)
    return out;
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[ids[i]] < 2)
      continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      sums[ids[j]] += delta(i, j);
    const double a = sums[ids[i]] / static_cast<double>(sizes[ids[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c)
      if (c != ids[i])
        b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
    const double scale = std::max(a, b);
    out[i] = scale > 0.0 ? (b - a) / scale : 0.0;
  }
  return out;
}

template <typename Id>
double mean_silhouette(std::span<const Id> assignment, const DissimilarityMatrix &delta) {
  const auto s = silhouettes(assignment, delta);
  double total = 0.0;
  for (double v : s)
    total += v;
  return s.empty() ? 0.0 : total / static_cast<double>(s.size());
}

/// Adjusted Rand index between two labelings of the same objects.
template <typename A, typename B>
double adjusted_rand_index(std::span<const A> first, std::span<const B> second) {
  if (first.size() != second.size())
    throw data_error("labelings differ in length");
  const std::size_t n = first.size();
  std::size_t ka = 0, kb = 0;
  const auto a = detail::densify(first, &ka);
  const auto b = detail::densify(second, &kb);
  std::vector<double> table(ka * kb, 0.0), rows(ka, 0.0), cols(kb, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    table[a[i] * kb + b[i]] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (double v : table)
    index += detail::pairs(v);
  for (double v : rows)
    sum_rows += detail::pairs(v);
  for (double v : cols)
    sum_cols += detail::pairs(v);
  const double total = detail::pairs(static_cast<double>(n));
  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double maximum = (sum_rows + sum_cols) / 2.0;
  if (maximum == expected)
    return 1.0;
  return (index - expected) / (maximum - expected);
}

struct QualityReport {
  double purity = 0.0;
  double adjusted_rand = 0.0;
  double mean_silhouette = 0.0;
  std::size_t clusters = 0;
  // confusion[c][l]: objects of class l (dense class order) in cluster c.
  std::vector<std::vector<std::size_t>> confusion;
};

inline QualityReport quality(const Partition &p, std::span<const int> labels,
                             const DissimilarityMatrix &delta) {
  const std::size_t n = p.assignments.size();
  if (labels.size() != n || delta.size() != n)
    throw data_error("partition, labels and matrix sizes differ (" + std::to_string(n) +
                     ", " + std::to_string(labels.size()) + ", " +
                     std::to_string(delta.size()) + ")");
  std::size_t classes = 0, clusters = 0;
  const auto class_of = detail::densify(labels, &classes);
  const auto cluster_of =
      detail::densify(std::span<const std::size_t>(p.assignments), &clusters);

  QualityReport r;
  r.clusters = clusters;
  r.confusion.assign(clusters, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < n; ++i)
    ++r.confusion[cluster_of[i]][class_of[i]];
  std::size_t majority = 0;
  for (const auto &row : r.confusion)
    majority += *std::max_element(row.begin(), row.end());
  r.purity = static_cast<double>(majority) / static_cast<double>(n);
  r.adjusted_rand = adjusted_rand_index(std::span<const std::size_t>(p.assignments), labels);
  r.mean_silhouette = mean_silhouette(std::span<const std::size_t>(p.assignments), delta);
  return r;
}

inline void write_partition_csv(std::ostream &out, const Partition &p) {
  out << "index,cluster\n";
  for (std::size_t i = 0; i < p.assignments.size(); ++i)
    out << i << ',' << p.assignments[i] << '\n';
}

/// Flat JSON document; `class_names` name the confusion columns.
inline nlohmann::ordered_json quality_json(const QualityReport &r,
                                           const std::vector<std::string> &class_names) {
  nlohmann::ordered_json doc;
  doc["purity"] = r.purity;
  doc["adjusted_rand"] = r.adjusted_rand;
  doc["mean_silhouette"] = r.mean_silhouette;
  doc["clusters"] = r.clusters;
  doc["classes"] = class_names;
  doc["confusion"] = r.confusion;
  return doc;
}

} // namespace gcdd
