#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "gcdd/error.hpp"

namespace gcdd {

/// Huffman code lengths for positive weights, returned in input order.
///
/// Two-queue construction: leaves sorted by (weight, position), merged nodes
/// queued in creation order. On equal weight a leaf is taken before a merged
/// node and the lower position before the higher, which fixes the lengths
/// independently of the platform. A single symbol gets length 1.
inline std::vector<unsigned>
huffman_lengths(std::span<const std::uint64_t> weights) {
  const std::size_t n = weights.size();
  if (n == 0)
    throw usage_error("empty alphabet");
  for (std::uint64_t w : weights)
    if (w == 0)
      throw usage_error("huffman: zero-weight symbol");
  if (n == 1)
    return {1u};

  std::vector<std::size_t> leaves(n);
  std::iota(leaves.begin(), leaves.end(), std::size_t{0});
  std::stable_sort(leaves.begin(), leaves.end(),
                   [&](std::size_t a, std::size_t b) {
                     return weights[a] < weights[b];
                   });

  // Nodes 0..n-1 are leaves, n.. are merges; parent links give depths.
  std::vector<std::uint64_t> weight(weights.begin(), weights.end());
  std::vector<std::size_t> parent(2 * n - 1, 0);
  weight.reserve(2 * n - 1);
  std::size_t next_leaf = 0;
  std::size_t next_merged = n;

  auto take = [&]() {
    const bool have_leaf = next_leaf < n;
    const bool have_merged = next_merged < weight.size();
    if (have_leaf &&
        (!have_merged || weight[leaves[next_leaf]] <= weight[next_merged]))
      return leaves[next_leaf++];
    return next_merged++;
  };

  for (std::size_t step = 0; step + 1 < n; ++step) {
    const std::size_t a = take();
    const std::size_t b = take();
    const std::size_t node = weight.size();
    weight.push_back(weight[a] + weight[b]);
    parent[a] = node;
    parent[b] = node;
  }

  // Merged nodes are created after their children, so walking down from the
  // root assigns every depth in one reverse pass.
  const std::size_t root = 2 * n - 2;
  std::vector<unsigned> depth(2 * n - 1, 0);
  for (std::size_t node = root; node-- > 0;)
    depth[node] = depth[parent[node]] + 1;
  return {depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(n)};
}

/// Map form: symbol -> bit length. Ties resolve toward the lower symbol.
template <typename Symbol>
std::map<Symbol, unsigned>
huffman_code_lengths(const std::map<Symbol, std::uint64_t> &frequencies) {
  std::vector<std::uint64_t> weights;
  weights.reserve(frequencies.size());
  for (const auto &[symbol, count] : frequencies)
    weights.push_back(count);
  const auto lengths = huffman_lengths(weights);
  std::map<Symbol, unsigned> out;
  std::size_t i = 0;
  for (const auto &[symbol, count] : frequencies)
    out.emplace_hint(out.end(), symbol, lengths[i++]);
  return out;
}

/// Σ weight · length of the Huffman code.
inline std::uint64_t huffman_weighted_bits(std::span<const std::uint64_t> weights) {
  const auto lengths = huffman_lengths(weights);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    total += weights[i] * lengths[i];
  return total;
}

} // namespace gcdd
