#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcdd/byte_sequence.hpp"
#include "gcdd/error.hpp"
#include "gcdd/huffman.hpp"
#include "gcdd/lzw.hpp"

namespace gcdd {

/// |D(x)|: number of learned multi-byte entries.
inline std::size_t dict_size(const LzwDictionary &d) noexcept { return d.size(); }

namespace detail {

template <typename Counts>
double stream_information(const Counts &counts, std::uint64_t total) {
  double bits = 0.0;
  const double n = static_cast<double>(total);
  for (std::uint64_t f : counts)
    if (f != 0)
      bits += static_cast<double>(f) * std::log2(n / static_cast<double>(f));
  return bits;
}

inline std::vector<std::uint64_t>
nonzero_counts(std::span<const std::uint32_t> frequencies) {
  std::vector<std::uint64_t> out;
  out.reserve(frequencies.size());
  for (std::uint32_t f : frequencies)
    if (f != 0)
      out.push_back(f);
  return out;
}

inline std::vector<std::uint64_t> counts_of(const CodeStream &stream) {
  std::vector<std::uint64_t> out;
  out.reserve(stream.code_frequencies.size());
  for (const auto &[code, count] : stream.code_frequencies)
    out.push_back(count);
  return out;
}

} // namespace detail

/// Total Shannon information of the emitted codes, Σ f·log2(N/f).
inline double dict_entropy(const CodeStream &stream) {
  if (stream.codes.empty())
    throw usage_error("dict_entropy: empty code stream");
  return detail::stream_information(detail::counts_of(stream),
                                    stream.codes.size());
}

inline double dict_entropy(const LzwDictionary &, const CodeStream &stream) {
  return dict_entropy(stream);
}

/// Bits needed to Huffman-code the emitted code stream.
inline std::uint64_t dict_huffman_bits(const CodeStream &stream) {
  if (stream.codes.empty())
    throw usage_error("dict_huffman_bits: empty code stream");
  return huffman_weighted_bits(detail::counts_of(stream));
}

/// The functionals GCDD can be built on.
enum class Functional { kDictSize, kDictEntropy, kDictHuffman };

inline constexpr std::array<Functional, 3> kAllFunctionals = {
    Functional::kDictSize, Functional::kDictEntropy, Functional::kDictHuffman};

inline std::string_view functional_name(Functional f) noexcept {
  switch (f) {
  case Functional::kDictSize:
    return "dict-size";
  case Functional::kDictEntropy:
    return "dict-entropy";
  case Functional::kDictHuffman:
    return "dict-huffman";
  }
  return "?";
}

/// Accepts the full name ("dict-entropy") or the short form ("entropy").
inline Functional parse_functional(std::string_view name) {
  for (Functional f : kAllFunctionals) {
    const std::string_view full = functional_name(f);
    if (name == full || name == full.substr(5))
      return f;
  }
  throw usage_error("unknown functional '" + std::string(name) +
                    "' (expected size, entropy or huffman)");
}

/// Scanner tracking needed to evaluate a functional.
constexpr unsigned required_tracking(Functional f) noexcept {
  return f == Functional::kDictSize ? LzwScanner::kCountOnly
                                    : LzwScanner::kFrequencies;
}

/// Evaluates a functional on a finished scanner.
inline double evaluate(Functional f, const LzwScanner &scanner) {
  if (!scanner.finished())
    throw usage_error("evaluate: scanner not finished");
  switch (f) {
  case Functional::kDictSize:
    return static_cast<double>(scanner.learned());
  case Functional::kDictEntropy:
    return detail::stream_information(scanner.frequencies(), scanner.emitted());
  case Functional::kDictHuffman:
    return static_cast<double>(
        huffman_weighted_bits(detail::nonzero_counts(scanner.frequencies())));
  }
  return 0.0;
}

/// Φ: a named real-valued summary of the dictionary an input produces.
class PhiFunctional {
public:
  explicit PhiFunctional(Functional kind) : kind_(kind) {}

  Functional kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return functional_name(kind_); }

  double operator()(const ByteSequence &x) const {
    LzwScanner scanner(required_tracking(kind_), x.size());
    scanner.feed(x.bytes());
    scanner.finish();
    return evaluate(kind_, scanner);
  }

private:
  Functional kind_;
};

} // namespace gcdd
