#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gcdd/byte_sequence.hpp"
#include "gcdd/error.hpp"

namespace gcdd {

using Code = std::uint32_t;

/// Codes 0..255 are the single bytes; learned patterns start here.
inline constexpr Code kFirstLearnedCode = 256;

/// Width in bits of the i-th emitted code (0-based). When code i is written
/// the table holds 256 + i entries, and the decoder must be able to read the
/// entry that is being added concurrently, hence bit_width rather than
/// ceil(log2).
constexpr unsigned code_width(std::size_t emission_index) noexcept {
  return static_cast<unsigned>(
      std::bit_width(std::size_t{kFirstLearnedCode} + emission_index));
}

/// Incremental LZW encoder over an unbounded table seeded with all 256 single
/// bytes. The scanner is a value type: copying it snapshots the table, which
/// lets callers cache the state reached after x and continue it with y to get
/// the state of x·y without rescanning x.
class LzwScanner {
public:
  enum Track : unsigned {
    kCountOnly = 0,
    kFrequencies = 1u << 0, // per-code emission counts
    kCodes = 1u << 1,       // the emitted code sequence
    kPatterns = 1u << 2,    // parent code and last byte of each learned entry
  };

  explicit LzwScanner(unsigned track = kCountOnly,
                      std::size_t expected_length = 0)
      : track_(track) {
    std::size_t capacity = 64;
    while (capacity < 2 * expected_length)
      capacity <<= 1;
    table_.assign(capacity, Slot{});
    mask_ = capacity - 1;
  }

  void feed(std::span<const std::uint8_t> bytes) {
    if (finished_)
      throw usage_error("LzwScanner: feed after finish");
    for (std::uint8_t byte : bytes) {
      ++consumed_;
      if (current_ < 0) {
        current_ = byte;
        continue;
      }
      const std::uint64_t key =
          ((static_cast<std::uint64_t>(current_) << 8) | byte) + 1;
      std::size_t slot = probe(key);
      if (table_[slot].key == key) {
        current_ = table_[slot].code;
        continue;
      }
      emit(static_cast<Code>(current_));
      insert(slot, key, static_cast<Code>(current_), byte);
      current_ = byte;
    }
  }

  /// Emits the pending match. Further feeding is rejected.
  void finish() {
    if (finished_)
      return;
    if (current_ >= 0)
      emit(static_cast<Code>(current_));
    finished_ = true;
  }

  /// Saved scalar state for rollback().
  struct Mark {
    Code next_code;
    std::int64_t current;
    bool finished;
    std::size_t consumed, emitted, frequencies, codes, patterns;
  };

  /// Starts journaling so that everything fed after this call can be undone
  /// by rollback(). Capacity for `additional` more bytes is reserved up
  /// front; the table must not rehash while a journal is open.
  Mark mark(std::size_t additional) {
    while (2 * (learned() + additional) > table_.size())
      grow();
    journal_slots_.clear();
    journal_emits_.clear();
    journal_limit_ = learned() + additional;
    journaling_ = true;
    return {next_code_, current_, finished_, consumed_, emitted_,
            frequencies_.size(), codes_.size(), parents_.size()};
  }

  /// Restores the state captured by mark(). Linear probing without deletions
  /// is undone exactly by clearing the journaled slots in reverse order.
  void rollback(const Mark &m) {
    if (!journaling_)
      throw usage_error("LzwScanner: rollback without mark");
    for (auto it = journal_slots_.rbegin(); it != journal_slots_.rend(); ++it)
      table_[*it] = Slot{};
    for (Code c : journal_emits_)
      --frequencies_[c];
    frequencies_.resize(m.frequencies);
    codes_.resize(m.codes);
    parents_.resize(m.patterns);
    last_bytes_.resize(m.patterns);
    next_code_ = m.next_code;
    current_ = m.current;
    finished_ = m.finished;
    consumed_ = m.consumed;
    emitted_ = m.emitted;
    journal_slots_.clear();
    journal_emits_.clear();
    journaling_ = false;
  }

  bool finished() const noexcept { return finished_; }
  std::size_t consumed() const noexcept { return consumed_; }
  std::size_t emitted() const noexcept { return emitted_; }
  std::size_t learned() const noexcept { return next_code_ - kFirstLearnedCode; }
  Code next_code() const noexcept { return next_code_; }

  /// Emission count per code, indexed by code; may be shorter than
  /// next_code() when the newest codes were never emitted.
  std::span<const std::uint32_t> frequencies() const noexcept {
    return frequencies_;
  }
  std::span<const Code> codes() const noexcept { return codes_; }
  std::span<const Code> parents() const noexcept { return parents_; }
  std::span<const std::uint8_t> last_bytes() const noexcept {
    return last_bytes_;
  }

private:
  struct Slot {
    std::uint64_t key = 0; // 0 marks an empty slot
    Code code = 0;
  };

  std::size_t probe(std::uint64_t key) const noexcept {
    std::size_t slot =
        static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 32) & mask_;
    while (table_[slot].key != 0 && table_[slot].key != key)
      slot = (slot + 1) & mask_;
    return slot;
  }

  void emit(Code code) {
    ++emitted_;
    if (track_ & kFrequencies) {
      if (code >= frequencies_.size())
        frequencies_.resize(next_code_, 0);
      ++frequencies_[code];
      if (journaling_)
        journal_emits_.push_back(code);
    }
    if (track_ & kCodes)
      codes_.push_back(code);
  }

  void insert(std::size_t slot, std::uint64_t key, Code parent,
              std::uint8_t byte) {
    table_[slot] = Slot{key, next_code_++};
    if (track_ & kPatterns) {
      parents_.push_back(parent);
      last_bytes_.push_back(byte);
    }
    if (journaling_) {
      journal_slots_.push_back(slot);
      if (learned() > journal_limit_)
        throw usage_error("LzwScanner: journal exceeded its reservation");
    } else if (2 * learned() > table_.size()) {
      grow();
    }
  }

  void grow() {
    std::vector<Slot> old(table_.size() * 2, Slot{});
    old.swap(table_);
    mask_ = table_.size() - 1;
    for (const Slot &s : old)
      if (s.key != 0)
        table_[probe(s.key)] = s;
  }

  unsigned track_;
  std::vector<Slot> table_;
  std::size_t mask_ = 0;
  Code next_code_ = kFirstLearnedCode;
  std::int64_t current_ = -1;
  bool finished_ = false;
  std::size_t consumed_ = 0;
  std::size_t emitted_ = 0;
  std::vector<std::uint32_t> frequencies_;
  std::vector<Code> codes_;
  std::vector<Code> parents_;
  std::vector<std::uint8_t> last_bytes_;
  bool journaling_ = false;
  std::size_t journal_limit_ = 0;
  std::vector<std::size_t> journal_slots_;
  std::vector<Code> journal_emits_;
};

struct DictionaryEntry {
  std::string pattern; // length >= 2
  std::uint64_t frequency = 0;
};

/// Multi-byte patterns learned by one LZW pass, in code order (entry i has
/// code 256 + i). The 256 seed entries are not stored.
class LzwDictionary {
public:
  LzwDictionary(std::vector<DictionaryEntry> entries, std::size_t emitted_codes,
                std::size_t source_length)
      : entries_(std::move(entries)), emitted_codes_(emitted_codes),
        source_length_(source_length) {
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i)
      index_.emplace(entries_[i].pattern, i);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const DictionaryEntry> entries() const noexcept { return entries_; }
  std::size_t emitted_codes() const noexcept { return emitted_codes_; }
  std::size_t source_length() const noexcept { return source_length_; }

  bool contains(std::string_view pattern) const {
    return index_.find(std::string(pattern)) != index_.end();
  }

  std::optional<std::uint64_t> frequency(std::string_view pattern) const {
    auto it = index_.find(std::string(pattern));
    if (it == index_.end())
      return std::nullopt;
    return entries_[it->second].frequency;
  }

  /// Patterns in lexicographic byte order, for linear-time intersection.
  std::vector<std::string> sorted_patterns() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto &e : entries_)
      out.push_back(e.pattern);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<DictionaryEntry> entries_;
  std::size_t emitted_codes_;
  std::size_t source_length_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct CodeStream {
  std::vector<Code> codes;
  std::map<Code, std::uint64_t> code_frequencies;
};

struct LzwPass {
  LzwDictionary dictionary;
  CodeStream stream;
};

/// One full LZW pass: the learned dictionary with emission counts and the
/// emitted code stream.
inline LzwPass lzw_pass(const ByteSequence &input) {
  LzwScanner scanner(LzwScanner::kFrequencies | LzwScanner::kCodes |
                         LzwScanner::kPatterns,
                     input.size());
  scanner.feed(input.bytes());
  scanner.finish();

  const auto parents = scanner.parents();
  const auto last = scanner.last_bytes();
  const auto freq = scanner.frequencies();
  std::vector<DictionaryEntry> entries(scanner.learned());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Code parent = parents[i];
    std::string pattern =
        parent < kFirstLearnedCode
            ? std::string(1, static_cast<char>(parent))
            : entries[parent - kFirstLearnedCode].pattern;
    pattern.push_back(static_cast<char>(last[i]));
    const Code code = kFirstLearnedCode + static_cast<Code>(i);
    entries[i] = {std::move(pattern), code < freq.size() ? freq[code] : 0u};
  }

  CodeStream stream;
  stream.codes.assign(scanner.codes().begin(), scanner.codes().end());
  for (Code c = 0; c < freq.size(); ++c)
    if (freq[c] != 0)
      stream.code_frequencies.emplace(c, freq[c]);

  return {LzwDictionary(std::move(entries), scanner.emitted(), input.size()),
          std::move(stream)};
}

/// Inverse of the code stream produced by lzw_pass, including the case where
/// a code refers to the entry being defined by that same step.
inline std::vector<std::uint8_t> lzw_decode(std::span<const Code> codes) {
  std::vector<std::uint8_t> out;
  if (codes.empty())
    return out;
  // Learned entry k is (prefix code, first byte of the following match).
  std::vector<std::pair<Code, std::uint8_t>> learned;
  std::vector<std::uint8_t> scratch;

  auto expand = [&](Code code) {
    scratch.clear();
    while (code >= kFirstLearnedCode) {
      const auto &[prefix, byte] = learned[code - kFirstLearnedCode];
      scratch.push_back(byte);
      code = prefix;
    }
    scratch.push_back(static_cast<std::uint8_t>(code));
    out.insert(out.end(), scratch.rbegin(), scratch.rend());
    return static_cast<std::uint8_t>(code); // first byte of the expansion
  };

  if (codes[0] >= kFirstLearnedCode)
    throw data_error("lzw_decode: first code must be a single byte");
  Code previous = codes[0];
  expand(previous);
  for (std::size_t i = 1; i < codes.size(); ++i) {
    const Code code = codes[i];
    const Code next = kFirstLearnedCode + static_cast<Code>(learned.size());
    if (code < next) {
      const std::uint8_t first = expand(code);
      learned.emplace_back(previous, first);
    } else if (code == next) {
      // cScSc: the match is the previous string plus its own first byte.
      const std::size_t start = out.size();
      expand(previous);
      const std::uint8_t first = out[start];
      out.push_back(first);
      learned.emplace_back(previous, first);
    } else {
      throw data_error("lzw_decode: code " + std::to_string(code) +
                       " at position " + std::to_string(i) +
                       " is not yet defined");
    }
    previous = code;
  }
  return out;
}

/// Variable-width LZW output, most significant bit first.
struct PackedCodes {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_count = 0;
};

/// Runs the LZW compressor and writes its real bit-packed output.
inline PackedCodes lzw_compress(const ByteSequence &input) {
  LzwScanner scanner(LzwScanner::kCodes, input.size());
  scanner.feed(input.bytes());
  scanner.finish();

  PackedCodes packed;
  packed.bytes.reserve(input.size() * 3 / 2 + 8);
  std::uint64_t accumulator = 0;
  unsigned pending = 0;
  const auto codes = scanner.codes();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const unsigned width = code_width(i);
    accumulator = (accumulator << width) | codes[i];
    pending += width;
    packed.bit_count += width;
    while (pending >= 8) {
      pending -= 8;
      packed.bytes.push_back(static_cast<std::uint8_t>(accumulator >> pending));
    }
    accumulator &= (std::uint64_t{1} << pending) - 1;
  }
  if (pending > 0)
    packed.bytes.push_back(
        static_cast<std::uint8_t>(accumulator << (8 - pending)));
  return packed;
}

inline std::vector<std::uint8_t> lzw_decompress(const PackedCodes &packed) {
  if (packed.bytes.size() * 8 < packed.bit_count)
    throw data_error("lzw_decompress: bit count exceeds payload");
  std::vector<Code> codes;
  std::size_t bit = 0;
  while (bit < packed.bit_count) {
    const unsigned width = code_width(codes.size());
    if (bit + width > packed.bit_count)
      throw data_error("lzw_decompress: truncated code");
    Code code = 0;
    for (unsigned k = 0; k < width; ++k, ++bit) {
      const unsigned b = (packed.bytes[bit / 8] >> (7 - bit % 8)) & 1u;
      code = (code << 1) | b;
    }
    codes.push_back(code);
  }
  return lzw_decode(codes);
}

/// C(x): size in bits of the compressed output.
inline std::size_t lzw_compressed_length(const ByteSequence &input) {
  return lzw_compress(input).bit_count;
}

} // namespace gcdd
