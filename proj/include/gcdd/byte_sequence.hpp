#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gcdd/error.hpp"

namespace gcdd {

/// Non-empty byte string fed to the compressors.
class ByteSequence {
public:
  explicit ByteSequence(std::vector<std::uint8_t> bytes)
      : bytes_(std::move(bytes)) {
    if (bytes_.empty())
      throw usage_error("byte sequence must not be empty");
  }

  explicit ByteSequence(std::string_view text)
      : ByteSequence(std::vector<std::uint8_t>(text.begin(), text.end())) {}

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }

  friend bool operator==(const ByteSequence &, const ByteSequence &) = default;

private:
  std::vector<std::uint8_t> bytes_;
};

/// x·y, the byte concatenation used by the joint-compression measures.
inline ByteSequence concat(const ByteSequence &x, const ByteSequence &y) {
  std::vector<std::uint8_t> joined;
  joined.reserve(x.size() + y.size());
  joined.insert(joined.end(), x.bytes().begin(), x.bytes().end());
  joined.insert(joined.end(), y.bytes().begin(), y.bytes().end());
  return ByteSequence(std::move(joined));
}

} // namespace gcdd
